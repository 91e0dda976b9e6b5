import pytest

from cqbag import Structure, marsify, parse_query, parse_structure
from cqbag.relcore import R_REL

PSI_TEXT = "E1(y1,z1) | E2(y2,z2) | E3(y3,z3)"
D_TEXT = """sig E1/2, E2/2, E3/2
E1(a,b)
E1(b,a)
E2(a,b)
E2(b,a)
E3(a,b)
E3(b,a)
"""


@pytest.fixture
def psi():
    return parse_query(PSI_TEXT)


@pytest.fixture
def golden_d():
    return parse_structure(D_TEXT)


@pytest.fixture
def mars_d(golden_d):
    return marsify(golden_d)


def with_saturn(m: Structure) -> Structure:
    """The marsified structure plus a third planet saturn, R-linked both ways to venus and mars."""
    ven, mar = m.interp["venus"], m.interp["mars"]
    extra = [(R_REL, (ven, "saturn")), (R_REL, ("saturn", ven)),
             (R_REL, (mar, "saturn")), (R_REL, ("saturn", mar))]
    return Structure(m.signature, set(m.facts) | set(extra), m.interp, m.vertices | {"saturn"})


@pytest.fixture
def saturn_d(mars_d):
    return with_saturn(mars_d)
