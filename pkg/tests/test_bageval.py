from fractions import Fraction

import pytest

from cqbag import (
    CQ, QueryError, Signature, SignatureError, Structure, StructureError, apply,
    check_scaled_containment_at, component_split, count_homs, count_homs_naive, cor5_gadgets,
    parse_cq, parse_query, parse_structure, planets, seen,
)
from cqbag.bageval import planets_nonvenus

CYCLE = parse_structure("sig E/2\nE(a,b)\nE(b,c)\nE(c,a)\n")


def test_single_disjunct_on_golden(psi, golden_d):
    assert count_homs(psi.disjuncts[0], golden_d) == 2


def test_empty_cq_counts_one(golden_d):
    assert count_homs(CQ(), golden_d) == 1
    assert count_homs_naive(CQ(), golden_d) == 1


def test_path_on_cycle():
    q = parse_cq("E(x,y) & E(y,z)")
    assert count_homs(q, CYCLE) == 3
    assert count_homs_naive(q, CYCLE) == 3


def test_naive_enumerates_all_assignments():
    d = Structure(Signature({"P": 1}), [("P", (v,)) for v in "abcde"])
    assert count_homs_naive(parse_cq("P(x)"), d) == 5


def test_inequality_gadget_count():
    _, alpha_b = cor5_gadgets()
    d = Structure(Signature({"P": 1}, {"mars", "venus"}), [("P", ("m",)), ("P", ("v",))],
                  {"mars": "m", "venus": "v"})
    assert count_homs(alpha_b, d) == 2
    assert count_homs_naive(alpha_b, d) == 2


def test_apply_sums_disjuncts(psi, golden_d):
    assert apply(psi, golden_d) == 6
    q = parse_cq("E(x,y) & E(y,z)")
    doubled = parse_query("E(x,y) & E(y,z) | E(x,y) & E(y,z)")
    assert apply(doubled, CYCLE) == 2 * count_homs(q, CYCLE)


def test_signature_mismatch(golden_d):
    with pytest.raises(SignatureError):
        count_homs(parse_cq("F(x)"), golden_d)
    with pytest.raises(SignatureError):
        count_homs(parse_cq("E1(x,@k)"), golden_d)


def test_constants_prebound():
    d = parse_structure("sig E/2 ; const k=a\nE(a,b)\nE(b,b)\n")
    assert count_homs(parse_cq("E(@k,y)"), d) == 1
    assert count_homs(parse_cq("E(y,@k)"), d) == 0
    assert count_homs(parse_cq("E(@k,@k)"), d) == 0


def test_component_split():
    assert len(component_split(parse_cq("X2(u) & X4(v) & X2(w)"))) == 3
    assert len(component_split(parse_cq("E(x,y) & E(y,z)"))) == 1
    with pytest.raises(QueryError):
        component_split(parse_cq("P(x) & P(y) & x != y"))


def test_cqized_golden_is_connected(psi):
    from cqbag import cqize
    assert len(component_split(cqize(psi))) == 1


def test_planets(mars_d, saturn_d):
    assert planets(mars_d) == {"venus", "mars"}
    assert planets(saturn_d) == {"venus", "mars", "saturn"}
    assert planets_nonvenus(saturn_d) == {"mars", "saturn"}
    bare = parse_structure("sig R/2, V/2 ; const venus=v, mars=v\nR(v,v)\nV(v,v)\n")
    assert planets(bare) == {"v"}


def test_seen(golden_d, mars_d):
    assert seen("mars", mars_d) == golden_d
    home = seen("venus", mars_d)
    assert home.vertices == {"venus"}
    assert home.facts == {("E1", ("venus", "venus")), ("E2", ("venus", "venus")), ("E3", ("venus", "venus"))}
    with pytest.raises(StructureError):
        seen("a", mars_d)


def test_scaled_containment(psi, golden_d):
    res = check_scaled_containment_at(1, psi, psi, golden_d)
    assert res.holds and (res.lhs, res.rhs) == (6, 6)
    alpha_s, alpha_b = cor5_gadgets()
    d = Structure(Signature({"P": 1}, {"mars", "venus"}), [("P", ("m",)), ("P", ("v",))],
                  {"mars": "m", "venus": "v"})
    res = check_scaled_containment_at(2, alpha_b, alpha_s, d)
    assert res.holds and 2 * res.lhs == res.rhs == 4
    d = parse_structure("sig P/1, Q/1\nP(a)\nP(b)\nP(c)\n" + "".join(f"Q({v})\n" for v in "abcde"))
    res = check_scaled_containment_at(Fraction(2), parse_cq("P(x)"), parse_cq("Q(x)"), d)
    assert not res.holds and (res.lhs, res.rhs) == (3, 5)
