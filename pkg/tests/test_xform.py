import pytest

from cqbag import (
    CQ, MAR, VEN, Node, QueryError, Signature, Structure, StructureError, Var,
    apply, classify_structure, count_by_trips, count_homs, cqize, enumerate_trips, eta0, eta1,
    good_query, marsify, parse_cq, parse_query, planet, planets, rclique, relativize, substitute,
)
from cqbag.relcore import CQBagError
from cqbag.xform import ALL_VENUS, ONE_AWAY, TWO_PLUS, alien, iter_trips


def atoms(text):
    return set(parse_cq(text, allow_aliens=True).atoms)


def test_good_query_examples():
    assert set(good_query(Signature({"E": 2})).atoms) == atoms("V(@venus,@venus) & R(@venus,@venus) & E(@venus,@venus)")
    assert set(good_query(Signature({"P": 1}, {"a"})).atoms) == atoms("V(@venus,@venus) & R(@venus,@venus) & P(@venus)")
    g = good_query(Signature({"E": 2}, {"a"}))
    assert set(g.atoms) == atoms("V(@venus,@venus) & R(@venus,@venus) & E(@venus,@venus) & E(@venus,@a) & E(@a,@venus)")


def test_relativize_examples():
    assert set(relativize("x", CQ()).atoms) == set(planet("x").atoms)
    got = relativize(Var("x1"), parse_cq("E1(y,z)"))
    assert set(got.atoms) == atoms("E1(y,z) & R(@venus,x1) & R(x1,@venus) & V(x1,y) & V(x1,z)")
    got = relativize(MAR, parse_cq("X2(w)"))
    assert set(got.atoms) == atoms("X2(w) & R(@venus,@mars) & R(@mars,@venus) & V(@mars,w)")


def test_relativize_errors():
    with pytest.raises(QueryError):
        relativize("y", parse_cq("E(y,z)"))
    with pytest.raises(QueryError):
        relativize("x", parse_cq("P(y) & P(z) & y != z"))


def test_rclique_sizes():
    assert rclique([]).atoms == ()
    assert set(rclique([alien(1)]).atoms) == set(planet(alien(1)).atoms)
    three = rclique([alien(1), alien(2), alien(3)])
    rs = [a for a in three.atoms if a.args[0] != VEN and a.args[1] != VEN]
    assert len(three.atoms) == 12 and len(rs) == 6
    assert {(a.args[1], a.args[0]) for a in rs} == {(a.args[0], a.args[1]) for a in rs}
    with pytest.raises(QueryError):
        rclique([alien(1), alien(1)])


GOLDEN_CQ = """
R(@venus,x1) & R(x1,@venus) & R(@venus,x2) & R(x2,@venus) & R(@venus,x3) & R(x3,@venus) &
R(x1,x2) & R(x2,x1) & R(x1,x3) & R(x3,x1) & R(x2,x3) & R(x3,x2) &
E1(y1,z1) & V(x1,y1) & V(x1,z1) & E2(y2,z2) & V(x2,y2) & V(x2,z2) & E3(y3,z3) & V(x3,y3) & V(x3,z3)
"""


def test_cqize_golden(psi):
    assert set(cqize(psi).atoms) == atoms(GOLDEN_CQ)


def test_cqize_single_and_unpleasant():
    q = cqize(parse_cq("E(y,z)"))
    assert {v.name for v in q.variables()} == {"x1", "y", "z"}
    with pytest.raises(QueryError):
        cqize(parse_cq("A(@a)"))


def test_marsify_golden(golden_d, mars_d):
    ven, mar = "venus", "mars"
    expected = set(golden_d.facts) | {
        ("V", (ven, ven)), ("R", (ven, ven)), ("R", (ven, mar)), ("R", (mar, ven)),
        ("V", (mar, "a")), ("V", (mar, "b")),
        ("E1", (ven, ven)), ("E2", (ven, ven)), ("E3", (ven, ven)),
    }
    assert mars_d.facts == expected
    assert mars_d.interp == {"venus": ven, "mars": mar}


def test_marsify_empty_and_name_clash():
    m = marsify(Structure(Signature({"P": 1})))
    assert len(m.vertices) == 2
    assert not any(f[0] == "V" and f[1][0] == m.interp["mars"] for f in m.facts)
    clash = marsify(Structure(Signature({"P": 1}), [("P", ("venus",)), ("P", ("mars",))]))
    assert clash.interp["venus"] not in {"venus", "mars"} and len(clash.vertices) == 4


def test_marsify_is_very_good(golden_d):
    assert classify_structure(marsify(golden_d)).very_good


def test_eta_gadgets(mars_d):
    assert count_homs(eta0(1), mars_d) == 1
    ven = mars_d.interp["venus"]
    two = Structure(mars_d.signature, set(mars_d.facts) | {("V", (ven, "a"))}, mars_d.interp)
    assert count_homs(eta0(3), two) == 8
    assert count_homs(eta1(), mars_d) == 1
    with pytest.raises(QueryError):
        eta0(0)


def test_substitute(psi):
    q = cqize(psi)
    assert substitute(q, {}) == q
    all_home = substitute(q, {alien(j): "venus" for j in (1, 2, 3)})
    assert not any(v.name.startswith("x") for v in all_home.variables())
    assert Node("venus") in all_home.nodes()
    one = substitute(q, {alien(1): "mars", alien(2): "venus", alien(3): "venus"})
    assert one.nodes() == {Node("mars"), Node("venus")}
    with pytest.raises(QueryError):
        substitute(parse_cq("E(y,z)"), {"w": "a"})


def test_golden_trips(mars_d):
    trips = enumerate_trips(3, mars_d)
    assert len(trips) == 4
    tags = sorted(cls.tag for _, cls in trips)
    assert tags == [ALL_VENUS, ONE_AWAY, ONE_AWAY, ONE_AWAY]


def test_saturn_trips(saturn_d):
    trips = enumerate_trips(3, saturn_d)
    ones = [t for t, c in trips if c.tag == ONE_AWAY]
    twos = [t for t, c in trips if c.tag == TWO_PLUS]
    assert len(ones) == 6 and len(twos) == 6
    assert all(sorted(t.images) == ["mars", "saturn", "venus"] for t in twos)


def test_one_alien_one_trip_per_planet(saturn_d):
    assert {t.images[0] for t, _ in enumerate_trips(1, saturn_d)} == planets(saturn_d)


def test_trips_need_good(golden_d):
    ext = golden_d.signature.extend()
    bad = Structure(ext, golden_d.facts, {"venus": "a", "mars": "b"})
    with pytest.raises(StructureError):
        enumerate_trips(1, bad)


def test_trip_cap(saturn_d):
    with pytest.raises(CQBagError):
        list(iter_trips(3, saturn_d, cap=5))


def test_count_by_trips_golden(psi, mars_d):
    tc = count_by_trips(psi, mars_d)
    assert tc.total == 7 == count_homs(cqize(psi), mars_d)
    table = tc.by_images()
    assert [table[k] for k in [("mars", "venus", "venus"), ("venus", "mars", "venus"),
                               ("venus", "venus", "mars"), ("venus", "venus", "venus")]] == [2, 2, 2, 1]


def test_count_by_trips_single_cq(golden_d, mars_d):
    q = parse_cq("E1(y,z) & E2(z,y)")
    assert count_by_trips(q, mars_d).total == 1 + apply(q, golden_d)


def test_only_venus_planet_counts_one():
    sig = Signature({"E": 2}).extend()
    d = Structure(sig, [("V", ("v", "v")), ("R", ("v", "v")), ("E", ("v", "v")), ("E", ("v", "w"))],
                  {"venus": "v", "mars": "w"})
    q = parse_query("E(a,b) | E(c,c)")
    assert count_by_trips(q, d).total == 1 == count_homs(cqize(q), d)
