import random

import pytest

import cqbag.xform
from cqbag import (
    NON_TRIVIAL, ReductionInstance, Signature, Structure, Valuation, apply, build_thm2,
    classify_structure, eval_poly, marsify, parse_polynomial, parse_query,
    structure_of_valuation,
)
from cqbag.lab import (
    REGISTRY, CapExceeded, GenConfig, canonical_key, check_lemma, enumerate_structures, isomorphic,
    sample_structures, search_counterexample,
)
from cqbag.relcore import is_good, venus_atoms

EXPECTED_IDS = {
    "obs1", "obs2", "lem4", "lem8", "lem9", "lem5", "lem6", "lem10", "lem13", "lem16", "lem19",
    "lem17", "lem18", "lem21", "lem22-split", "lem23", "lem24", "appE-closed-form", "appA-identity",
    "appB-padding", "cor5-claims", "thm1-neg", "thm2-neg", "thm3-neg",
}
SMALL = GenConfig(Signature({"E": 2, "A": 1}), max_vertices=3, samples=15, seed=3)


def test_registry_is_complete():
    assert set(REGISTRY) == EXPECTED_IDS


@pytest.mark.parametrize("name", sorted(EXPECTED_IDS))
def test_every_lemma_passes(name):
    rep = check_lemma(name, SMALL)
    assert rep.ok, rep.counterexample
    assert rep.run > 0


def test_unknown_lemma():
    with pytest.raises(KeyError):
        check_lemma("lem99", SMALL)


def test_enumeration_counts():
    assert len(list(enumerate_structures(GenConfig(Signature({"P": 1}), max_vertices=1)))) == 2
    two = GenConfig(Signature({"E": 2}), min_vertices=2, max_vertices=2)
    assert len(list(enumerate_structures(two))) == 16


def test_flagged_enumeration_matches_filtering():
    cfg = GenConfig(Signature({"P": 1}).extend(), min_vertices=2, max_vertices=2, flags={"good"})
    direct = set(enumerate_structures(cfg))
    naive = set(enumerate_structures(cfg, naive=True))
    assert direct == naive and direct
    assert all(is_good(d) for d in direct)


def test_canonical_enumeration_is_iso_free():
    cfg = GenConfig(Signature({"E": 2}), max_vertices=3, canonical=True)
    reps = list(enumerate_structures(cfg))
    by_size = {}
    for d in reps:
        by_size.setdefault(len(d.vertices), []).append(d)
    for group in by_size.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                assert not isomorphic(a, b)
    # every structure is isomorphic to some representative
    keys = {canonical_key(d) for d in reps}
    for d in enumerate_structures(GenConfig(Signature({"E": 2}), min_vertices=2, max_vertices=2)):
        assert canonical_key(d) in keys
    assert len(by_size[2]) == 10


def test_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_structures(GenConfig(Signature({"E": 2}), max_vertices=5, cap=1000)))


def test_sampling_flags_and_determinism():
    sig = Signature({"E": 2, "A": 1}, {"k"}).extend()
    cfg = GenConfig(sig, max_vertices=5, flags={"very_good"}, samples=50, seed=11)
    first = list(sample_structures(cfg))
    assert first == list(sample_structures(cfg))
    assert all(classify_structure(d).very_good for d in first)
    good = GenConfig(sig, max_vertices=5, flags={"good"}, samples=1000, seed=2)
    for d in sample_structures(good):
        for a in venus_atoms(sig):
            assert d.holds(a.rel, tuple(d.interp[t.name] for t in a.args))


def test_flags_need_extension():
    with pytest.raises(Exception):
        GenConfig(Signature({"E": 2}), flags={"good"})


def test_search_finds_single_vertex_counterexample():
    qs = parse_query("A(x) | B(y)")
    qb = parse_query("A(x) & B(y)")
    inst = ReductionInstance(qs, qb)
    hit = search_counterexample(inst, GenConfig(Signature({"A": 1, "B": 1}), max_vertices=1))
    assert hit is not None
    well = Structure(Signature({"A": 1, "B": 1}), [("A", ("v",)), ("B", ("v",))])
    assert apply(qs, well) == 2 > apply(qb, well) == 1
    # a reported counterexample re-verifies with the brute-force counter
    assert apply(qs, hit.structure, naive=True) > apply(qb, hit.structure, naive=True)


def test_search_reflexive_finds_nothing():
    q = parse_query("E(x,y) & E(y,z)")
    assert search_counterexample(ReductionInstance(q, q), GenConfig(Signature({"E": 2}), max_vertices=2)) is None


def test_search_seeded_thm2():
    ps, pb = parse_polynomial("x1*x1 + x2"), parse_polynomial("x1")
    v = Valuation([3, 0])
    assert eval_poly(ps, v) > 1 + eval_poly(pb, v)
    inst = build_thm2(ps, pb)
    seed = marsify(structure_of_valuation(v))
    cfg = GenConfig(seed.signature, max_vertices=1, samples=1)
    hit = search_counterexample(inst, cfg, exhaustive=False, seeds=[seed])
    assert hit is not None and hit.structure == seed
    assert (hit.lhs, hit.rhs) == (eval_poly(ps, v), 1 + eval_poly(pb, v))


def test_search_skips_trivial_structures_in_nontrivial_mode():
    sig = Signature({"P": 1}, {"mars", "venus"})
    qs, qb = parse_query("P(@mars)"), parse_query("P(@venus)")
    cfg = GenConfig(sig, max_vertices=1)
    assert search_counterexample(ReductionInstance(qs, qb, 1, NON_TRIVIAL), cfg) is None
    assert search_counterexample(ReductionInstance(qs, qb), GenConfig(sig, max_vertices=2)) is not None


def test_one_directional_rclique_is_caught(monkeypatch):
    """A clique that only links x_j -> x_j' must make the trip identities fail."""
    from cqbag.relcore import Atom, CQ, R_REL
    from cqbag.xform import _as_term, planet_atoms
    from cqbag.lab.gen import planetary_structure

    def broken(xs):
        xs = [_as_term(x) for x in xs]
        atoms = [a for x in xs for a in planet_atoms(x)]
        atoms += [Atom(R_REL, (xs[i], xs[k])) for i in range(len(xs)) for k in range(i + 1, len(xs))]
        return CQ(atoms)

    monkeypatch.setattr(cqbag.xform, "rclique", broken)
    rng = random.Random(0)
    sig = Signature({"E": 2}).extend()
    failures = 0
    for _ in range(40):
        d = planetary_structure(rng, sig, 2, extra=1, density=0.5)
        q = parse_query("E(a,b) | E(c,d)")
        from cqbag.xform import count_by_trips, cqize
        from cqbag import count_homs
        failures += count_homs(cqize(q), d) != count_by_trips(q, d).total
    assert failures > 0
    cfg = GenConfig(Signature({"E": 2}), max_vertices=4, samples=60, seed=1)
    for name in ("lem5", "lem6"):
        rep = check_lemma(name, cfg)
        assert not rep.ok and rep.counterexample is not None
