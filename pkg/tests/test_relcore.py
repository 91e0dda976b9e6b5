import pytest

from cqbag import (
    CQ, UCQ, Atom, Const, Neq, ParseError, QueryError, Signature, SignatureError, Structure,
    StructureError, Var, canonical_structure, classify_structure, count_homs, format_query,
    format_structure, is_pleasant, marsify, parse_cq, parse_query, parse_structure, restrict,
)
from cqbag.relcore import conjoin


def test_signature_rejects_bad_arity():
    with pytest.raises(SignatureError):
        Signature({"E": 0})
    with pytest.raises(SignatureError):
        Signature([("E", 2), ("E", 3)])


def test_base_and_extension():
    sig = Signature({"E": 2}, {"a"})
    ext = sig.extend()
    assert ext.is_extension() and not ext.is_base()
    assert ext.base() == sig
    with pytest.raises(SignatureError):
        ext.extend()


def test_parse_single_atom():
    q = parse_query("E1(y,z)", Signature({"E1": 2, "E2": 2, "E3": 2}))
    assert len(q) == 1
    assert q.disjuncts[0].atoms == (Atom("E1", (Var("y"), Var("z"))),)


def test_parse_three_disjuncts(psi):
    assert len(psi) == 3
    assert [a.rel for d in psi for a in d.atoms] == ["E1", "E2", "E3"]


def test_wildcards_become_distinct_variables():
    q = parse_cq("X2(_) & X4(_) & X2(_)")
    assert len(q.atoms) == 3
    assert len(set(q.variables())) == 3
    assert [v.name for v in q.variables()] == ["_w1", "_w2", "_w3"]


def test_disjuncts_are_renamed_apart():
    q = parse_query("E(x,y) | E(y,x)", allow_aliens=True)
    a, b = q.disjuncts
    assert not set(a.variables()) & set(b.variables())


def test_aliens_reserved():
    with pytest.raises(ParseError):
        parse_query("E(x1,y)")
    parse_query("E(x1,y)", allow_aliens=True)


@pytest.mark.parametrize("text", ["E(x,", "E(x) & ", "x != y", "E(x) | ", "E(X)"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_query(text)


def test_arity_and_unknown_checks():
    sig = Signature({"E": 2}, {"a"})
    with pytest.raises(ParseError):
        parse_query("E(x)", sig)
    with pytest.raises(ParseError):
        parse_query("F(x)", sig)
    with pytest.raises(ParseError):
        parse_query("E(x,@b)", sig)


def test_floating_inequality_rejected():
    with pytest.raises(ParseError):
        parse_query("P(z) & z != w")
    q = parse_cq("P(z) & P(w) & z != w")
    assert len(q.inequalities()) == 1


def test_true_is_empty_cq():
    assert parse_cq("true").atoms == ()


def test_parse_structure_golden(golden_d):
    assert golden_d.vertices == {"a", "b"}
    assert len(golden_d.facts) == 6


def test_structure_isolated_vertex_and_errors():
    d = parse_structure("sig P/1\nvertex a\n")
    assert d.vertices == {"a"} and not d.facts
    with pytest.raises(ParseError):
        parse_structure("sig E/2\nE(a,b,c)\n")
    # a constant's interpretation declares its vertex
    assert parse_structure("sig E/2 ; const a=v\nE(u,u)\n").vertices == {"u", "v"}
    with pytest.raises(StructureError):
        Structure(Signature({"E": 2}, {"a"}), [("E", ("u", "u"))])


def test_round_trips(psi, golden_d):
    assert parse_query(format_query(psi)) == psi
    assert parse_structure(format_structure(golden_d)) == golden_d
    m = marsify(golden_d)
    assert parse_structure(format_structure(m)) == m


def test_canonical_structure():
    d = canonical_structure(parse_cq("E1(y,z)"))
    assert d.vertices == {"y", "z"} and d.facts == {("E1", ("y", "z"))}
    assert canonical_structure(CQ()).vertices == frozenset()
    q = parse_cq("X2(u) & X4(v) & X2(w)")
    d = canonical_structure(q)
    assert len(d.vertices) == 3 and len(d.facts) == 3
    assert count_homs(q, d) >= 1
    with pytest.raises(QueryError):
        canonical_structure(parse_cq("P(x) & P(y) & x != y"))


def test_restrict(golden_d):
    assert restrict(golden_d, {"a", "b"}) == golden_d
    one = restrict(golden_d, {"a"})
    assert one.vertices == {"a"} and not one.facts
    with pytest.raises(StructureError):
        restrict(golden_d, {"c"})
    d = parse_structure("sig P/1 ; const k=a\nP(a)\nP(b)\n")
    with pytest.raises(StructureError):
        restrict(d, {"b"})


def test_pleasant():
    assert is_pleasant(parse_query("E1(y,z)"))
    assert not is_pleasant(parse_cq("B(@a,x) & A(@a)"))
    assert is_pleasant(CQ())


def test_classify_marsified_and_variants(golden_d):
    m = marsify(golden_d)
    f = classify_structure(m)
    assert (f.good, f.foggy, f.very_good, f.non_trivial) == (True, True, True, True)
    ven = m.interp["venus"]
    foggy_broken = Structure(m.signature, set(m.facts) | {("V", (ven, "a"))}, m.interp)
    assert not classify_structure(foggy_broken).foggy
    trivial = Structure(m.signature, m.facts, {"venus": ven, "mars": ven}, m.vertices)
    assert not classify_structure(trivial).non_trivial
    with pytest.raises(SignatureError):
        classify_structure(golden_d)


def test_conjoin_renames_apart():
    a, b = parse_cq("E(u,v)"), parse_cq("E(u,w)")
    c = conjoin(a, b)
    assert len(c.atoms) == 2 and len(set(c.variables())) == 4


def test_constant_variable_clash():
    with pytest.raises(QueryError):
        CQ([Atom("E", (Var("a"), Const("a")))])


def test_neq_terms_kept():
    q = CQ([Atom("P", (Var("z"),)), Atom("P", (Var("w"),)), Neq(Var("z"), Var("w"))])
    assert str(q).count("!=") == 1
    assert isinstance(UCQ(q), UCQ)
