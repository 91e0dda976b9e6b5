"""Query and structure transformations: relativization, CQ-ization, marsification, trips.

A *planet* is a vertex p with R(venus, p) and R(p, venus). CQ-ization turns a
UCQ with j disjuncts into one CQ with j alien variables ``x1..xj`` that must
form an R-clique of planets; each alien evaluates its disjunct inside the part
of the structure visible (via V) from the planet it sits on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .bageval import count_homs, planets, seen, seen_defined
from .relcore import (
    MARS, R_REL, RESERVED_CONSTANTS, RESERVED_RELATIONS, V_REL, VENUS, Atom, CQ, Const,
    CQBagError, Node, QueryError, Signature, SignatureError, Structure, StructureError, Term,
    UCQ, Var, as_ucq, is_alien_name, is_good, is_pleasant, venus_atoms,
)

VEN = Const(VENUS)
MAR = Const(MARS)


def _as_term(x: Term | str) -> Term:
    return Var(x) if isinstance(x, str) else x


def alien(j: int) -> Var:
    return Var(f"x{j}")


def good_query(sig: Signature) -> CQ:
    """V(venus,venus) & R(venus,venus) & every variable-free atom of ``sig`` mentioning venus."""
    if not sig.is_base():
        raise SignatureError("good_query expects a base signature")
    return CQ([Atom(V_REL, (VEN, VEN)), Atom(R_REL, (VEN, VEN))] + venus_atoms(sig))


def planet_atoms(x: Term | str) -> list[Atom]:
    x = _as_term(x)
    return [Atom(R_REL, (VEN, x)), Atom(R_REL, (x, VEN))]


def planet(x: Term | str) -> CQ:
    return CQ(planet_atoms(x))


def _reject_special(cq: CQ, what: str) -> None:
    if cq.inequalities():
        raise QueryError(f"{what} does not accept inequality atoms")
    bad = {a.rel for a in cq.relational()} & RESERVED_RELATIONS
    bad |= {c.name for c in cq.constants()} & RESERVED_CONSTANTS
    if bad:
        raise QueryError(f"{what} expects a query over a base signature; found {sorted(bad)}")


def relativize(x: Term | str, cq: CQ) -> CQ:
    """``cq & Planet(x) & V(x, y)`` for every variable y of ``cq``.

    ``x`` may be a variable, a constant (e.g. mars) or a substituted vertex.
    """
    x = _as_term(x)
    _reject_special(cq, "relativize")
    if isinstance(x, Var) and x in cq.variables():
        raise QueryError(f"{x} already occurs in the query")
    return CQ(list(cq.atoms) + planet_atoms(x) + [Atom(V_REL, (x, y)) for y in cq.variables()])


def rclique(xs: Sequence[Term | str]) -> CQ:
    xs = [_as_term(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise QueryError("rclique needs distinct terms")
    atoms: list[Atom] = []
    for x in xs:
        atoms += planet_atoms(x)
    for i, j in itertools.combinations(range(len(xs)), 2):
        atoms += [Atom(R_REL, (xs[i], xs[j])), Atom(R_REL, (xs[j], xs[i]))]
    return CQ(atoms)


def cqize(q: CQ | UCQ, *, require_pleasant: bool = True) -> CQ:
    """RClique(x1..xj) & relativize(x_i, phi_i) for the j disjuncts phi_i of ``q``.

    ``require_pleasant=False`` admits unpleasant input; the resulting CQ is
    well-formed but the counting identities for it assume pleasantness.
    """
    q = as_ucq(q)
    if require_pleasant and not is_pleasant(q):
        raise QueryError("CQ-ization needs a pleasant query")
    for v in q.variables():
        if is_alien_name(v.name):
            raise QueryError(f"variable {v} clashes with the alien namespace")
    aliens = [alien(j) for j in range(1, len(q) + 1)]
    atoms = list(rclique(aliens).atoms)
    for x, phi in zip(aliens, q):
        atoms += relativize(x, phi).atoms
    return CQ(atoms)


def _fresh_vertex(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for i in itertools.count(1):
        if f"{base}{i}" not in taken:
            return f"{base}{i}"
    raise AssertionError  # pragma: no cover


def marsify(d: Structure) -> Structure:
    """Embed ``d`` as the view from a fresh planet mars inside a very good universe."""
    sig = d.signature
    if not sig.is_base():
        raise SignatureError("marsify expects a structure over a base signature")
    ven = _fresh_vertex(VENUS, d.vertices)
    mar = _fresh_vertex(MARS, d.vertices | {ven})
    interp = dict(d.interp, **{VENUS: ven, MARS: mar})

    def ground(t):
        return interp[t.name]

    facts = set(d.facts)
    for a in good_query(sig).relational() + tuple(planet_atoms(MAR)):
        facts.add((a.rel, tuple(ground(t) for t in a.args)))
    facts |= {(V_REL, (mar, v)) for v in d.vertices}
    return Structure(sig.extend(), facts, interp, d.vertices | {ven, mar})


def eta0(m: int) -> CQ:
    """m independent conjuncts V(venus, _)."""
    if m < 1:
        raise QueryError("eta0 needs m >= 1")
    return CQ(Atom(V_REL, (VEN, Var(f"_e{i}"))) for i in range(1, m + 1))


def eta1() -> CQ:
    return CQ([Atom(V_REL, (VEN, Var("_e1"))), Atom(R_REL, (Var("_v"), Var("_v")))])


def substitute(q: CQ, h: Mapping[Var | str, str]) -> CQ:
    """Replace each variable in the domain of ``h`` by the vertex it maps to."""
    h = {_as_term(k): v for k, v in h.items()}
    qvars = set(q.variables())
    if not set(h) <= qvars:
        raise QueryError(f"substitution domain not in the query: {sorted(map(str, set(h) - qvars))}")
    return q.rename({k: Node(v) for k, v in h.items()})


# ---------------------------------------------------------------------------
# trips

ALL_VENUS = "all-venus"
ONE_AWAY = "one-away"
TWO_PLUS = "two-plus-away"


@dataclass(frozen=True)
class Trip:
    """Images of the aliens x1..xj, in order."""
    images: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.images)

    def mapping(self) -> dict[Var, str]:
        return {alien(j): p for j, p in enumerate(self.images, 1)}

    def __str__(self) -> str:
        return "{" + ", ".join(f"x{j}->{p}" for j, p in enumerate(self.images, 1)) + "}"


@dataclass(frozen=True)
class TripClass:
    tag: str
    destinations: frozenset[str]


def classify_trip(trip: Trip, venus: str) -> TripClass:
    away = [p for p in trip.images if p != venus]
    dest = frozenset(away)
    if not away:
        return TripClass(ALL_VENUS, dest)
    if len(away) == 1:
        return TripClass(ONE_AWAY, dest)
    return TripClass(TWO_PLUS, dest)


def iter_trips(j: int, d: Structure, cap: int | None = None) -> Iterator[tuple[Trip, TripClass]]:
    """Stream all j-trips of ``d``; raises once more than ``cap`` trips have been produced."""
    if not is_good(d):
        raise StructureError("trips are enumerated on good structures only")
    ven = d.interp[VENUS]
    ps = sorted(planets(d))
    adj = {p: {q for q in ps if d.holds(R_REL, (p, q)) and d.holds(R_REL, (q, p))} for p in ps}
    produced = 0
    chosen: list[str] = []

    def extend() -> Iterator[tuple[Trip, TripClass]]:
        nonlocal produced
        if len(chosen) == j:
            produced += 1
            if cap is not None and produced > cap:
                raise CQBagError(f"more than {cap} trips")
            t = Trip(tuple(chosen))
            yield t, classify_trip(t, ven)
            return
        for p in ps:
            if all(p in adj[q] for q in chosen):
                chosen.append(p)
                yield from extend()
                chosen.pop()

    yield from extend()


def enumerate_trips(j: int, d: Structure, cap: int | None = 100_000) -> list[tuple[Trip, TripClass]]:
    return list(iter_trips(j, d, cap))


@dataclass(frozen=True)
class TripCount:
    total: int
    table: tuple[tuple[Trip, TripClass, int], ...]

    def by_images(self) -> dict[tuple[str, ...], int]:
        return {t.images: v for t, _, v in self.table}


def relativized_factor(phi: CQ, p: str, d: Structure) -> int:
    """phi evaluated in the part of ``d`` visible from planet p."""
    if seen_defined(p, d):
        return count_homs(phi, seen(p, d))
    # base constants hidden from p: seen(p, d) is not a structure, count the relativized query instead
    return count_homs(relativize(Node(p), phi), d)


def count_by_trips(q: CQ | UCQ, d: Structure) -> TripCount:
    """cqize(q) -> d, summed trip by trip with each trip's count factored per alien."""
    q = as_ucq(q)
    if not is_pleasant(q):
        raise QueryError("count_by_trips needs a pleasant query")
    memo: dict[tuple[int, str], int] = {}
    table = []
    for trip, cls in iter_trips(len(q), d):
        value = 1
        for i, (phi, p) in enumerate(zip(q, trip.images)):
            key = (i, p)
            if key not in memo:
                memo[key] = relativized_factor(phi, p, d)
            value *= memo[key]
            if not value:
                break
        table.append((trip, cls, value))
    return TripCount(sum(v for _, _, v in table), tuple(table))
