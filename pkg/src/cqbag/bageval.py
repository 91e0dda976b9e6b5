"""Exact bag-semantics evaluation: counting homomorphisms from queries into structures.

``count_homs`` is the engine used everywhere; ``count_homs_naive`` enumerates every
assignment and exists only as a test oracle. All arithmetic is on Python ints and
:class:`fractions.Fraction`, so results are exact at any size.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .relcore import (
    MARS, R_REL, V_REL, VENUS, Atom, CQ, Const, Neq, QueryError, SignatureError,
    Structure, StructureError, UCQ, Var, as_ucq, restrict,
)

Rational = Fraction
Query = Union[CQ, UCQ]


def _check_compatible(cq: CQ, d: Structure) -> None:
    ar = d.signature.arity
    for a in cq.relational():
        if ar.get(a.rel) != len(a.args):
            raise SignatureError(f"relation {a.rel}/{len(a.args)} is not in the structure's signature")
    for c in cq.constants():
        if c.name not in d.signature.constants:
            raise SignatureError(f"constant {c.name} is not interpreted by the structure")
    for n in cq.nodes():
        if n.name not in d.vertices:
            raise StructureError(f"vertex {n.name} does not belong to the structure")


class _Slot:
    """A query variable inside the engine; compared by identity, which is cheap."""
    __slots__ = ("i",)

    def __init__(self, i: int):
        self.i = i

    def __repr__(self) -> str:
        return f"?{self.i}"


def _resolve(cq: CQ, d: Structure) -> list[tuple]:
    """Atoms with constants and nodes replaced by vertex names, variables by slots."""
    interp = d.interp
    slots: dict[Var, _Slot] = {}

    def res(t):
        if isinstance(t, Var):
            s = slots.get(t)
            if s is None:
                s = slots[t] = _Slot(len(slots))
            return s
        if isinstance(t, Const):
            return interp[t.name]
        return t.name

    out = []
    for a in cq.atoms:
        if isinstance(a, Atom):
            out.append((a.rel, tuple(res(t) for t in a.args)))
        else:
            out.append(("!=", (res(a.left), res(a.right))))
    return out


def _atom_vars(atom) -> list[_Slot]:
    return [t for t in atom[1] if type(t) is _Slot]


def _holds(atom, d: Structure) -> bool:
    rel, args = atom
    if rel == "!=":
        return args[0] != args[1]
    return d.holds(rel, args)


def _components(atoms: list[tuple]) -> list[list[tuple]]:
    parent: dict = {}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in atoms:
        vs = _atom_vars(a)
        for v in vs:
            parent.setdefault(v, v)
        r0 = find(vs[0])
        for v in vs[1:]:
            rb = find(v)
            if rb is not r0:
                parent[rb] = r0
    groups: dict = {}
    for a in atoms:
        groups.setdefault(find(_atom_vars(a)[0]), []).append(a)
    return list(groups.values())


def _shape(atoms: list[tuple]) -> tuple:
    """Memo key invariant under renaming the slots of a component."""
    names: dict = {}
    return tuple((rel, tuple(names.setdefault(t, len(names)) if type(t) is _Slot else t for t in args))
                 for rel, args in atoms)


class _Counter:
    """Backtracking counter that re-factorizes into independent components after every binding."""

    def __init__(self, d: Structure):
        self.d = d
        self.memo: dict = {}
        self.columns: dict = {}

    def count(self, atoms: list[tuple]) -> int:
        live = []
        for a in atoms:
            if _atom_vars(a):
                live.append(a)
            elif not _holds(a, self.d):
                return 0
        if not live:
            return 1
        total = 1
        for comp in _components(live):
            key = _shape(comp)
            c = self.memo.get(key)
            if c is None:
                c = self._component(comp)
                self.memo[key] = c
            if c == 0:
                return 0
            total *= c
        return total

    def _column(self, rel: str, bound: tuple, positions: tuple[int, ...]) -> frozenset[str]:
        key = (rel, bound, positions)
        hit = self.columns.get(key)
        if hit is None:
            vals = set()
            for tup in self.d.lookup(rel, bound):
                v = tup[positions[0]]
                if all(tup[i] == v for i in positions[1:]):
                    vals.add(v)
            hit = self.columns[key] = frozenset(vals)
        return hit

    def _candidates(self, var: _Slot, atoms: list[tuple]) -> frozenset[str] | None:
        """Vertices ``var`` can take given the atoms it occurs in; None if unconstrained."""
        cands = None
        for rel, args in atoms:
            if rel == "!=":
                continue
            bound = tuple((i, t) for i, t in enumerate(args) if type(t) is not _Slot)
            positions = tuple(i for i, t in enumerate(args) if t is var)
            vals = self._column(rel, bound, positions)
            cands = vals if cands is None else cands & vals
            if not cands:
                return cands
        return cands

    def _component(self, atoms: list[tuple]) -> int:
        occ: dict[_Slot, list[tuple]] = {}
        for a in atoms:
            for v in _atom_vars(a):
                occ.setdefault(v, []).append(a)
        forced: dict[_Slot, str] = {}
        best, best_cands = None, None
        for var in sorted(occ, key=lambda v: v.i):
            cands = self._candidates(var, occ[var])
            if cands is None:
                cands = set(self.d.vertices)
            if not cands:
                return 0
            if len(cands) == 1:
                forced[var] = next(iter(cands))
            elif best_cands is None or (len(cands), -len(occ[var])) < (len(best_cands), -len(occ[best])):
                # fewest candidates first; among those, the most constrained variable
                best, best_cands = var, cands
        if forced:
            # variables with a single candidate are bound together in one step
            return self.count([(rel, tuple(forced.get(t, t) for t in args)) for rel, args in atoms])
        total = 0
        for val in sorted(best_cands):
            bound = [(rel, tuple(val if t is best else t for t in args))
                     for rel, args in atoms]
            total += self.count(bound)
        return total


def count_homs(cq: CQ, d: Structure) -> int:
    """Number of homomorphisms from ``cq`` to ``d``; the empty CQ has exactly one."""
    _check_compatible(cq, d)
    return _Counter(d).count(_resolve(cq, d))


def count_homs_naive(cq: CQ, d: Structure) -> int:
    """Same contract as :func:`count_homs`, by brute force over all |V(d)|^|var(cq)| assignments.

    Shares no code with the engine beyond signature checks, so it can serve as an oracle.
    """
    _check_compatible(cq, d)
    variables = cq.variables()

    def ground(t, h):
        if isinstance(t, Var):
            return h[t]
        if isinstance(t, Const):
            return d.interp[t.name]
        return t.name

    total = 0
    for values in itertools.product(sorted(d.vertices), repeat=len(variables)):
        h = dict(zip(variables, values))
        ok = True
        for a in cq.atoms:
            if isinstance(a, Neq):
                ok = ground(a.left, h) != ground(a.right, h)
            else:
                ok = (a.rel, tuple(ground(t, h) for t in a.args)) in d.facts
            if not ok:
                break
        total += ok
    return total


def apply(q: Query, d: Structure, *, naive: bool = False) -> int:
    """Sum of homomorphism counts over the disjuncts of ``q``."""
    counter = count_homs_naive if naive else count_homs
    return sum(counter(phi, d) for phi in as_ucq(q))


def component_split(cq: CQ) -> list[CQ]:
    """Split atoms into groups that share no variables; variable-free atoms stand alone."""
    if cq.inequalities():
        raise QueryError("component_split does not accept inequality atoms")
    parent: dict[Var, Var] = {}

    def find(x: Var) -> Var:
        while parent[x] != x:
            x = parent[x]
        return x

    for a in cq.atoms:
        vs = [t for t in a.args if isinstance(t, Var)]
        for v in vs:
            parent.setdefault(v, v)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[rb] = ra
    groups: dict = {}
    for i, a in enumerate(cq.atoms):
        vs = [t for t in a.args if isinstance(t, Var)]
        key = find(vs[0]) if vs else ("ground", i)
        groups.setdefault(key, []).append(a)
    return [CQ(g) for g in groups.values()]


def planets(d: Structure) -> frozenset[str]:
    """Vertices p with R(venus, p) and R(p, venus)."""
    if not d.signature.is_extension():
        raise SignatureError("planets are defined for structures over an extended signature")
    ven = d.interp[VENUS]
    return frozenset(t[1] for t in d.lookup(R_REL, ((0, ven),)) if d.holds(R_REL, (t[1], ven)))


def planets_nonvenus(d: Structure) -> frozenset[str]:
    return planets(d) - {d.interp[VENUS]}


def visible(p: str, d: Structure) -> frozenset[str]:
    return frozenset(t[1] for t in d.lookup(V_REL, ((0, p),)))


def seen(p: str, d: Structure) -> Structure:
    """The base-signature part of ``d`` visible from planet ``p``.

    Raises if ``p`` is not a planet, or if a base constant is not visible from ``p``.
    """
    if p not in planets(d):
        raise StructureError(f"{p} is not a planet")
    base = d.signature.base()
    vis = visible(p, d)
    hidden = sorted(c for c in base.constants if d.interp[c] not in vis)
    if hidden:
        raise StructureError(f"constants {hidden} are not visible from {p}")
    keep = {name for name, _ in base.relations}
    facts = (f for f in d.facts if f[0] in keep and all(v in vis for v in f[1]))
    return Structure(base, facts, {c: d.interp[c] for c in base.constants}, vis)


def seen_defined(p: str, d: Structure) -> bool:
    vis = visible(p, d)
    return all(d.interp[c] in vis for c in d.signature.base().constants)


@dataclass(frozen=True)
class ContainmentCheck:
    holds: bool
    lhs: int
    rhs: int
    scale: Fraction

    def __bool__(self) -> bool:
        return self.holds


def check_scaled_containment_at(r: Fraction | int | str, qs: Query, qb: Query, d: Structure,
                                *, naive: bool = False) -> ContainmentCheck:
    """Whether ``r * (qs -> d) <= (qb -> d)``, compared exactly."""
    r = Fraction(r)
    lhs, rhs = apply(qs, d, naive=naive), apply(qb, d, naive=naive)
    return ContainmentCheck(r * lhs <= rhs, lhs, rhs, r)


def non_trivial(d: Structure) -> bool:
    return d.interp.get(MARS) != d.interp.get(VENUS)


__all__ = [
    "Rational", "count_homs", "count_homs_naive", "apply", "component_split", "planets",
    "planets_nonvenus", "visible", "seen", "seen_defined", "check_scaled_containment_at",
    "ContainmentCheck", "non_trivial", "restrict",
]
