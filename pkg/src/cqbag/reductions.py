"""Constructors for the containment instances produced by the reductions.

Each constructor returns a :class:`ReductionInstance` (s-query, b-query, scale, mode).
The instance asks whether ``scale * (qs -> D) <= (qb -> D)`` for every structure D,
or only for non-trivial D (mars and venus apart) when ``mode`` says so.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .polyrep import Polynomial, choose_cent, mono_to_cq, pad_polynomials, poly_to_ucq
from .relcore import (
    Atom, CQ, Neq, QueryError, Signature, SignatureError, Structure, UCQ, Var, as_ucq, conjoin,
    is_pleasant,
)
from .xform import MAR, VEN, cqize, eta0, eta1, good_query, planet, relativize

ALL_STRUCTURES = "all-structures"
NON_TRIVIAL = "non-trivial-only"


@dataclass(frozen=True)
class ReductionInstance:
    qs: UCQ
    qb: UCQ
    scale: Fraction = Fraction(1)
    mode: str = ALL_STRUCTURES
    provenance: str = ""
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.mode not in (ALL_STRUCTURES, NON_TRIVIAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "qs", as_ucq(self.qs))
        object.__setattr__(self, "qb", as_ucq(self.qb))
        object.__setattr__(self, "scale", Fraction(self.scale))

    def manifest(self) -> dict[str, Any]:
        out: dict[str, Any] = {"theorem": self.provenance, "mode": self.mode, "scale": str(self.scale)}
        out.update({k: str(v) for k, v in self.params.items()})
        return out


def _base_sig(q: CQ | UCQ) -> Signature:
    sig = as_ucq(q).signature()
    if not sig.is_base():
        raise SignatureError("reductions take queries over a base signature")
    return sig


def build_thm1(psi_s: CQ, Psi_b: CQ | UCQ, sig: Signature | None = None) -> ReductionInstance:
    """CQ-vs-UCQ containment to CQ-vs-CQ containment.

    ``sig`` defaults to the union of the two queries' signatures; Good ranges over it.
    """
    Psi_b = as_ucq(Psi_b)
    if not is_pleasant(Psi_b):
        raise QueryError("the b-side UCQ must be pleasant; see pleasantize")
    sig = sig or _base_sig(psi_s).union(_base_sig(Psi_b))
    gamma_s = CQ(good_query(sig).atoms + cqize(psi_s, require_pleasant=False).atoms)
    gamma_b = conjoin(cqize(Psi_b), eta0(len(Psi_b)))
    return ReductionInstance(gamma_s, gamma_b, 1, ALL_STRUCTURES, "thm1", {"m": len(Psi_b)})


# ---------------------------------------------------------------------------
# believers: making queries pleasant


def believer_rel(rel: str) -> str:
    return rel + "'"


def pleasantize(q: CQ | UCQ, believer: str = "_b") -> UCQ:
    """Give every atom a leading believer argument, one fresh believer variable per disjunct."""
    out = []
    for phi in as_ucq(q):
        if phi.inequalities():
            raise QueryError("pleasantize does not accept inequality atoms")
        taken = {v.name for v in phi.variables()}
        b = believer
        k = 1
        while b in taken:
            b, k = f"{believer}{k}", k + 1
        out.append(CQ(Atom(believer_rel(a.rel), (Var(b),) + a.args) for a in phi.relational()))
    return UCQ(out)


def believer_signature(sig: Signature) -> Signature:
    return Signature({believer_rel(n): a + 1 for n, a in sig.relations}, sig.constants)


def believer_slice(d: Structure, c: str, sig: Signature | None = None) -> Structure:
    """What vertex c believes: R(a) holds iff R'(c, a) holds in d."""
    if c not in d.vertices:
        raise ValueError(f"{c} is not a vertex")
    if sig is None:
        names = {}
        for n, a in d.signature.relations:
            if not n.endswith("'"):
                raise SignatureError(f"relation {n} is not a believer relation")
            names[n[:-1]] = a - 1
        sig = Signature(names, d.signature.constants)
    facts = [(rel[:-1], args[1:]) for rel, args in d.facts if args[0] == c]
    return Structure(sig, facts, d.interp, d.vertices)


def believer_lift(d: Structure, c: str = "c") -> Structure:
    """Every fact of d, believed by the vertex c (added if new)."""
    facts = [(believer_rel(rel), (c,) + args) for rel, args in d.facts]
    return Structure(believer_signature(d.signature), facts, d.interp, d.vertices | {c})


# ---------------------------------------------------------------------------
# polynomial reductions


def _x_signature(*ps: Polynomial) -> Signature:
    n = max(p.max_index() for p in ps)
    return Signature({f"X{i}": 1 for i in range(1, n + 1)})


def build_thm2(ps: Polynomial, pb: Polynomial) -> ReductionInstance:
    """P_s <= 1 + P_b on all valuations iff the instance holds on all non-trivial structures."""
    if not ps.monomials or not pb.monomials:
        raise ValueError("build_thm2 needs nonempty polynomials")
    sig = _x_signature(ps, pb)
    head = good_query(sig).atoms + planet(MAR).atoms
    phi_s = UCQ(CQ(head + relativize(MAR, mono_to_cq(m)).atoms) for m in ps.monomials)
    phi_b = cqize(poly_to_ucq(pb))
    return ReductionInstance(phi_s, phi_b, 1, NON_TRIVIAL, "thm2", {"n": max(ps.max_index(), pb.max_index())})


def build_thm3(ps0: Polynomial, pb0: Polynomial, eps: Fraction | int | str) -> ReductionInstance:
    """Scaled CQ containment with factor c = 1 + eps, built from the padded polynomial pair."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must satisfy 0 < eps <= 1")
    c = 1 + eps
    cent = choose_cent(c)
    padded = pad_polynomials(ps0, pb0, c, cent)
    sig = _x_signature(padded.ps, padded.pb)
    beta_s = CQ(good_query(sig).atoms + planet(MAR).atoms + cqize(poly_to_ucq(padded.ps)).atoms)
    beta_b = conjoin(cqize(poly_to_ucq(padded.pb)), eta1())
    params = {"c": c, "cent": cent, "u": padded.u, "ps": padded.ps, "pb": padded.pb}
    return ReductionInstance(beta_s, beta_b, c, NON_TRIVIAL, "thm3", params)


# ---------------------------------------------------------------------------
# doubling gadgets


GADGET_REL = "P"


def cor5_gadgets(rel: str = GADGET_REL) -> tuple[CQ, CQ]:
    z, z2 = Var("z"), Var("z'")
    alpha_s = CQ([Neq(MAR, VEN), Atom(rel, (MAR,)), Atom(rel, (VEN,)), Atom(rel, (z,)), Atom(rel, (z2,))])
    alpha_b = CQ([Atom(rel, (z,)), Atom(rel, (z2,)), Neq(z, z2)])
    return alpha_s, alpha_b


def cor5_compose(beta_s: CQ, beta_b: CQ, rel: str = GADGET_REL) -> ReductionInstance:
    """2-scaled non-trivial containment of beta_s in beta_b as plain containment."""
    used = {a.rel for a in beta_s.relational()} | {a.rel for a in beta_b.relational()}
    if rel in used:
        raise SignatureError(f"gadget relation {rel} already occurs in the input")
    alpha_s, alpha_b = cor5_gadgets(rel)
    return ReductionInstance(conjoin(beta_s, alpha_s), conjoin(beta_b, alpha_b), 1, ALL_STRUCTURES, "cor5")


__all__ = [
    "ReductionInstance", "ALL_STRUCTURES", "NON_TRIVIAL", "build_thm1", "pleasantize",
    "believer_rel", "believer_signature", "believer_slice", "believer_lift", "build_thm2",
    "build_thm3", "cor5_gadgets", "cor5_compose", "GADGET_REL",
]
