"""Structure enumerators and samplers, plus random query and polynomial generators."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ..polyrep import Monomial, Polynomial, Valuation
from ..relcore import (
    MARS, R_REL, V_REL, VENUS, Atom, CQ, CQBagError, Const, Signature, SignatureError,
    Structure, UCQ, Var, classify_structure, venus_atoms,
)

FLAGS = ("good", "foggy", "very_good", "non_trivial")


class CapExceeded(CQBagError):
    pass


def _close_flags(flags) -> frozenset[str]:
    out = set(flags)
    unknown = out - set(FLAGS)
    if unknown:
        raise ValueError(f"unknown structure flags: {sorted(unknown)}")
    if "very_good" in out:
        out.add("foggy")
    if "foggy" in out:
        out.add("good")
    return frozenset(out)


@dataclass(frozen=True)
class GenConfig:
    signature: Signature
    max_vertices: int = 3
    flags: frozenset[str] = frozenset()
    seed: int = 0
    samples: int = 100
    min_vertices: int = 1
    canonical: bool = False
    density: float = 0.35
    cap: int = 2_000_000

    def __post_init__(self):
        if self.max_vertices < 1 or self.min_vertices < 1 or self.min_vertices > self.max_vertices:
            raise ValueError("need 1 <= min_vertices <= max_vertices")
        flags = _close_flags(self.flags)
        if flags and not self.signature.is_extension():
            raise SignatureError("structure flags need an extended signature")
        object.__setattr__(self, "flags", flags)

    def describe(self) -> str:
        return (f"signature=[{self.signature}] vertices={self.min_vertices}..{self.max_vertices} "
                f"flags={','.join(sorted(self.flags)) or '-'} seed={self.seed} samples={self.samples} "
                f"canonical={self.canonical} density={self.density} cap={self.cap}")


def vertex_names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def _fact_space(sig: Signature, verts: list[str]) -> list[tuple[str, tuple[str, ...]]]:
    return [(rel, args) for rel, arity in sig.relations for args in itertools.product(verts, repeat=arity)]


def _required_and_forbidden(sig: Signature, interp: dict[str, str], verts: list[str],
                            flags: frozenset[str]) -> tuple[set, set]:
    required: set = set()
    forbidden: set = set()
    if "good" in flags:
        ven = interp[VENUS]
        required |= {(V_REL, (ven, ven)), (R_REL, (ven, ven))}
        for a in venus_atoms(sig):
            required.add((a.rel, tuple(interp[t.name] for t in a.args)))
    if "foggy" in flags:
        forbidden |= {(V_REL, (interp[VENUS], v)) for v in verts if v != interp[VENUS]}
    if "very_good" in flags:
        forbidden |= {(R_REL, (v, v)) for v in verts if v != interp[VENUS]}
    return required, forbidden


def _placements(sig: Signature, verts: list[str], flags: frozenset[str]) -> Iterator[dict[str, str]]:
    consts = sorted(sig.constants)
    for combo in itertools.product(verts, repeat=len(consts)):
        interp = dict(zip(consts, combo))
        if "non_trivial" in flags and interp[MARS] == interp[VENUS]:
            continue
        yield interp


# ---------------------------------------------------------------------------
# canonical forms


def canonical_key(d: Structure) -> tuple:
    """Isomorphism-invariant key: colour refinement, then the least relabelling within colour classes."""
    verts = d.sorted_vertices()
    names = {v: tuple(sorted(c for c, x in d.interpretation if x == v)) for v in verts}
    colour = {v: names[v] for v in verts}
    while True:
        sigs = {v: (colour[v], tuple(sorted((rel, i, tuple(colour[u] for u in args))
                                            for rel, args in d.facts for i, u in enumerate(args) if u == v)))
                for v in verts}
        ranks = {s: k for k, s in enumerate(sorted(set(sigs.values())))}
        new = {v: ranks[sigs[v]] for v in verts}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    classes: dict[int, list[str]] = {}
    for v in verts:
        classes.setdefault(colour[v], []).append(v)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [v for p in perms for v in p]
        label = {v: i for i, v in enumerate(order)}
        facts = tuple(sorted((rel, tuple(label[u] for u in args)) for rel, args in d.facts))
        interp = tuple(sorted((c, label[v]) for c, v in d.interpretation))
        key = (len(verts), interp, facts)
        if best is None or key < best:
            best = key
    return best


def isomorphic(a: Structure, b: Structure) -> bool:
    """Brute force over all bijections; for small cross-checks only."""
    if a.signature != b.signature or len(a.vertices) != len(b.vertices) or len(a.facts) != len(b.facts):
        return False
    va, vb = a.sorted_vertices(), b.sorted_vertices()
    for perm in itertools.permutations(vb):
        f = dict(zip(va, perm))
        if all(f[a.interp[c]] == b.interp[c] for c in a.signature.constants) and \
                {(rel, tuple(f[u] for u in args)) for rel, args in a.facts} == set(b.facts):
            return True
    return False


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _enumeration_size(cfg: GenConfig, naive: bool) -> int:
    total = 0
    for n in range(cfg.min_vertices, cfg.max_vertices + 1):
        verts = vertex_names(n)
        space = _fact_space(cfg.signature, verts)
        for interp in _placements(cfg.signature, verts, frozenset() if naive else cfg.flags):
            if naive:
                total += 2 ** len(space)
            else:
                req, forb = _required_and_forbidden(cfg.signature, interp, verts, cfg.flags)
                total += 2 ** len([f for f in space if f not in req and f not in forb])
            if total > cfg.cap:
                return total
    return total


def enumerate_structures(cfg: GenConfig, *, naive: bool = False) -> Iterator[Structure]:
    """Every structure on min..max vertices satisfying cfg.flags.

    The default path builds flagged structures directly; ``naive=True`` generates
    every structure and filters, as a cross-check. ``cfg.canonical`` keeps one
    structure per isomorphism class.
    """
    size = _enumeration_size(cfg, naive)
    if size > cfg.cap:
        raise CapExceeded(f"enumeration needs more than {cfg.cap} candidates")
    sig = cfg.signature
    for n in range(cfg.min_vertices, cfg.max_vertices + 1):
        verts = vertex_names(n)
        space = _fact_space(sig, verts)
        seen_keys: set = set()
        for interp in _placements(sig, verts, frozenset() if naive else cfg.flags):
            if naive:
                req, free = set(), space
            else:
                req, forb = _required_and_forbidden(sig, interp, verts, cfg.flags)
                free = [f for f in space if f not in req and f not in forb]
            for mask in range(2 ** len(free)):
                facts = req | {free[i] for i in range(len(free)) if mask >> i & 1}
                d = Structure(sig, facts, interp, verts)
                if naive and cfg.flags and not _has_flags(d, cfg.flags):
                    continue
                if cfg.canonical:
                    key = canonical_key(d)
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                yield d


def _has_flags(d: Structure, flags: frozenset[str]) -> bool:
    got = classify_structure(d)
    return all(getattr(got, f) for f in flags)


# ---------------------------------------------------------------------------
# sampling


def sample_structures(cfg: GenConfig) -> Iterator[Structure]:
    """cfg.samples pseudo-random structures; flagged ones are built to satisfy the flags."""
    rng = random.Random(cfg.seed)
    sig = cfg.signature
    for _ in range(cfg.samples):
        yield random_structure(rng, sig, cfg.min_vertices, cfg.max_vertices, cfg.flags, cfg.density)


def random_structure(rng: random.Random, sig: Signature, min_vertices: int, max_vertices: int,
                     flags=frozenset(), density: float = 0.35) -> Structure:
    flags = _close_flags(flags)
    lo = max(min_vertices, 2) if "non_trivial" in flags else min_vertices
    n = rng.randint(lo, max(lo, max_vertices))
    verts = vertex_names(n)
    interp = {c: rng.choice(verts) for c in sorted(sig.constants)}
    if "non_trivial" in flags and interp[MARS] == interp[VENUS]:
        interp[MARS] = rng.choice([v for v in verts if v != interp[VENUS]])
    req, forb = _required_and_forbidden(sig, interp, verts, flags)
    facts = {f for f in _fact_space(sig, verts) if f not in forb and rng.random() < density}
    return Structure(sig, facts | req, interp, verts)


def planetary_structure(rng: random.Random, sig: Signature, planets: int, extra: int = 1,
                        flags=frozenset({"very_good", "non_trivial"}), density: float = 0.5) -> Structure:
    """A flagged structure over ``sig`` (extended) with exactly ``planets`` planets besides venus.

    Venus is v0 and mars is v1 (a planet); R between planets and visibility are random.
    """
    flags = _close_flags(flags)
    if not sig.is_extension():
        raise SignatureError("planetary_structure needs an extended signature")
    n = 1 + planets + extra
    verts = vertex_names(n)
    interp = {c: rng.choice(verts) for c in sorted(sig.constants)}
    interp[VENUS] = "v0"
    interp[MARS] = "v1" if planets else "v0"
    req, forb = _required_and_forbidden(sig, interp, verts, flags)
    pl = verts[1:1 + planets]
    base_rels = [(r, a) for r, a in sig.relations if r not in (V_REL, R_REL)]
    facts = set(req)
    for p in pl:
        facts |= {(R_REL, ("v0", p)), (R_REL, (p, "v0"))}
    for p, q in itertools.combinations(pl, 2):
        for e in ((p, q), (q, p)):
            if rng.random() < density:
                facts.add((R_REL, e))
    for p in pl:
        for v in verts:
            if rng.random() < density:
                facts.add((V_REL, (p, v)))
    for rel, arity in base_rels:
        for args in itertools.product(verts, repeat=arity):
            if rng.random() < density:
                facts.add((rel, args))
    facts -= forb
    return Structure(sig, facts, interp, verts)


# ---------------------------------------------------------------------------
# queries, polynomials, valuations


def random_cq(rng: random.Random, sig: Signature, max_atoms: int = 3, max_vars: int = 3,
              const_prob: float = 0.2, pleasant: bool = True, min_atoms: int = 1,
              prefix: str = "y") -> CQ:
    """A random CQ over the base part of ``sig``; variables are named ``{prefix}1..``."""
    base = sig.base()
    rels = list(base.relations)
    if not rels:
        raise SignatureError("random_cq needs at least one relation")
    consts = sorted(base.constants)
    pool = [Var(f"{prefix}{i}") for i in range(1, max_vars + 1)]
    atoms = []
    for _ in range(rng.randint(min_atoms, max_atoms)):
        rel, arity = rng.choice(rels)
        args = [Const(rng.choice(consts)) if consts and rng.random() < const_prob else rng.choice(pool)
                for _ in range(arity)]
        if pleasant and not any(isinstance(t, Var) for t in args):
            args[rng.randrange(arity)] = rng.choice(pool)
        atoms.append(Atom(rel, args))
    return CQ(atoms)


def random_ucq(rng: random.Random, sig: Signature, max_disjuncts: int = 3, **kw) -> UCQ:
    return UCQ(random_cq(rng, sig, **kw) for _ in range(rng.randint(1, max_disjuncts)))


def random_monomial(rng: random.Random, n: int, max_degree: int = 3) -> Monomial:
    return Monomial(rng.randint(1, n) for _ in range(rng.randint(0, max_degree)))


def random_polynomial(rng: random.Random, n: int, max_monomials: int = 4, max_degree: int = 3,
                      min_monomials: int = 1) -> Polynomial:
    return Polynomial(random_monomial(rng, n, max_degree)
                      for _ in range(rng.randint(min_monomials, max_monomials)))


def random_valuation(rng: random.Random, n: int, max_value: int = 4) -> Valuation:
    return Valuation([rng.randint(0, max_value) for _ in range(n)])


def dominating_polynomial(rng: random.Random, ps: Polynomial, cent: Fraction, n: int,
                          extra: int = 1, max_degree: int = 2) -> Polynomial:
    """A polynomial whose coefficients are at least cent times those of ``ps``, plus random extras."""
    out = []
    for m, k in ps.counts().items():
        out += [m] * math.ceil(cent * k)
    out += [random_monomial(rng, n, max_degree) for _ in range(rng.randint(0, extra))]
    return Polynomial(out)


__all__ = [
    "FLAGS", "CapExceeded", "GenConfig", "vertex_names", "canonical_key", "isomorphic",
    "enumerate_structures", "sample_structures", "random_structure", "planetary_structure",
    "random_cq", "random_ucq", "random_monomial", "random_polynomial", "random_valuation",
    "dominating_polynomial",
]
