"""Polynomials with unit-coefficient monomials, valuations, and their query/structure encodings.

Scaling is expressed by repetition: a polynomial is a sequence of monomials, and
the coefficient of M is the number of times M occurs in it.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .bageval import seen
from .relcore import Atom, CQ, ParseError, QueryError, Signature, SignatureError, Structure, UCQ, Var


def x_rel(n: int) -> str:
    return f"X{n}"


_X_REL = re.compile(r"X([1-9][0-9]*)")


@dataclass(frozen=True, order=True)
class Monomial:
    """Sorted multiset of variable indices; the empty multiset is the constant 1."""
    indices: tuple[int, ...] = ()

    def __init__(self, indices: Iterable[int] = ()):
        idx = tuple(sorted(indices))
        if any(not isinstance(i, int) or i < 1 for i in idx):
            raise ValueError(f"variable indices must be positive integers: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "*".join(f"x{i}" for i in self.indices) if self.indices else "1"


ONE = Monomial()


@dataclass(frozen=True)
class Polynomial:
    monomials: tuple[Monomial, ...] = ()

    def __init__(self, monomials: Iterable[Monomial] = ()):
        object.__setattr__(self, "monomials", tuple(monomials))

    def support(self) -> list[Monomial]:
        """Distinct monomials in order of first occurrence."""
        return list(dict.fromkeys(self.monomials))

    def counts(self) -> Counter:
        return Counter(self.monomials)

    def max_index(self) -> int:
        return max((i for m in self.monomials for i in m.indices), default=0)

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.monomials + other.monomials)

    def __mul__(self, k: int) -> Polynomial:
        """Repeat every monomial k times (scaling by a natural number)."""
        return Polynomial(m for m in self.monomials for _ in range(k))

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.monomials)

    def __str__(self) -> str:
        return " + ".join(map(str, self.monomials)) if self.monomials else "0"


@dataclass(frozen=True)
class Valuation:
    """Values of x1..xn; total over the declared n."""
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int] | Mapping[int, int], n: int | None = None):
        if isinstance(values, Mapping):
            top = n if n is not None else max(values, default=0)
            if any(k < 1 or k > top for k in values):
                raise ValueError("valuation index out of range")
            vals = tuple(values.get(i, 0) for i in range(1, top + 1))
        else:
            vals = tuple(values)
            if n is not None and n != len(vals):
                raise ValueError(f"expected {n} values, got {len(vals)}")
        if any(not isinstance(v, int) or v < 0 for v in vals):
            raise ValueError("valuations take natural-number values")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"x{i} is outside the valuation's {self.n} variables")
        return self.values[i - 1]

    def __str__(self) -> str:
        return ", ".join(f"x{i}={v}" for i, v in enumerate(self.values, 1))


def coef(m: Monomial, p: Polynomial) -> int:
    return sum(1 for q in p.monomials if q == m)


def eval_mono(m: Monomial, v: Valuation) -> int:
    return math.prod(v[i] for i in m.indices)


def eval_poly(p: Polynomial, v: Valuation) -> int:
    return sum(eval_mono(m, v) for m in p.monomials)


# ---------------------------------------------------------------------------
# text formats

_MONO_FACTOR = re.compile(r"\s*x([1-9][0-9]*)\s*")
_VAL_ITEM = re.compile(r"\s*x([1-9][0-9]*)\s*=\s*([0-9]+)\s*")


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    idx = []
    for part in text.split("*"):
        m = _MONO_FACTOR.fullmatch(part)
        if not m:
            raise ParseError(f"bad monomial factor {part.strip()!r}")
        idx.append(int(m.group(1)))
    return Monomial(idx)


def parse_polynomial(text: str) -> Polynomial:
    text = text.strip()
    if text in ("", "0"):
        return Polynomial()
    return Polynomial(parse_monomial(t) for t in text.split("+"))


def parse_valuation(text: str, n: int | None = None) -> Valuation:
    vals: dict[int, int] = {}
    for item in filter(str.strip, text.split(",")):
        m = _VAL_ITEM.fullmatch(item)
        if not m:
            raise ParseError(f"bad valuation entry {item.strip()!r}")
        i = int(m.group(1))
        if i in vals:
            raise ParseError(f"x{i} assigned twice")
        vals[i] = int(m.group(2))
    return Valuation(vals, n)


# ---------------------------------------------------------------------------
# queries and structures


def mono_to_cq(m: Monomial, prefix: str = "_m") -> CQ:
    """One atom X_n(_) per occurrence of n, each on its own fresh variable."""
    return CQ(Atom(x_rel(i), (Var(f"{prefix}{k}"),)) for k, i in enumerate(m.indices, 1))


def poly_to_ucq(p: Polynomial) -> UCQ:
    if not p.monomials:
        raise QueryError("the empty polynomial has no UCQ encoding")
    return UCQ(mono_to_cq(m, f"_m{j}_") for j, m in enumerate(p.monomials, 1))


def unary_signature(n: int) -> Signature:
    return Signature({x_rel(i): 1 for i in range(1, n + 1)})


def structure_of_valuation(v: Valuation) -> Structure:
    """Disjoint witnesses: vertex ``w{n}_{k}`` satisfies exactly X_n, for k < v[n]."""
    facts = [(x_rel(i), (f"w{i}_{k}",)) for i in range(1, v.n + 1) for k in range(1, v[i] + 1)]
    return Structure(unary_signature(v.n), facts)


def _unary_indices(sig: Signature) -> list[int]:
    out = []
    for name, arity in sig.relations:
        m = _X_REL.fullmatch(name)
        if not m or arity != 1:
            raise SignatureError(f"relation {name}/{arity} is not one of the unary X_n")
        out.append(int(m.group(1)))
    return out


def valuation_of_structure(d: Structure, n: int | None = None) -> Valuation:
    """x_n is the number of vertices satisfying X_n; absent relations count 0."""
    idx = _unary_indices(d.signature)
    top = n if n is not None else max(idx, default=0)
    return Valuation({i: len(d.tuples.get(x_rel(i), ())) for i in range(1, top + 1)}, top)


def local_valuation(p: str, d: Structure, n: int | None = None) -> Valuation:
    """The valuation read off the part of ``d`` visible from planet p."""
    return valuation_of_structure(seen(p, d), n)


# ---------------------------------------------------------------------------
# coefficient padding


def choose_cent(c: Fraction) -> Fraction:
    """Smallest-denominator rational in [sqrt(c), c); ties broken by the smaller value."""
    c = Fraction(c)
    if not 1 < c:
        raise ValueError("need c > 1")
    for q in range(1, 10**9):
        p = math.isqrt(c.numerator * q * q // c.denominator)
        while Fraction(p * p, q * q) < c:
            p += 1
        if Fraction(p, q) < c:
            return Fraction(p, q)
    raise AssertionError  # pragma: no cover


def min_padding(ps0: Polynomial, pb0: Polynomial, c: Fraction, cent: Fraction) -> int:
    """Least u >= 0 with cent/c <= (coef_b + u)/(coef_s + u) for every monomial of ps0."""
    u = 0
    for m in ps0.support():
        s0, b0 = coef(m, ps0), coef(m, pb0)
        need = (cent * s0 - c * b0) / (c - cent)
        u = max(u, math.ceil(need))
    return u


def padding_ratio_holds(ps0: Polynomial, pb0: Polynomial, c: Fraction, cent: Fraction, u: int) -> bool:
    return all(cent / c <= Fraction(coef(m, pb0) + u, coef(m, ps0) + u) for m in ps0.support())


class Padded(NamedTuple):
    ps: Polynomial
    pb: Polynomial
    u: int


def _drop_one(p: Polynomial, m: Monomial) -> Polynomial:
    out = list(p.monomials)
    out.remove(m)
    return Polynomial(out)


def pad_polynomials(ps0: Polynomial, pb0: Polynomial, c: Fraction, cent: Fraction) -> Padded:
    """Rewrite (ps0, pb0) so coefficients of the b-side dominate cent-fold, keeping the order.

    Output satisfies cent * coef(M, ps) <= coef(M, pb) for all M, and for every
    valuation: ps0 <= pb0 iff c * (1 + ps) <= 1 + pb.
    """
    c, cent = Fraction(c), Fraction(cent)
    if not (1 < cent < c <= 2 and cent * cent >= c):
        raise ValueError(f"need 1 < cent < c <= 2 and cent^2 >= c; got c={c}, cent={cent}")
    if not ps0.monomials or not pb0.monomials:
        raise ValueError("pad_polynomials needs nonempty polynomials")
    # a shared constant term keeps the order and guarantees a degree-0 monomial for the final -1
    ps0 = ps0 + Polynomial([ONE])
    pb0 = pb0 + Polynomial([ONE])
    u = min_padding(ps0, pb0, c, cent)
    pad = Polynomial(m for m in ps0.support() for _ in range(u))
    ps1, pb1 = ps0 + pad, pb0 + pad
    ps2, pb2 = c.denominator * ps1, c.numerator * pb1
    ps, pb = _drop_one(ps2, ONE), _drop_one(pb2, ONE)
    assert all(cent * coef(m, ps) <= coef(m, pb) for m in ps.support())
    return Padded(ps, pb, u)


__all__ = [
    "Monomial", "Polynomial", "Valuation", "ONE", "coef", "eval_mono", "eval_poly",
    "parse_monomial", "parse_polynomial", "parse_valuation", "mono_to_cq", "poly_to_ucq",
    "x_rel", "unary_signature", "structure_of_valuation", "valuation_of_structure",
    "local_valuation", "choose_cent", "min_padding", "padding_ratio_holds", "Padded",
    "pad_polynomials",
]
