"""From a pair of polynomials to query containment instances.

A valuation where the first polynomial wins becomes a structure where the
first query wins, with the counts predicted by the polynomials.

Run: python3 demos/polynomial_reductions.py
"""
from fractions import Fraction

from cqbag import (
    Valuation, apply, build_thm2, build_thm3, eval_poly, marsify, parse_polynomial,
    structure_of_valuation,
)

ps0 = parse_polynomial("x1*x1 + x2")
pb0 = parse_polynomial("x1 + x2*x2")
v = Valuation([2, 0])
print(f"ps0 = {ps0}, pb0 = {pb0}, valuation {v}: {eval_poly(ps0, v)} vs {eval_poly(pb0, v)}")
m = marsify(structure_of_valuation(v))

inst = build_thm2(ps0, pb0)
print("\nunscaled instance (non-trivial structures only):")
print(f"  s-query has {len(inst.qs)} disjuncts; counts {apply(inst.qs, m)} vs {apply(inst.qb, m)}")

for eps in (Fraction(1), Fraction(1, 2)):
    inst = build_thm3(ps0, pb0, eps)
    p = inst.params
    lhs, rhs = apply(inst.qs, m), apply(inst.qb, m)
    print(f"\nscaled instance, c = {p['c']}, cent = {p['cent']}, padding u = {p['u']}")
    print(f"  padded sizes: {len(p['ps'])} and {len(p['pb'])} monomials")
    print(f"  counts: {p['c']} * {lhs} = {p['c'] * lhs} vs {rhs} -> violated: {p['c'] * lhs > rhs}")
