"""Run every registered identity once, then hunt for a containment counterexample.

Run: python3 demos/harness_tour.py
"""
from cqbag import ReductionInstance, Signature, Structure, apply, format_structure, parse_query
from cqbag.lab import REGISTRY, GenConfig, check_lemma, search_counterexample

cfg = GenConfig(Signature({"E": 2, "A": 1}), max_vertices=4, samples=40, seed=2024)
print("cfg:", cfg.describe())
for name, (what, _) in REGISTRY.items():
    rep = check_lemma(name, cfg)
    print(f"  {rep.summary():60} {what}")

# two disjuncts against their conjunction
qs = parse_query("A(x) | E(y,y)")
qb = parse_query("A(x) & E(y,y)")
sig = Signature({"E": 2, "A": 1})
hit = search_counterexample(ReductionInstance(qs, qb), GenConfig(sig, max_vertices=2))
print(f"\n{qs}  vs  {qb}")
print("first counterexample found:", hit)
print(format_structure(hit.structure))

# even a single vertex carrying every fact loses: each disjunct contributes 1, the conjunction only 1
well = Structure(sig, [("A", ("v",)), ("E", ("v", "v"))])
print("single vertex with all facts:", apply(qs, well), "vs", apply(qb, well))
