"""Three binary relations, two vertices, and what CQ-ization does to the count.

Run: python3 demos/golden_walkthrough.py
"""
from cqbag import apply, count_by_trips, count_homs, cqize, format_query, marsify, parse_query, parse_structure

psi = parse_query("E1(y1,z1) | E2(y2,z2) | E3(y3,z3)")
d = parse_structure("""sig E1/2, E2/2, E3/2
E1(a,b)
E1(b,a)
E2(a,b)
E2(b,a)
E3(a,b)
E3(b,a)
""")

print("union of three edges:", psi)
print("answers on d:", apply(psi, d))

cq = cqize(psi)
print("\nthe same union as one CQ, with one alien per disjunct:")
print(" ", format_query(cq))

m = marsify(d)
print("\nmarsified structure: d seen from mars, plus a foggy venus")
print(m)
print("CQ count on it:", count_homs(cq, m), "(one more than the union count)")

print("\ntrip by trip:")
for trip, cls, value in count_by_trips(psi, m).table:
    print(f"  {str(trip):40} {cls.tag:14} {value}")
