"""Exact minimal edge counts for I34-free 3-graphs.

Every 4 vertices must span an edge.  The search finds the minimum and every
extremal class; at six vertices the only one is M2.
"""
from __future__ import annotations

from turan34 import I34, M2, density_table, ex_min, is_isomorphic

for n, res, dens in density_table(8, [I34], n_min=4):
    print(f"n={n}  ex_min={res.minimum:<3} density={dens}  nodes={res.stats['nodes']}")

six = ex_min(6, [I34], all_witnesses=True)
print("\nextremal classes on 6 vertices:", len(six.witnesses))
print("isomorphic to M2:", is_isomorphic(six.witnesses[0], M2))

seven = ex_min(7, [I34], all_witnesses=True)
print("extremal classes on 7 vertices:", len(seven.witnesses))
for w in seven.witnesses:
    print("  degrees", sorted(w.degrees()))

# a tight budget gives bounds instead of an answer
res = ex_min(10, [I34], budget=500)
print(f"\nn=10 with a small budget: exact={res.exact} bounds=[{res.lower_bound}, {res.upper_bound}]")
