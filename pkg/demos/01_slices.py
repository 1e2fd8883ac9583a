"""Finite slices of the Kostochka construction.

Builds the two-height slice, checks it is the 6-vertex, 6-edge graph M2,
then walks the balanced slices toward the conjectured density 4/9 and scans
each one for the three forbidden 5-vertex patterns.
"""
from __future__ import annotations

from fractions import Fraction

from turan34 import (
    I34,
    M2,
    balanced_spec,
    contains_induced,
    density_profile,
    format_3graph,
    kostochka_3graph,
    kostochka_orgraph,
    verify_missing,
)

g = kostochka_3graph(balanced_spec(2))
print(format_3graph(g), end="")
print("equals M2:", g == M2)
print("orgraph arcs:", sorted(kostochka_orgraph(balanced_spec(2)).arcs))
print()

print("k  n   density     gap to 4/9  I34-free  H1/H2/H3 absent")
for k in range(1, 7):
    spec = balanced_spec(k)
    d = density_profile(spec)
    host = kostochka_3graph(spec)
    free = host.n < 4 or contains_induced(host, I34) is None
    missing = verify_missing(spec).ok
    print(f"{k}  {host.n:<3} {str(d):<11} {float(Fraction(4, 9) - d):.4f}      {free!s:<9} {missing}")
