"""Reading an orientation off a doubled embedding.

A Kostochka slice where every point has a nearby clone carries a doubled
embedding.  The engine derives an orgraph from which pair-triples are edges
and certifies that FDF of it reproduces the pattern.  On a host containing H1
it names the failing step and points at the induced copy instead.
"""
from __future__ import annotations

from fractions import Fraction

from turan34 import (
    H1,
    FailureWitness,
    all_doubled_hosts,
    certify_regularization,
    contains_induced,
    format_orgraph,
    kostochka_doubled,
)

d = kostochka_doubled([(0, Fraction(1)), (1, Fraction(2)), (2, Fraction(-3)), (0, Fraction(4))])
print("host:", d.host.n, "vertices,", d.host.num_edges, "edges; pairs", d.pairs)
res = certify_regularization(d)
print(format_orgraph(res.orgraph), end="")
print("rules used:", sorted(set(res.trace.values())))

for d in all_doubled_hosts(3):
    if contains_induced(d.host, H1) is None:
        continue
    res = certify_regularization(d)
    if isinstance(res, FailureWitness) and res.forbidden == "H1":
        print(f"\nfailure: claim={res.claim} indices={res.indices} -> induced {res.forbidden} on {res.subset}")
        break
