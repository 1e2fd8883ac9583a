"""A lower bound on the edge density of I34-free 3-graphs, checked exactly.

The all-zero certificate proves the minimum edge density over the admissible
graphs of size ell.  With cvxpy installed the SDP is solved in floating point
and the solution is rounded to rationals before an exact re-verification, so
nothing from the solver is trusted.
"""
from __future__ import annotations

import importlib.util
from fractions import Fraction

from turan34 import I34, export_sdp, parse_sdpa, round_solution, verify_certificate, zero_certificate

for ell in (4, 5):
    v = verify_certificate(zero_certificate([I34], ell))
    print(f"zero certificate, ell={ell}: {v.bound}")

if importlib.util.find_spec("cvxpy") is None:
    print("cvxpy not installed; pip install 'turan34[solvers]' for the SDP step")
    raise SystemExit(0)

from turan34.external import solve_sdpa  # noqa: E402

prob, manifest = export_sdp([I34], 5)
print(f"\nSDP: {prob.m} constraints, blocks {prob.blocks}")
objective, mats = solve_sdpa(parse_sdpa(prob.to_text()))
print(f"solver objective {objective:.7f}")
for den in (100, 10_000):
    cert = round_solution(mats[:-1], den, manifest, bound=Fraction(0))
    v = verify_certificate(cert)
    print(f"rounded to 1/{den}: accepted={v.accepted} bound={float(v.bound):.7f}")
print("target 4/9 =", f"{4 / 9:.7f}")
