"""Adapter that hands an SDPA problem to cvxpy (optional ``solvers`` extra).

The core never imports this module; it exists so the export, solve, round,
verify loop can be run end to end without a separate SDP binary.
"""
from __future__ import annotations

import numpy as np

from .flags import SdpaProblem


def solve_sdpa(problem: SdpaProblem, solver: str | None = None) -> tuple[float, list[np.ndarray]]:
    """Maximize ``F0 . Y`` subject to ``Fi . Y = c_i`` and ``Y`` PSD blockwise."""
    import cvxpy as cp

    ys = []
    for b in problem.blocks:
        if b > 0:
            ys.append(cp.Variable((b, b), PSD=True))
        else:
            ys.append(cp.Variable(-b, nonneg=True))
    exprs = [0] * (problem.m + 1)
    for mat, blk, i, j, v in problem.entries:
        y = ys[blk - 1]
        v = float(v)
        if problem.blocks[blk - 1] < 0:
            term = v * y[i - 1]
        elif i == j:
            term = v * y[i - 1, j - 1]
        else:
            term = 2 * v * y[i - 1, j - 1]
        exprs[mat] = exprs[mat] + term
    cons = [exprs[i] == float(problem.c[i - 1]) for i in range(1, problem.m + 1)]
    prob = cp.Problem(cp.Maximize(exprs[0]), cons)
    prob.solve(solver=solver or ("CLARABEL" if "CLARABEL" in cp.installed_solvers() else "SCS"))
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"solver status {prob.status}")
    mats = []
    for b, y in zip(problem.blocks, ys):
        val = np.asarray(y.value, dtype=float)
        mats.append(np.diag(val) if b < 0 else (val + val.T) / 2)
    return float(prob.value), mats


def write_solution(objective: float, mats: list[np.ndarray], m: int) -> str:
    """CSDP-style solution text; only the primal matrix (matno 2) is filled."""
    lines = [" ".join(["0"] * m) if m else "0"]
    for blk, a in enumerate(mats, 1):
        d = a.shape[0]
        for i in range(d):
            for j in range(i, d):
                if a[i, j] != 0:
                    lines.append(f"2 {blk} {i + 1} {j + 1} {float(a[i, j])!r}")
    return "\n".join(lines) + "\n"
