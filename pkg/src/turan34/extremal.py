"""Exact minimal edge counts of small induced-free 3-graphs.

The search deepens on the edge count.  When the family contains an empty
graph ``I_k`` every ``k``-set must carry an edge, so a node branches on the
first ``k``-set without one, adding one of its triples; isomorphic partial
graphs at the same depth are explored once.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructions import CATALOG, KostochkaSpec, kostochka_3graph
from .hypergraph import (
    FMT_VERSION,
    ThreeGraph,
    _canonical_code,
    _triples,
    canonical_form,
    contains_induced,
    triple_index,
)

__all__ = [
    "ExtremalResult",
    "ex_min",
    "density_table",
    "covering_lower_bound",
    "turan_upper_bound",
    "export_cnf",
    "family_name",
    "decode_cnf_model",
]


def family_name(forbidden: Sequence[ThreeGraph]) -> list[str]:
    names = []
    for f in forbidden:
        for name, g in CATALOG.items():
            if g.n == f.n and canonical_form(g).key == canonical_form(f).key:
                names.append(name)
                break
        else:
            names.append(f"3graph:{f.n}:{sorted(f.edges)}")
    return names


@dataclass
class ExtremalResult:
    n: int
    family: list
    minimum: int | None
    lower_bound: int
    upper_bound: int | None
    exact: bool
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def density(self) -> Fraction | None:
        if self.minimum is None:
            return None
        return Fraction(self.minimum, math.comb(self.n, 3))


def _empty_size(forbidden: Sequence[ThreeGraph]) -> int | None:
    sizes = [f.n for f in forbidden if f.num_edges == 0 and f.n >= 3]
    return min(sizes) if sizes else None


def covering_lower_bound(n: int, k: int = 4, known: dict | None = None) -> int:
    """Counting bound for graphs meeting every ``k``-set.

    Each edge survives in ``n - 3`` of the ``n`` vertex-deleted subgraphs, all
    of which need at least the minimum for ``n - 1`` vertices.
    """
    known = known or {}
    if n < k:
        return 0
    if n == k:
        return known.get(n, 1)
    prev = known.get(n - 1, covering_lower_bound(n - 1, k, known))
    return max(known.get(n, 0), -(-n * prev // (n - 3)))


def turan_upper_bound(n: int) -> ThreeGraph:
    """Turan's construction with class sizes differing by at most one."""
    sizes = [n // 3 + (1 if a < n % 3 else 0) for a in range(3)]
    spec = KostochkaSpec(tuple(tuple(range(1, s + 1)) for s in sizes))
    return kostochka_3graph(spec)


def _free(g: ThreeGraph, forbidden: Sequence[ThreeGraph]) -> bool:
    return all(f.n > g.n or contains_induced(g, f) is None for f in forbidden)


class _Search:
    def __init__(self, n, k, forbidden, budget, witness_cap):
        self.n, self.k = n, k
        self.others = [f for f in forbidden if not (f.num_edges == 0 and f.n == k)]
        self.budget = budget
        self.witness_cap = witness_cap
        self.nodes = 0
        self.ksets = []
        self.ntriples = math.comb(n, 3)
        # incidence of k-sets (rows) and triples (columns)
        self.inc = np.zeros((math.comb(n, k), self.ntriples), dtype=np.int32)
        for r, s in enumerate(itertools.combinations(range(n), k)):
            m = 0
            for a, b, c in itertools.combinations(s, 3):
                t = triple_index(a, b, c)
                m |= 1 << t
                self.inc[r, t] = 1
            self.ksets.append(m)

    def run(self, m: int, collect: bool) -> list[int]:
        self.found: dict[bytes, int] = {}
        self.seen: set[bytes] = set()
        self.collect = collect
        self.target = m
        self._dfs(0, 0)
        return list(self.found.values())

    def _dfs(self, mask: int, depth: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        open_rows = [r for r, s in enumerate(self.ksets) if not s & mask]
        if not open_rows:
            return self._leaf(mask, depth)
        left = self.target - depth
        if left <= 0:
            return False
        # the `left` best triples must cover every open k-set between them
        counts = self.inc[open_rows].sum(axis=0)
        cover = np.sort(counts)[::-1]
        if cover[:left].sum() < len(open_rows):
            return False
        if left > 1:
            code, _ = _canonical_code(ThreeGraph.from_mask(self.n, mask))
            if code in self.seen:
                return False
            self.seen.add(code)
        first = self.ksets[open_rows[0]]
        branch = sorted((t for t in range(self.ntriples) if first >> t & 1), key=lambda t: (-counts[t], t))
        done = False
        for t in branch:
            if self._dfs(mask | 1 << t, depth + 1):
                done = True
                if not self.collect:
                    return True
        return done

    def _leaf(self, mask: int, depth: int) -> bool:
        # pad a cover with extra edges up to the target size
        free_triples = [t for t in range(self.ntriples) if not mask >> t & 1]
        hit = False
        for extra in itertools.combinations(free_triples, self.target - depth):
            full = mask
            for t in extra:
                full |= 1 << t
            g = ThreeGraph.from_mask(self.n, full)
            if not _free(g, self.others):
                continue
            code, _ = _canonical_code(g)
            hit = True
            if len(self.found) < self.witness_cap:
                self.found.setdefault(code, code)
            if not self.collect:
                return True
        return hit


class _OutOfBudget(Exception):
    pass


def ex_min(
    n: int,
    forbidden: Sequence[ThreeGraph],
    all_witnesses: bool = False,
    budget: int = 2_000_000,
    witness_cap: int = 100,
    known: dict | None = None,
) -> ExtremalResult:
    """Minimal edge count of an ``n``-vertex 3-graph with no induced member of
    ``forbidden``, with witnesses (one, or up to ``witness_cap`` classes).

    On budget exhaustion the result is flagged inexact and carries the best
    bounds established.
    """
    forbidden = list(forbidden)
    names = family_name(forbidden)
    k = _empty_size(forbidden)
    empty = ThreeGraph(n)
    if k is None or n < k:
        if _free(empty, forbidden):
            return ExtremalResult(n, names, 0, 0, 0, True, [empty], {"nodes": 0, "levels": [0], "start": 0})
        if k is None:
            raise ValueError("search needs an edgeless member I_k in the family")
    known = dict(known or {})
    if n - 1 > k and n - 1 not in known:
        # the exact value one size down sharpens the counting bound a lot
        prev = ex_min(n - 1, forbidden, budget=budget, known=known)
        if prev.exact:
            known[n - 1] = prev.minimum
    lower = covering_lower_bound(n, k, known)
    upper = None
    if k == 4:
        t = turan_upper_bound(n)
        if _free(t, forbidden):
            upper = t.num_edges
    search = _Search(n, k, forbidden, budget, witness_cap)
    m = lower
    levels: list[int] = []
    try:
        while upper is None or m <= upper:
            levels.append(m)
            codes = search.run(m, all_witnesses)
            if codes:
                wit = [ThreeGraph.from_mask(n, c) for c in sorted(codes)]
                stats = {"nodes": search.nodes, "levels": levels, "start": lower}
                return ExtremalResult(n, names, m, m, m, True, wit, stats)
            m += 1
    except _OutOfBudget:
        stats = {"nodes": search.nodes, "levels": levels, "start": lower}
        return ExtremalResult(n, names, None, m, upper, False, [], stats)
    raise AssertionError("no graph found up to the construction's edge count")


def density_table(n_max: int, forbidden: Sequence[ThreeGraph], n_min: int = 3, budget: int = 2_000_000):
    """Rows ``(n, ExtremalResult, density or None)``; exact rows feed the
    counting bound of the next."""
    known: dict[int, int] = {}
    rows = []
    for n in range(n_min, n_max + 1):
        res = ex_min(n, forbidden, budget=budget, known=known)
        if res.exact:
            known[n] = res.minimum
        rows.append((n, res, res.density))
    return rows


def export_cnf(n: int, forbidden: Sequence[ThreeGraph], max_edges: int) -> str:
    """DIMACS CNF: at most ``max_edges`` edges, no induced forbidden graph.

    Variable ``t + 1`` is the triple with colex index ``t``.  The cardinality
    constraint uses a sequential counter.
    """
    from .hypergraph import labeled_codes

    nt = math.comb(n, 3)
    clauses: list[list[int]] = []
    for f in forbidden:
        if f.n > n:
            continue
        local = _triples(f.n)
        for sub in itertools.combinations(range(n), f.n):
            vars_ = [triple_index(sub[a], sub[b], sub[c]) + 1 for a, b, c in local]
            for code in labeled_codes(f).tolist():
                clauses.append([-v if code >> t & 1 else v for t, v in enumerate(vars_)])
    top = nt
    if max_edges == 0:
        clauses.extend([[-v] for v in range(1, nt + 1)])
    elif max_edges < nt:
        # s[i][j]: at least j+1 of the first i+1 variables are true
        k = max_edges
        s = [[top + i * k + j + 1 for j in range(k)] for i in range(nt)]
        top += nt * k
        x = list(range(1, nt + 1))
        clauses.append([-x[0], s[0][0]])
        for j in range(1, k):
            clauses.append([-s[0][j]])
        for i in range(1, nt):
            clauses.append([-x[i], s[i][0]])
            clauses.append([-s[i - 1][0], s[i][0]])
            for j in range(1, k):
                clauses.append([-x[i], -s[i - 1][j - 1], s[i][j]])
                clauses.append([-s[i - 1][j], s[i][j]])
            clauses.append([-x[i], -s[i - 1][k - 1]])
    lines = [
        f"c induced-free 3-graphs on {n} vertices with at most {max_edges} edges",
        f"c variable t+1 = triple with colex index t; {nt} triple variables",
        f"c FMT_VERSION {FMT_VERSION}",
        f"p cnf {top} {len(clauses)}",
    ]
    lines.extend(" ".join(map(str, c)) + " 0" for c in clauses)
    return "\n".join(lines) + "\n"


def decode_cnf_model(n: int, model: Sequence[int]) -> ThreeGraph:
    nt = math.comb(n, 3)
    mask = 0
    for lit in model:
        if 0 < lit <= nt:
            mask |= 1 << (lit - 1)
    return ThreeGraph.from_mask(n, mask)

