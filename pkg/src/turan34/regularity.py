"""Regular vs singular 3-graphs.

A 3-graph ``G`` is regular when some orgraph on its vertex set, free of
induced directed 4-cycles and of induced "one arc plus an isolated vertex",
has its Fon-der-Flaass 3-graph contained in ``G``.  The search assigns one of
three states to every vertex pair and prunes as soon as a triple or a 4-set
has all its pairs decided.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .hypergraph import ThreeGraph, canonical_form, enumerate_graphs
from .orgraph import NON_EDGE, Orgraph, fdf_interpret, is_c4_free, is_p3bar_free, triple_clause

__all__ = [
    "REALIZATION_CAP",
    "Realization",
    "find_realization",
    "validate_realization",
    "Classification",
    "classify_all",
]

REALIZATION_CAP = 7

# pair states; pairs are stored low < high
INDEPENDENT, FORWARD, BACKWARD = 0, 1, 2


@dataclass(frozen=True)
class Realization:
    """Witness orgraph plus, for every triple, the FDF rule it triggers."""

    orgraph: Orgraph
    trace: dict = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, gamma: Orgraph) -> "Realization":
        trace = {
            t: triple_clause(gamma, *t) for t in itertools.combinations(range(1, gamma.n + 1), 3)
        }
        return cls(gamma, trace)


def validate_realization(g: ThreeGraph, gamma: Orgraph) -> list[str]:
    """Problems with ``gamma`` as a realization of ``g``; empty when valid."""
    problems = []
    if gamma.n != g.n:
        return [f"orgraph has {gamma.n} vertices, graph has {g.n}"]
    w = is_c4_free(gamma)
    if w is not None:
        problems.append(f"induced directed 4-cycle on {w}")
    w = is_p3bar_free(gamma)
    if w is not None:
        problems.append(f"induced single arc plus isolated vertex on {w}")
    extra = fdf_interpret(gamma).edges - g.edges
    if extra:
        problems.append(f"FDF edges missing from the graph: {sorted(extra)}")
    return problems


def _orgraph_from_states(n: int, pairs, states) -> Orgraph:
    arcs = []
    for (u, v), s in zip(pairs, states):
        if s == FORWARD:
            arcs.append((u + 1, v + 1))
        elif s == BACKWARD:
            arcs.append((v + 1, u + 1))
    return Orgraph(n, arcs)


def _triple_tables():
    """For triple states (s_ij, s_ik, s_jk): FDF non-edge?  and arc count."""
    non_edge = {}
    arcs = {}
    pairs = [(0, 1), (0, 2), (1, 2)]
    for code in itertools.product(range(3), repeat=3):
        gamma = _orgraph_from_states(3, pairs, code)
        non_edge[code] = triple_clause(gamma, 1, 2, 3) == NON_EDGE
        arcs[code] = len(gamma.arcs)
    return non_edge, arcs


def _c4_codes() -> frozenset:
    pairs = list(itertools.combinations(range(4), 2))
    out = set()
    for code in itertools.product(range(3), repeat=6):
        if sum(1 for s in code if s) != 4:
            continue
        if is_c4_free(_orgraph_from_states(4, pairs, code)) is not None:
            out.add(code)
    return frozenset(out)


_NON_EDGE, _ARCS = _triple_tables()
_C4 = _c4_codes()


class _Search:
    def __init__(self, g: ThreeGraph, symmetry_breaking: bool):
        n = g.n
        self.g = g
        self.n = n
        nonedge = [t for t in itertools.combinations(range(n), 3) if not g.has_edge(*(x + 1 for x in t))]
        weight = {p: 0 for p in itertools.combinations(range(n), 2)}
        for t in nonedge:
            for p in itertools.combinations(t, 2):
                weight[p] += 1
        # non-edges forbid isolated vertices and out-stars, so they prune first
        self.pairs = sorted(weight, key=lambda p: (-weight[p], p))
        pos = {p: i for i, p in enumerate(self.pairs)}
        nonedge_set = set(nonedge)
        self.triple_checks: list[list] = [[] for _ in self.pairs]
        for t in itertools.combinations(range(n), 3):
            ps = [pos[p] for p in itertools.combinations(t, 2)]
            self.triple_checks[max(ps)].append((ps, t in nonedge_set))
        self.quad_checks: list[list] = [[] for _ in self.pairs]
        for q in itertools.combinations(range(n), 4):
            ps = [pos[p] for p in itertools.combinations(q, 2)]
            self.quad_checks[max(ps)].append(ps)
        self.states = [0] * len(self.pairs)
        self.symmetry_breaking = symmetry_breaking
        self.nodes = 0

    def _ok(self, step: int) -> bool:
        st = self.states
        for ps, must_be_nonedge in self.triple_checks[step]:
            code = (st[ps[0]], st[ps[1]], st[ps[2]])
            if _ARCS[code] == 1:
                return False
            if must_be_nonedge and not _NON_EDGE[code]:
                return False
        for ps in self.quad_checks[step]:
            if tuple(st[p] for p in ps) in _C4:
                return False
        return True

    def run(self, step: int = 0) -> bool:
        if step == len(self.pairs):
            return True
        choices = (INDEPENDENT, FORWARD, BACKWARD)
        if step == 0 and self.symmetry_breaking:
            choices = (INDEPENDENT, FORWARD)
        for s in choices:
            self.nodes += 1
            self.states[step] = s
            if self._ok(step) and self.run(step + 1):
                return True
        self.states[step] = INDEPENDENT
        return False

    def orgraph(self) -> Orgraph:
        return _orgraph_from_states(self.n, self.pairs, self.states)


def find_realization(
    g: ThreeGraph, cap: int = REALIZATION_CAP, symmetry_breaking: bool = False
) -> Realization | None:
    """A realization of ``g`` or ``None`` when ``g`` is singular.

    ``symmetry_breaking`` forbids the backward state on the first pair.  It is
    off by default and unsound in general: reversing every arc swaps out-stars
    (FDF edges) with in-stars (FDF non-edges), so the reversed witness need not
    realize ``g`` and no search branch can be dropped on that ground.
    """
    if g.n > cap:
        raise ValueError(f"realization search is capped at {cap} vertices, got {g.n}")
    if g.n < 3:
        return Realization.of(Orgraph(g.n))
    search = _Search(g, symmetry_breaking)
    if not search.run():
        return None
    return Realization.of(search.orgraph())


@dataclass
class Classification:
    size: int
    entries: list = field(default_factory=list)  # (graph, key, realization | None)

    @property
    def regular(self) -> list[ThreeGraph]:
        return [g for g, _, r in self.entries if r is not None]

    @property
    def singular(self) -> list[ThreeGraph]:
        return [g for g, _, r in self.entries if r is None]

    def counts(self) -> dict[str, int]:
        return {"regular": len(self.regular), "singular": len(self.singular)}


def classify_all(
    size: int, forbidden: Iterable[ThreeGraph] = (), cap: int = 6, threads: int = 1
) -> Classification:
    """Label every forbidden-free class on ``size`` vertices regular or singular."""
    if size > cap:
        raise ValueError(f"classification is capped at {cap} vertices, got {size}")
    graphs = enumerate_graphs(size, list(forbidden))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            found = list(pool.map(find_realization, graphs))
    else:
        found = [find_realization(g) for g in graphs]
    out = Classification(size)
    for g, r in zip(graphs, found):
        out.entries.append((g, canonical_form(g).key, r))
    return out
