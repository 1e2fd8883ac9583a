"""Orientations read off doubled embeddings.

A doubled embedding places ``ell`` disjoint vertex pairs ``(a_i, b_i)`` in a
host 3-graph so that every choice of representatives induces the same pattern
graph on ``[ell]``, and for ``i != j`` the triples ``a_i b_i a_j`` and
``a_i b_i b_j`` agree.  The orientation has an arc ``i -> j`` exactly when both
of those triples are non-edges.  In a host without induced I34, H1, H2, H3
the orientation realizes the pattern; otherwise a forbidden subgraph explains
the failure.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .constructions import H1, H2, H3, I34, KostochkaSpec, kostochka_3graph, kostochka_vertices
from .hypergraph import ThreeGraph, contains_induced, free_of, induced_subgraph, is_isomorphic
from .orgraph import ISOLATED, OUT_DEGREE_2, Orgraph, is_c4_free, is_p3bar_free, triple_clause
from .regularity import Realization

__all__ = [
    "DoubledEmbedding",
    "DoubledReport",
    "AntiparallelError",
    "BudgetExhausted",
    "FailureWitness",
    "check_doubled",
    "derive_orientation",
    "certify_regularization",
    "find_doubled_embedding",
    "all_doubled_hosts",
    "kostochka_doubled",
    "FORBIDDEN",
]

FORBIDDEN = {"I34": I34, "H1": H1, "H2": H2, "H3": H3}


class AntiparallelError(ValueError):
    """Both ``i -> j`` and ``j -> i`` were derived; ``subset`` spans no edge."""

    def __init__(self, i: int, j: int, subset: tuple[int, ...]):
        self.i, self.j, self.subset = i, j, subset
        super().__init__(f"antiparallel arcs between {i} and {j}; host vertices {subset} span no edge")


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class DoubledEmbedding:
    """``pairs[i-1] = (a_i, b_i)``, host vertices, all distinct."""

    host: ThreeGraph
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        flat = [v for p in pairs for v in p]
        if not pairs:
            raise ValueError("need at least one pair")
        if len(set(flat)) != len(flat):
            raise ValueError("pair vertices must be pairwise distinct")
        if min(flat) < 1 or max(flat) > self.host.n:
            raise ValueError(f"pair vertices must lie in 1..{self.host.n}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def ell(self) -> int:
        return len(self.pairs)

    @property
    def pattern(self) -> ThreeGraph:
        """Graph on ``[ell]`` read off the first representatives."""
        a = [p[0] for p in self.pairs]
        edges = [
            (i + 1, j + 1, k + 1)
            for i, j, k in itertools.combinations(range(self.ell), 3)
            if self.host.has_edge(a[i], a[j], a[k])
        ]
        return ThreeGraph(self.ell, edges)

    def vertices(self, indices: Sequence[int] | None = None) -> tuple[int, ...]:
        idx = range(1, self.ell + 1) if indices is None else indices
        return tuple(sorted(v for i in idx for v in self.pairs[i - 1]))

    def swapped(self, i: int) -> "DoubledEmbedding":
        pairs = list(self.pairs)
        a, b = pairs[i - 1]
        pairs[i - 1] = (b, a)
        return DoubledEmbedding(self.host, tuple(pairs))


@dataclass
class DoubledReport:
    homogeneity: list = field(default_factory=list)  # (i, j)
    consistency: list = field(default_factory=list)  # (i, j, k, (c_i, c_j, c_k))

    @property
    def ok(self) -> bool:
        return not self.homogeneity and not self.consistency


def check_doubled(d: DoubledEmbedding) -> DoubledReport:
    """Every homogeneity and pattern-consistency violation of ``d``."""
    host, pairs = d.host, d.pairs
    report = DoubledReport()
    for i, j in itertools.permutations(range(1, d.ell + 1), 2):
        (ai, bi), (aj, bj) = pairs[i - 1], pairs[j - 1]
        if host.has_edge(ai, bi, aj) != host.has_edge(ai, bi, bj):
            report.homogeneity.append((i, j))
    pattern = d.pattern
    for i, j, k in itertools.combinations(range(1, d.ell + 1), 3):
        want = pattern.has_edge(i, j, k)
        for choice in itertools.product(pairs[i - 1], pairs[j - 1], pairs[k - 1]):
            if host.has_edge(*choice) != want:
                report.consistency.append((i, j, k, choice))
    return report


def _arcs(d: DoubledEmbedding) -> list[tuple[int, int]]:
    host, pairs = d.host, d.pairs
    out = []
    for i, j in itertools.permutations(range(1, d.ell + 1), 2):
        (ai, bi), (aj, bj) = pairs[i - 1], pairs[j - 1]
        if not host.has_edge(ai, bi, aj) and not host.has_edge(ai, bi, bj):
            out.append((i, j))
    return out


def derive_orientation(d: DoubledEmbedding) -> Orgraph:
    """Arc ``i -> j`` iff ``a_i b_i a_j`` and ``a_i b_i b_j`` are both non-edges."""
    arcs = _arcs(d)
    present = set(arcs)
    for i, j in arcs:
        if i < j and (j, i) in present:
            raise AntiparallelError(i, j, d.vertices((i, j)))
    return Orgraph(d.ell, arcs)


@dataclass(frozen=True)
class FailureWitness:
    """Why the derived orientation does not realize the pattern.

    ``claim`` names the failed step, ``indices`` the offending pattern
    vertices, and ``forbidden``/``subset`` an induced copy of I34, H1, H2 or
    H3 among the host vertices of the embedding (``None`` if none exists,
    which would contradict the theorem this engine checks).
    """

    claim: str
    indices: tuple
    forbidden: str | None
    subset: tuple | None

    def revalidate(self, host: ThreeGraph) -> bool:
        if self.forbidden is None or self.subset is None:
            return False
        return is_isomorphic(induced_subgraph(host, self.subset), FORBIDDEN[self.forbidden])


def _locate_forbidden(d: DoubledEmbedding, indices: Sequence[int]) -> tuple[str | None, tuple | None]:
    # offending pairs first, then every host vertex of the embedding;
    # 4-subsets (I34) before 5-subsets
    for verts in (d.vertices(indices), d.vertices()):
        sub = induced_subgraph(d.host, verts)
        for name in ("I34", "H1", "H2", "H3"):
            pat = FORBIDDEN[name]
            if pat.n > sub.n:
                continue
            hit = contains_induced(sub, pat)
            if hit is not None:
                return name, tuple(verts[v - 1] for v in hit)
    return None, None


def _failure(d: DoubledEmbedding, claim: str, indices: tuple) -> FailureWitness:
    name, subset = _locate_forbidden(d, indices)
    return FailureWitness(claim, indices, name, subset)


def certify_regularization(d: DoubledEmbedding) -> Realization | FailureWitness:
    """Derive the orientation and check that it realizes the pattern.

    Checks, in order: orientedness, FDF containment in the pattern, no
    induced single-arc-plus-isolated-vertex, no induced directed 4-cycle.
    """
    report = check_doubled(d)
    if not report.ok:
        raise ValueError(f"not a doubled embedding: {report}")
    try:
        gamma = derive_orientation(d)
    except AntiparallelError as exc:
        return _failure(d, "orientedness", (exc.i, exc.j))
    pattern = d.pattern
    for t in itertools.combinations(range(1, d.ell + 1), 3):
        if pattern.has_edge(*t):
            continue
        clause = triple_clause(gamma, *t)
        if clause == OUT_DEGREE_2:
            return _failure(d, "out-star", t)
        if clause == ISOLATED:
            return _failure(d, "independent-pairs", t)
    tri = is_p3bar_free(gamma)
    if tri is not None:
        return _failure(d, "arc-with-independent", tri)
    quad = is_c4_free(gamma)
    if quad is not None:
        return _failure(d, "four-cycle", quad)
    return Realization.of(gamma)


def _pair_ok(host: ThreeGraph, chosen: list[tuple[int, int]], new: tuple[int, int]) -> bool:
    a, b = new
    for c, e in chosen:
        if host.has_edge(c, e, a) != host.has_edge(c, e, b):
            return False
        if host.has_edge(a, b, c) != host.has_edge(a, b, e):
            return False
    for (c1, e1), (c2, e2) in itertools.combinations(chosen, 2):
        want = host.has_edge(c1, c2, a)
        for x, y, z in itertools.product((c1, e1), (c2, e2), (a, b)):
            if host.has_edge(x, y, z) != want:
                return False
    return True


def find_doubled_embedding(
    host: ThreeGraph, ell: int, budget: int = 10**8, seed: int | None = None
) -> DoubledEmbedding | None:
    """Brute-force search for a doubled embedding with ``ell`` pairs.

    Pairs are searched as an unordered set of unordered pairs, which loses
    nothing since validity is invariant under both reorderings.  Returns
    ``None`` only after the whole space was covered; raises
    :class:`BudgetExhausted` when ``budget`` candidate checks ran out first.
    ``seed`` shuffles the vertex order, changing which witness is found.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if 2 * ell > host.n:
        raise ValueError(f"{ell} pairs need {2 * ell} vertices, host has {host.n}")
    order = list(range(1, host.n + 1))
    if seed is not None:
        random.Random(seed).shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    candidates = [(a, b) for a, b in itertools.combinations(order, 2)]
    spent = 0
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def rec(start: int) -> bool:
        nonlocal spent
        if len(chosen) == ell:
            return True
        for idx in range(start, len(candidates)):
            a, b = candidates[idx]
            if a in used or b in used:
                continue
            if chosen and rank[a] < rank[chosen[-1][0]]:
                continue
            spent += 1
            if spent > budget:
                raise BudgetExhausted(f"budget of {budget} candidate checks exhausted")
            if _pair_ok(host, chosen, (a, b)):
                chosen.append((a, b))
                used.update((a, b))
                if rec(idx + 1):
                    return True
                chosen.pop()
                used.difference_update((a, b))
        return False

    if rec(0):
        return DoubledEmbedding(host, tuple(chosen))
    return None


def all_doubled_hosts(
    ell: int, forbidden: Sequence[ThreeGraph] | None = None
) -> Iterator[DoubledEmbedding]:
    """Every host on ``2*ell`` vertices carrying the doubled embedding
    ``(1,2), (3,4), ...``: all free choices of the pattern and of the
    ``a_i b_i c_j`` triples, ``2**(C(ell,3) + ell*(ell-1))`` hosts in all.

    With ``forbidden`` (needs ``2*ell <= 8``) only hosts free of those
    induced subgraphs are produced.
    """
    n = 2 * ell
    pairs = tuple((2 * i + 1, 2 * i + 2) for i in range(ell))
    parts = []
    for i, j, k in itertools.combinations(range(ell), 3):
        parts.append(list(itertools.product(pairs[i], pairs[j], pairs[k])))
    for i, j in itertools.permutations(range(ell), 2):
        parts.append([pairs[i] + (c,) for c in pairs[j]])
    part_masks = [ThreeGraph(n, p).mask for p in parts]
    count = 1 << len(parts)
    if forbidden is not None:
        bits = (np.arange(count, dtype=np.int64)[:, None] >> np.arange(len(parts))) & 1
        masks = bits @ np.array(part_masks, dtype=np.int64)
        keep = np.flatnonzero(free_of(n, masks, forbidden))
        for m in masks[keep].tolist():
            yield DoubledEmbedding(ThreeGraph.from_mask(n, m), pairs)
        return
    for b in range(count):
        mask = 0
        for t, pm in enumerate(part_masks):
            if b >> t & 1:
                mask |= pm
        yield DoubledEmbedding(ThreeGraph.from_mask(n, mask), pairs)


def kostochka_doubled(points: Sequence[tuple[int, Fraction]]) -> DoubledEmbedding:
    """Slice containing each point and a clone at a slightly larger height.

    The shift stays below a quarter of every nonzero cross-class sum and half
    of every in-class gap, so clones see exactly the arcs of their originals.
    """
    pts = [(a, Fraction(x)) for a, x in points]
    gaps = [abs(x + y) for (a, x), (b, y) in itertools.combinations(pts, 2) if a != b]
    gaps += [abs(x - y) for (a, x), (b, y) in itertools.combinations(pts, 2) if a == b]
    gaps += [abs(x) for _, x in pts]
    eps = min(g for g in gaps if g) / 5
    classes: list[list[Fraction]] = [[], [], []]
    for a, x in pts:
        classes[a] += [x, x + eps]
    spec = KostochkaSpec(tuple(tuple(c) for c in classes))
    index = {p: i + 1 for i, p in enumerate(kostochka_vertices(spec))}
    pairs = tuple((index[(a, x)], index[(a, x + eps)]) for a, x in pts)
    return DoubledEmbedding(kostochka_3graph(spec), pairs)
