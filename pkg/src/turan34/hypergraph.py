"""Small 3-graphs: representation, canonical labelling, induced densities.

Vertices are labelled ``1..n``.  Internally every triple ``i < j < k`` has a
colexicographic index (0-based vertices) and an edge set is a Python int used
as a bitset over those indices, so edge queries inside enumeration loops are a
shift and a mask.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "VERTEX_CAP",
    "ENUMERATION_CAP",
    "FormatError",
    "ThreeGraph",
    "CanonicalForm",
    "triple_index",
    "canonical_form",
    "is_isomorphic",
    "induced_subgraph",
    "contains_induced",
    "count_induced",
    "induced_density",
    "subgraph_distribution",
    "free_of",
    "enumerate_graphs",
    "verify_chain_rule",
    "parse_3graph",
    "format_3graph",
]

VERTEX_CAP = 32
ENUMERATION_CAP = 7

# Graphs on more than 8 vertices: above this many partition-consistent
# relabelings the canonizer individualizes a vertex instead of scanning.
_SCAN_LIMIT = 720


class FormatError(ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def triple_index(i: int, j: int, k: int) -> int:
    """Colex index of the 0-based triple ``i < j < k``."""
    return k * (k - 1) * (k - 2) // 6 + j * (j - 1) // 2 + i


@lru_cache(maxsize=None)
def _triples(n: int) -> tuple[tuple[int, int, int], ...]:
    # 0-based triples listed in colex order, so position == triple_index
    out = []
    for k in range(n):
        for j in range(k):
            for i in range(j):
                out.append((i, j, k))
    return tuple(out)


@lru_cache(maxsize=None)
def _triple_array(n: int) -> np.ndarray:
    t = _triples(n)
    return np.array(t, dtype=np.int64).reshape(len(t), 3)


def _sorted3(a: int, b: int, c: int) -> tuple[int, int, int]:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    return a, b, c


@dataclass(frozen=True)
class ThreeGraph:
    """A 3-uniform hypergraph on vertices ``1..n``.

    ``edges`` holds increasing triples.  Instances are immutable and hashable.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    mask: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise TypeError("vertex count must be an integer")
        if n < 1 or n > VERTEX_CAP:
            raise ValueError(f"vertex count {n} outside 1..{VERTEX_CAP}")
        norm = set()
        mask = 0
        for e in self.edges:
            t = tuple(int(x) for x in e)
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"edge {e!r} is not a 3-element set")
            t = tuple(sorted(t))
            if t[0] < 1 or t[2] > n:
                raise ValueError(f"edge {t} has a vertex outside 1..{n}")
            if t in norm:
                raise ValueError(f"duplicate edge {t}")
            norm.add(t)
            mask |= 1 << triple_index(t[0] - 1, t[1] - 1, t[2] - 1)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "ThreeGraph":
        tri = _triples(n)
        if mask >> len(tri):
            raise ValueError("mask has bits beyond the triple range")
        edges = [
            (a + 1, b + 1, c + 1)
            for t, (a, b, c) in enumerate(tri)
            if mask >> t & 1
        ]
        return cls(n, edges)

    @classmethod
    def complete(cls, n: int) -> "ThreeGraph":
        return cls.from_mask(n, (1 << math.comb(n, 3)) - 1)

    @classmethod
    def empty(cls, n: int) -> "ThreeGraph":
        return cls(n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int, int]]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int, k: int) -> bool:
        a, b, c = _sorted3(i - 1, j - 1, k - 1)
        if a < 0 or c >= self.n or a == b or b == c:
            return False
        return bool(self.mask >> triple_index(a, b, c) & 1)

    def relabel(self, perm: Sequence[int]) -> "ThreeGraph":
        """Image under ``v -> perm[v-1]`` (a permutation of ``1..n``)."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError("not a permutation of the vertex set")
        return ThreeGraph(
            self.n, [(perm[a - 1], perm[b - 1], perm[c - 1]) for a, b, c in self.edges]
        )

    def complement(self) -> "ThreeGraph":
        full = (1 << math.comb(self.n, 3)) - 1
        return ThreeGraph.from_mask(self.n, full & ~self.mask)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        """Symmetric boolean ``n x n x n`` edge indicator (0-based)."""
        a = np.zeros((self.n,) * 3, dtype=bool)
        for i, j, k in self.edges:
            for p in itertools.permutations((i - 1, j - 1, k - 1)):
                a[p] = True
        return a

    def induced(self, vertices: Iterable[int]) -> "ThreeGraph":
        return induced_subgraph(self, vertices)


# ---------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True)
class CanonicalForm:
    """``key`` orders and identifies isomorphism classes; ``perm[v-1]`` is
    the canonical label of vertex ``v``."""

    key: bytes
    perm: tuple[int, ...]


def _key_bytes(n: int, code: int) -> bytes:
    width = (math.comb(n, 3) + 7) // 8
    return bytes([n]) + code.to_bytes(width, "big")


def _refine(n: int, inc: list[list[tuple[int, int]]], colors: list[int]) -> list[int]:
    """Iterated colour refinement; colours are ranks of invariant signatures."""
    count = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            pairs = sorted(
                (colors[x], colors[y]) if colors[x] <= colors[y] else (colors[y], colors[x])
                for x, y in inc[v]
            )
            sigs.append((colors[v], tuple(pairs)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == count:
            return colors
        count = len(ranks)


def _incidence(g: ThreeGraph) -> list[list[tuple[int, int]]]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for a, b, c in g.edges:
        a, b, c = a - 1, b - 1, c - 1
        inc[a].append((b, c))
        inc[b].append((a, c))
        inc[c].append((a, b))
    return inc


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of ``range(n)`` and the induced triple-index maps."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    if n < 3:
        return perms, np.zeros((len(perms), 0), dtype=np.int64)
    tri = _triple_array(n)
    img = np.sort(perms[:, tri], axis=2)
    i, j, k = img[..., 0], img[..., 1], img[..., 2]
    idx = k * (k - 1) * (k - 2) // 6 + j * (j - 1) // 2 + i
    return perms, idx


def _cells(colors: list[int]) -> list[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _canon_small(g: ThreeGraph, colors: list[int]) -> tuple[int, tuple[int, ...]]:
    n = g.n
    perms, idx = _perm_tables(n)
    lo = np.empty(n, dtype=np.int64)
    hi = np.empty(n, dtype=np.int64)
    start = 0
    for cell in _cells(colors):
        for v in cell:
            lo[v], hi[v] = start, start + len(cell)
        start += len(cell)
    ok = np.all((perms >= lo) & (perms < hi), axis=1)
    rows = np.flatnonzero(ok)
    edge_idx = [t for t in range(idx.shape[1]) if g.mask >> t & 1]
    if not edge_idx:
        best = int(rows[0])
        return 0, tuple(int(p) for p in perms[best])
    codes = (np.int64(1) << idx[np.ix_(rows, edge_idx)]).sum(axis=1)
    at = int(np.argmin(codes))
    return int(codes[at]), tuple(int(p) for p in perms[rows[at]])


def _twin_classes(g: ThreeGraph, cell: list[int], edge_set: set) -> list[list[int]]:
    # edge_set holds 0-based increasing triples
    classes: list[list[int]] = []
    for v in cell:
        for cls in classes:
            if _are_twins(g, cls[0], v, edge_set):
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


def _are_twins(g: ThreeGraph, u: int, v: int, edge_set: set) -> bool:
    # the transposition (u v) is an automorphism
    for e in edge_set:
        if (u in e) != (v in e):
            img = tuple(sorted(v if x == u else u if x == v else x for x in e))
            if img not in edge_set:
                return False
    return True


def _multiset_perms(items: list[int]):
    counts: dict[int, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    out: list[int] = []

    def rec():
        if len(out) == len(items):
            yield tuple(out)
            return
        for x in keys:
            if counts[x]:
                counts[x] -= 1
                out.append(x)
                yield from rec()
                out.pop()
                counts[x] += 1

    yield from rec()


def _canon_generic(g, inc, colors, edge_set) -> tuple[int, tuple[int, ...]]:
    n = g.n
    cells = _cells(colors)
    per_cell = [_twin_classes(g, cell, edge_set) for cell in cells]
    total = 1
    for classes in per_cell:
        sizes = [len(c) for c in classes]
        total *= math.factorial(sum(sizes)) // math.prod(math.factorial(s) for s in sizes)
    if total > _SCAN_LIMIT:
        # individualize each twin-class representative of the first
        # non-singleton cell; the choice of cell is labelling invariant
        at = next(i for i, c in enumerate(cells) if len(c) > 1)
        best = None
        for cls in per_cell[at]:
            v = cls[0]
            split = [2 * c + (1 if c == colors[v] and u != v else 0) for u, c in enumerate(colors)]
            cand = _canon_generic(g, inc, _refine(n, inc, split), edge_set)
            if best is None or cand[0] < best[0]:
                best = cand
        return best
    edges0 = list(edge_set)
    best_code, best_perm = None, None
    streams = [list(_multiset_perms([i for i, c in enumerate(cl) for _ in c])) for cl in per_cell]
    for choice in itertools.product(*streams):
        perm = [0] * n
        start = 0
        for classes, seq in zip(per_cell, choice):
            cursors = [0] * len(classes)
            for pos, ci in enumerate(seq):
                perm[classes[ci][cursors[ci]]] = start + pos
                cursors[ci] += 1
            start += len(seq)
        code = 0
        for a, b, c in edges0:
            x, y, z = _sorted3(perm[a], perm[b], perm[c])
            code |= 1 << triple_index(x, y, z)
        if best_code is None or code < best_code:
            best_code, best_perm = code, tuple(perm)
    return best_code, best_perm


def _canonical_code(g: ThreeGraph) -> tuple[int, tuple[int, ...]]:
    inc = _incidence(g)
    colors = _refine(g.n, inc, [0] * g.n)
    if g.n <= 8:
        return _canon_small(g, colors)
    return _canon_generic(g, inc, colors, {(a - 1, b - 1, c - 1) for a, b, c in g.edges})


def canonical_form(g: ThreeGraph) -> CanonicalForm:
    """Relabelling-invariant key plus the permutation onto the representative.

    The key is the least edge bitset over all relabelings that respect the
    ordered colour-refinement partition, so it is a complete invariant.
    """
    code, perm = _canonical_code(g)
    return CanonicalForm(_key_bytes(g.n, code), tuple(p + 1 for p in perm))


def canonical_graph(g: ThreeGraph) -> ThreeGraph:
    code, _ = _canonical_code(g)
    return ThreeGraph.from_mask(g.n, code)


def is_isomorphic(g: ThreeGraph, h: ThreeGraph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if g.mask == h.mask:
        return True
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g).key == canonical_form(h).key


# ---------------------------------------------------------------------------
# induced substructures


def _check_vertices(g: ThreeGraph, vertices: Iterable[int]) -> list[int]:
    vs = sorted(int(v) for v in vertices)
    if len(set(vs)) != len(vs):
        raise ValueError("repeated vertex in subset")
    if vs and (vs[0] < 1 or vs[-1] > g.n):
        raise ValueError(f"subset has vertices outside 1..{g.n}")
    return vs


def induced_subgraph(g: ThreeGraph, vertices: Iterable[int]) -> ThreeGraph:
    """``g`` restricted to ``vertices``, relabelled ``1..k`` order-preservingly."""
    vs = _check_vertices(g, vertices)
    if not vs:
        raise ValueError("empty vertex subset")
    pos = {v: i + 1 for i, v in enumerate(vs)}
    edges = [(pos[a], pos[b], pos[c]) for a, b, c in g.edges if a in pos and b in pos and c in pos]
    return ThreeGraph(len(vs), edges)


def _subset_codes(g: ThreeGraph, k: int, combos: np.ndarray | None = None):
    """Induced-subgraph bitsets of all ``k``-subsets (lexicographic order)."""
    if combos is None:
        combos = np.array(list(itertools.combinations(range(g.n), k)), dtype=np.int64)
        combos = combos.reshape(-1, k)
    codes = np.zeros(len(combos), dtype=np.int64)
    if k >= 3 and len(combos):
        adj = g.adjacency()
        for t, (a, b, c) in enumerate(_triples(k)):
            hit = adj[combos[:, a], combos[:, b], combos[:, c]]
            codes |= hit.astype(np.int64) << t
    return combos, codes


@lru_cache(maxsize=4096)
def _labeled_codes_cached(n: int, mask: int) -> np.ndarray:
    if n < 3:
        return np.array([0], dtype=np.int64)
    _, idx = _perm_tables(n)
    edge_idx = [t for t in range(idx.shape[1]) if mask >> t & 1]
    if not edge_idx:
        return np.array([0], dtype=np.int64)
    return np.unique((np.int64(1) << idx[:, edge_idx]).sum(axis=1))


def labeled_codes(h: ThreeGraph) -> np.ndarray:
    """Sorted bitsets of every relabelling of ``h`` (``h.n <= 8``)."""
    if h.n > 8:
        raise ValueError("labelled-copy tables are limited to 8 vertices")
    return _labeled_codes_cached(h.n, h.mask)


def _size_check(h: ThreeGraph, g: ThreeGraph) -> None:
    if h.n > g.n:
        raise ValueError(f"pattern has {h.n} vertices but host has only {g.n}")


def _hits(h: ThreeGraph, g: ThreeGraph) -> tuple[np.ndarray, np.ndarray]:
    combos, codes = _subset_codes(g, h.n)
    return combos, np.isin(codes, labeled_codes(h))


def contains_induced(g: ThreeGraph, h: ThreeGraph) -> tuple[int, ...] | None:
    """First (lexicographic) vertex subset of ``g`` inducing a copy of ``h``."""
    _size_check(h, g)
    if h.n > 8:
        for sub in itertools.combinations(range(1, g.n + 1), h.n):
            if is_isomorphic(induced_subgraph(g, sub), h):
                return sub
        return None
    combos, hit = _hits(h, g)
    where = np.flatnonzero(hit)
    if not len(where):
        return None
    return tuple(int(v) + 1 for v in combos[where[0]])


def count_induced(h: ThreeGraph, g: ThreeGraph) -> int:
    _size_check(h, g)
    if h.n > 8:
        return sum(
            is_isomorphic(induced_subgraph(g, s), h)
            for s in itertools.combinations(range(1, g.n + 1), h.n)
        )
    return int(_hits(h, g)[1].sum())


def induced_density(h: ThreeGraph, g: ThreeGraph) -> Fraction:
    """Exact fraction of ``|V(h)|``-subsets of ``g`` that induce ``h``."""
    return Fraction(count_induced(h, g), math.comb(g.n, h.n))


def subgraph_distribution(g: ThreeGraph, size: int) -> dict[bytes, tuple[ThreeGraph, Fraction]]:
    """Induced ``size``-vertex subgraph classes of ``g`` with their densities.

    Classes of density zero are omitted.
    """
    if not 1 <= size <= g.n:
        raise ValueError(f"subgraph size {size} outside 1..{g.n}")
    if size > 8:
        raise ValueError("distribution is limited to subgraphs on 8 vertices")
    _, codes = _subset_codes(g, size)
    values, counts = np.unique(codes, return_counts=True)
    total = math.comb(g.n, size)
    out: dict[bytes, list] = {}
    for code, cnt in zip(values.tolist(), counts.tolist()):
        cf = canonical_form(ThreeGraph.from_mask(size, code))
        if cf.key in out:
            out[cf.key][1] += cnt
        else:
            out[cf.key] = [ThreeGraph.from_mask(size, int.from_bytes(cf.key[1:], "big")), cnt]
    return {k: (rep, Fraction(c, total)) for k, (rep, c) in sorted(out.items())}


def free_of(n: int, masks: np.ndarray, forbidden: Sequence[ThreeGraph]) -> np.ndarray:
    """Vectorized test: which edge bitsets on ``n <= 8`` vertices have no
    induced copy of any ``forbidden`` graph."""
    if n > 8:
        raise ValueError("bitset filtering is limited to 8 vertices")
    masks = np.asarray(masks, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    for f in forbidden:
        k = f.n
        if k > n:
            continue
        table = labeled_codes(f)
        for sub in itertools.combinations(range(n), k):
            code = np.zeros(len(masks), dtype=np.int64)
            for t, (a, b, c) in enumerate(_triples(k)):
                code |= ((masks >> triple_index(sub[a], sub[b], sub[c])) & 1) << t
            ok &= ~np.isin(code, table)
    return ok


# ---------------------------------------------------------------------------
# enumeration


def _forbidden_free_links(parent: ThreeGraph, forbidden: Sequence[ThreeGraph]) -> np.ndarray:
    """Link bitsets for a new top vertex that keep ``parent`` forbidden-free."""
    m = parent.n
    npairs = m * (m - 1) // 2
    links = np.arange(1 << npairs, dtype=np.int64)
    ok = np.ones(len(links), dtype=bool)
    base = math.comb(m, 3)
    for f in forbidden:
        k = f.n
        if k > m + 1:
            continue
        table = labeled_codes(f)
        for rest in itertools.combinations(range(m), k - 1):
            verts = rest + (m,)
            code = np.zeros(len(links), dtype=np.int64)
            for t, (a, b, c) in enumerate(_triples(k)):
                va, vb, vc = verts[a], verts[b], verts[c]
                if vc == m:
                    pair = vb * (vb - 1) // 2 + va
                    bit = (links >> pair) & 1
                else:
                    bit = np.int64(parent.mask >> triple_index(va, vb, vc) & 1)
                code |= bit << t
            ok &= ~np.isin(code, table)
        if not ok.any():
            break
    return links[ok] << base


@lru_cache(maxsize=64)
def _enumerate_cached(size: int, forbidden: tuple[ThreeGraph, ...]) -> tuple[ThreeGraph, ...]:
    level = {canonical_form(ThreeGraph(1)).key: ThreeGraph(1)}
    level = {k: g for k, g in level.items() if not any(f.n == 1 for f in forbidden)}
    for m in range(1, size):
        nxt: dict[bytes, ThreeGraph] = {}
        for parent in level.values():
            for ext in _forbidden_free_links(parent, forbidden).tolist():
                g = ThreeGraph.from_mask(m + 1, parent.mask | ext)
                code, _ = _canonical_code(g)
                key = _key_bytes(m + 1, code)
                if key not in nxt:
                    nxt[key] = g if g.mask == code else ThreeGraph.from_mask(m + 1, code)
        level = nxt
    return tuple(level[k] for k in sorted(level))


def enumerate_graphs(
    size: int, forbidden: Iterable[ThreeGraph] = (), cap: int = ENUMERATION_CAP
) -> list[ThreeGraph]:
    """One canonical representative per isomorphism class on ``size``
    vertices with no induced copy of any ``forbidden`` graph, sorted by key."""
    if size < 1:
        raise ValueError("size must be positive")
    if size > cap:
        raise ValueError(f"enumeration size {size} exceeds cap {cap}")
    forb = tuple(sorted({canonical_graph(f) for f in forbidden}, key=lambda f: (f.n, f.mask)))
    return list(_enumerate_cached(size, forb))


def verify_chain_rule(h: ThreeGraph, g_hat: ThreeGraph, size: int) -> bool:
    """Check ``p(h, g_hat) == sum_G p(h, G) p(G, g_hat)`` over ``size``-vertex
    classes ``G``, exactly."""
    if not h.n <= size <= g_hat.n:
        raise ValueError("need |V(h)| <= size <= |V(g_hat)|")
    lhs = induced_density(h, g_hat)
    rhs = sum(
        (induced_density(h, rep) * p for rep, p in subgraph_distribution(g_hat, size).values()),
        Fraction(0),
    )
    return lhs == rhs


# ---------------------------------------------------------------------------
# text format

FMT_VERSION = 1


def format_3graph(g: ThreeGraph, header: bool = True) -> str:
    lines = [f"3graph {g.n} {g.num_edges}"]
    if header:
        lines.append(f"# FMT_VERSION {FMT_VERSION}")
    lines.extend(f"{a} {b} {c}" for a, b, c in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield no, raw


def _ints(raw: str, no: int, count: int) -> list[int]:
    out = []
    col = 0
    tokens = raw.split()
    for tok in tokens:
        col = raw.index(tok, col) + 1
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(f"expected an integer, got {tok!r}", no, col) from None
        col += len(tok) - 1
    if len(out) != count:
        raise FormatError(f"expected {count} integers, got {len(out)}", no, 1)
    return out


def parse_header(text: str, magic: str) -> tuple[int, int, list[tuple[int, str]]]:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError(f"empty input, expected '{magic} <n> <m>'", 1, 1)
    no, raw = lines[0]
    parts = raw.split()
    if parts[0] != magic:
        raise FormatError(f"expected header '{magic} <n> <m>'", no, raw.index(parts[0]) + 1)
    n, m = _ints(raw.replace(magic, " " * len(magic), 1), no, 2)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else no)
        raise FormatError(f"header declares {m} lines, found {len(body)}", where, 1)
    return n, m, body


def parse_3graph(text: str) -> ThreeGraph:
    """Parse the ``3graph`` text format, rejecting duplicates and bad labels."""
    n, _, body = parse_header(text, "3graph")
    if not 1 <= n <= VERTEX_CAP:
        raise FormatError(f"vertex count {n} outside 1..{VERTEX_CAP}", _content_line_no(text), 8)
    seen = set()
    edges = []
    for no, raw in body:
        i, j, k = _ints(raw, no, 3)
        if not 1 <= i < j < k <= n:
            raise FormatError(f"edge must satisfy 1 <= i < j < k <= {n}", no, 1)
        if (i, j, k) in seen:
            raise FormatError(f"duplicate edge {i} {j} {k}", no, 1)
        seen.add((i, j, k))
        edges.append((i, j, k))
    return ThreeGraph(n, edges)


def _content_line_no(text: str) -> int:
    return next(_content_lines(text))[0]
