"""Oriented graphs and the Fon-der-Flaass interpretation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .hypergraph import FMT_VERSION, FormatError, ThreeGraph, _ints, parse_header

__all__ = [
    "Orgraph",
    "triple_clause",
    "fdf_interpret",
    "is_c4_free",
    "is_p3bar_free",
    "parse_orgraph",
    "format_orgraph",
]

ISOLATED = "isolated"
OUT_DEGREE_2 = "out-degree-2"
NON_EDGE = "non-edge"


@dataclass(frozen=True)
class Orgraph:
    """Directed graph on ``1..n`` without loops, repeated or antiparallel arcs."""

    n: int
    arcs: frozenset = field(default_factory=frozenset)
    _out: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("an orgraph needs at least one vertex")
        seen = set()
        out = [0] * (self.n + 1)
        for arc in self.arcs:
            u, v = (int(x) for x in arc)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc {u}->{v} leaves the vertex range 1..{self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc {u}->{v}")
            if (v, u) in seen:
                raise ValueError(f"antiparallel arcs between {u} and {v}")
            seen.add((u, v))
            out[u] |= 1 << v
        object.__setattr__(self, "arcs", frozenset(seen))
        object.__setattr__(self, "_out", tuple(out))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def is_independent(self, u: int, v: int) -> bool:
        return is_independent(self, u, v)

    def induced(self, vertices: Iterable[int]) -> "Orgraph":
        vs = sorted(vertices)
        pos = {v: i + 1 for i, v in enumerate(vs)}
        return Orgraph(len(vs), [(pos[u], pos[v]) for u, v in self.arcs if u in pos and v in pos])

    def relabel(self, perm) -> "Orgraph":
        return Orgraph(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.arcs])

    def reverse(self) -> "Orgraph":
        return Orgraph(self.n, [(v, u) for u, v in self.arcs])


def is_independent(g: Orgraph, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("independence is defined for distinct vertices")
    if not (1 <= u <= g.n and 1 <= v <= g.n):
        raise ValueError("vertex out of range")
    return not g.has_arc(u, v) and not g.has_arc(v, u)


def triple_clause(g: Orgraph, u: int, v: int, w: int) -> str:
    """Which rule makes ``{u, v, w}`` an edge of FDF(g), or ``"non-edge"``.

    Degrees are counted inside the triple only.
    """
    verts = (u, v, w)
    outd = [sum(g.has_arc(x, y) for y in verts if y != x) for x in verts]
    ind = [sum(g.has_arc(y, x) for y in verts if y != x) for x in verts]
    if any(o == 0 and i == 0 for o, i in zip(outd, ind)):
        return ISOLATED
    if 2 in outd:
        return OUT_DEGREE_2
    return NON_EDGE


def fdf_interpret(g: Orgraph) -> ThreeGraph:
    """The Fon-der-Flaass 3-graph of ``g`` on the same vertex set."""
    edges = [
        t for t in itertools.combinations(range(1, g.n + 1), 3) if triple_clause(g, *t) != NON_EDGE
    ]
    return ThreeGraph(g.n, edges)


def is_c4_free(g: Orgraph) -> tuple[int, ...] | None:
    """``None`` if no 4 vertices induce a directed 4-cycle, else such a set."""
    for quad in itertools.combinations(range(1, g.n + 1), 4):
        arcs = [(u, v) for u in quad for v in quad if u != v and g.has_arc(u, v)]
        if len(arcs) != 4:
            continue
        # four arcs with in = out = 1 everywhere, and no 2-cycles exist
        if all(sum(a[0] == x for a in arcs) == 1 and sum(a[1] == x for a in arcs) == 1 for x in quad):
            return quad
    return None


def is_p3bar_free(g: Orgraph) -> tuple[int, ...] | None:
    """``None`` if no 3 vertices carry exactly one arc, else such a set."""
    for tri in itertools.combinations(range(1, g.n + 1), 3):
        if sum(g.has_arc(u, v) for u in tri for v in tri if u != v) == 1:
            return tri
    return None


def format_orgraph(g: Orgraph, header: bool = True) -> str:
    lines = [f"orgraph {g.n} {len(g.arcs)}"]
    if header:
        lines.append(f"# FMT_VERSION {FMT_VERSION}")
    lines.extend(f"{u} {v}" for u, v in sorted(g.arcs))
    return "\n".join(lines) + "\n"


def parse_orgraph(text: str) -> Orgraph:
    n, _, body = parse_header(text, "orgraph")
    if n < 1:
        raise FormatError("vertex count must be positive", body[0][0] - 1 if body else 1, 1)
    seen: set[tuple[int, int]] = set()
    for no, raw in body:
        u, v = _ints(raw, no, 2)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"arc endpoint outside 1..{n}", no, 1)
        if u == v:
            raise FormatError(f"loop at vertex {u}", no, 1)
        if (u, v) in seen:
            raise FormatError(f"duplicate arc {u} {v}", no, 1)
        if (v, u) in seen:
            raise FormatError(f"antiparallel arc {u} {v}", no, 1)
        seen.add((u, v))
    return Orgraph(n, seen)
