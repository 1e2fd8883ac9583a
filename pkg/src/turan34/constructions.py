"""Kostochka slices, Turan's example and the named forbidden 3-graphs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import ThreeGraph, _subset_codes, induced_density, labeled_codes
from .orgraph import Orgraph, fdf_interpret

__all__ = [
    "KostochkaSpec",
    "parse_heights",
    "balanced_spec",
    "kostochka_vertices",
    "kostochka_orgraph",
    "kostochka_3graph",
    "MissingReport",
    "verify_missing",
    "density_profile",
    "CATALOG",
    "ALIASES",
    "catalog",
    "I34",
    "G3",
    "H1",
    "H2",
    "H3",
    "H4",
    "H4_INTRO",
    "M2",
    "RHO",
    "scan_forbidden",
]

CLASS_NAMES = "abc"


@dataclass(frozen=True)
class KostochkaSpec:
    """Heights of the points of a finite slice of Z_3 x Q, one tuple per class.

    With ``strict`` (the default) a pair of points in different classes whose
    heights sum to zero is rejected; otherwise such a pair is left independent.
    """

    heights: tuple
    strict: bool = True

    def __post_init__(self):
        if len(self.heights) != 3:
            raise ValueError("need exactly three height classes")
        norm = []
        for a, hs in enumerate(self.heights):
            hs = tuple(sorted(Fraction(h) for h in hs))
            if any(h == 0 for h in hs):
                raise ValueError(f"class {CLASS_NAMES[a]} has a zero height")
            if len(set(hs)) != len(hs):
                raise ValueError(f"class {CLASS_NAMES[a]} repeats a height")
            norm.append(hs)
        if self.strict:
            for a in range(3):
                b = (a + 1) % 3
                for x in norm[a]:
                    if -x in norm[b]:
                        raise ValueError(
                            f"heights {x} in class {CLASS_NAMES[a]} and {-x} in class "
                            f"{CLASS_NAMES[b]} sum to zero (strict mode)"
                        )
        object.__setattr__(self, "heights", tuple(norm))

    @property
    def size(self) -> int:
        return sum(len(h) for h in self.heights)

    def scaled(self, factor) -> "KostochkaSpec":
        factor = Fraction(factor)
        return KostochkaSpec(tuple(tuple(h * factor for h in hs) for hs in self.heights), self.strict)

    def __str__(self) -> str:
        return ";".join(
            f"{CLASS_NAMES[a]}:" + ",".join(str(h) for h in hs) for a, hs in enumerate(self.heights)
        )


def parse_heights(text: str, strict: bool = True) -> KostochkaSpec:
    """Parse ``"a:1,2;b:1,2;c:-1/2,3"``; classes may also be named 0, 1, 2."""
    classes: list[list[Fraction]] = [[], [], []]
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        name, _, values = chunk.partition(":")
        name = name.strip().lower()
        if name in CLASS_NAMES:
            a = CLASS_NAMES.index(name)
        elif name in ("0", "1", "2"):
            a = int(name)
        else:
            raise ValueError(f"unknown class {name!r}; use a, b, c or 0, 1, 2")
        for v in filter(None, (v.strip() for v in values.split(","))):
            try:
                classes[a].append(Fraction(v))
            except ValueError:
                raise ValueError(f"bad height {v!r}") from None
    return KostochkaSpec(tuple(tuple(c) for c in classes), strict)


def balanced_spec(k: int, heights: Sequence | None = None) -> KostochkaSpec:
    """Same heights in every class, ``1..k`` by default (Turan's example)."""
    hs = tuple(heights) if heights is not None else tuple(range(1, k + 1))
    return KostochkaSpec((hs, hs, hs))


def kostochka_vertices(spec: KostochkaSpec) -> list[tuple[int, Fraction]]:
    """Points ``(class, height)`` in vertex order: class-major, height-ascending."""
    return [(a, x) for a in range(3) for x in spec.heights[a]]


def _arc(p, q) -> bool:
    (a, x), (b, y) = p, q
    s = x + y
    return (s < 0 and b == (a + 1) % 3) or (s > 0 and b == (a - 1) % 3)


def kostochka_orgraph(spec: KostochkaSpec) -> Orgraph:
    pts = kostochka_vertices(spec)
    arcs = [
        (i + 1, j + 1)
        for i, p in enumerate(pts)
        for j, q in enumerate(pts)
        if i != j and _arc(p, q)
    ]
    return Orgraph(len(pts), arcs)


def kostochka_3graph(spec: KostochkaSpec) -> ThreeGraph:
    return fdf_interpret(kostochka_orgraph(spec))


def density_profile(spec: KostochkaSpec) -> Fraction:
    """Edge density of the slice, exactly."""
    g = kostochka_3graph(spec)
    if g.n < 3:
        return Fraction(0)
    return induced_density(RHO, g)


# ---------------------------------------------------------------------------
# catalog

I34 = ThreeGraph(4)
RHO = ThreeGraph(3, [(1, 2, 3)])
G3 = ThreeGraph(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])
_K4 = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
H1 = ThreeGraph(5, _K4 + [(1, 2, 5), (3, 4, 5)])
H2 = ThreeGraph(5, _K4 + [(1, 3, 5), (1, 4, 5), (2, 3, 5), (2, 4, 5)])
H3 = ThreeGraph(5, _K4 + [(1, 2, 5), (1, 3, 5), (1, 4, 5), (2, 3, 5), (2, 4, 5)])
H4 = ThreeGraph(5, [(1, 2, 3), (1, 2, 4), (2, 3, 4), (1, 3, 5)])
H4_INTRO = ThreeGraph(5, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5)])
M2 = kostochka_3graph(balanced_spec(2))

CATALOG: dict[str, ThreeGraph] = {
    "I34": I34,
    "G3": G3,
    "H1": H1,
    "H2": H2,
    "H3": H3,
    "H4": H4,
    "M2": M2,
    "RHO": RHO,
}
# alternative labellings of catalog members
ALIASES: dict[str, ThreeGraph] = {"H4_INTRO": H4_INTRO}


def catalog(name: str) -> ThreeGraph:
    key = name.strip().upper()
    if key in CATALOG:
        return CATALOG[key]
    if key in ALIASES:
        return ALIASES[key]
    if key.startswith("K") and key[1:].isdigit():
        return ThreeGraph.complete(int(key[1:]))
    if key.startswith("I") and key[1:].isdigit():
        return ThreeGraph.empty(int(key[1:]))
    known = ", ".join(list(CATALOG) + list(ALIASES))
    raise KeyError(f"unknown graph {name!r}; known: {known}, Kn, In")


# ---------------------------------------------------------------------------
# the three graphs absent from every slice


@dataclass
class MissingReport:
    vertices: int
    subsets_scanned: int
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.witnesses.values())

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "subsets_scanned": self.subsets_scanned,
            "ok": self.ok,
            "witnesses": {k: [list(w) for w in v] for k, v in self.witnesses.items()},
        }


def scan_forbidden(
    host: ThreeGraph, patterns: dict[str, ThreeGraph], threads: int = 1
) -> tuple[int, dict[str, list[tuple[int, ...]]]]:
    """All subsets of ``host`` inducing one of ``patterns`` (same-size patterns)."""
    sizes = {p.n for p in patterns.values()}
    if len(sizes) != 1:
        raise ValueError("patterns must share a vertex count")
    k = sizes.pop()
    combos = np.array(list(itertools.combinations(range(host.n), k)), dtype=np.int64).reshape(-1, k)
    chunks = np.array_split(combos, max(1, threads)) if len(combos) else [combos]

    def work(chunk):
        return _subset_codes(host, k, chunk)[1]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            codes = np.concatenate(list(pool.map(work, chunks)))
    else:
        codes = work(combos)
    found = {}
    for name, pat in patterns.items():
        hit = np.flatnonzero(np.isin(codes, labeled_codes(pat)))
        found[name] = [tuple(int(v) + 1 for v in combos[i]) for i in hit]
    return len(combos), found


def verify_missing(
    spec: KostochkaSpec | ThreeGraph, budget: int = 24, threads: int = 1
) -> MissingReport:
    """Scan every 5-subset of the slice for induced H1, H2, H3."""
    host = spec if isinstance(spec, ThreeGraph) else kostochka_3graph(spec)
    if host.n > budget:
        raise ValueError(f"{host.n} vertices exceed the scan budget {budget}")
    if host.n < 5:
        return MissingReport(host.n, 0, {"H1": [], "H2": [], "H3": []})
    scanned, found = scan_forbidden(host, {"H1": H1, "H2": H2, "H3": H3}, threads)
    return MissingReport(host.n, scanned, found)


def specs_from_points(points: Iterable[tuple[int, Fraction]], strict: bool = True) -> KostochkaSpec:
    classes: list[list] = [[], [], []]
    for a, x in points:
        classes[a].append(x)
    return KostochkaSpec(tuple(tuple(c) for c in classes), strict)
