"""Flags, moment matrices and exact verification of SDP lower bounds.

Conventions
-----------
A type of size ``k`` is a 3-graph on labels ``1..k`` (``k = 0`` is the empty
type).  A flag of size ``s`` over it is a 3-graph on ``1..s`` whose first ``k``
vertices carry the labels and induce the type.  Two flags are the same when a
permutation of the unlabeled vertices maps one onto the other.

For a host ``G`` the moment matrix entry ``(a, b)`` is the probability that a
uniformly random injective map ``theta`` of the labels into ``G``, followed by
a uniformly random ordered pair of disjoint ``(s-k)``-sets ``A, B`` avoiding
its image, has ``G[theta, A] = F_a`` and ``G[theta, B] = F_b``.  Maps that do
not induce the type contribute zero.  Averaging this over the ``l``-vertex
subgraphs of a larger host is exact, which is what makes the certificate
check sound for the limit density.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .constructions import RHO, catalog
from .hypergraph import (
    FMT_VERSION,
    ThreeGraph,
    _triples,
    enumerate_graphs,
    format_3graph,
    free_of,
    induced_density,
    parse_3graph,
    triple_index,
)

__all__ = [
    "FLAG_SIZE_CAP",
    "FlagType",
    "Flag",
    "FlagCertificate",
    "CertificateError",
    "Verification",
    "flag_size",
    "default_types",
    "enumerate_flags",
    "moment_matrix",
    "moment_counts",
    "slack",
    "ldl_psd",
    "psd_project",
    "verify_certificate",
    "zero_certificate",
    "SdpaProblem",
    "export_sdp",
    "parse_sdpa",
    "read_solution",
    "round_solution",
    "family_from_names",
]

FLAG_SIZE_CAP = 5
ELL_CAP = 6


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class FlagType:
    """Fully labeled type ``sigma`` on labels ``1..k`` stored as an edge bitset."""

    k: int
    mask: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("type size must be nonnegative")
        if self.k < 3 and self.mask:
            raise ValueError("types on fewer than 3 labels have no edges")

    @classmethod
    def of(cls, sigma: ThreeGraph | None) -> "FlagType":
        return cls(0) if sigma is None else cls(sigma.n, sigma.mask)

    @property
    def sigma(self) -> ThreeGraph | None:
        return ThreeGraph.from_mask(self.k, self.mask) if self.k else None

    def text(self) -> str:
        return "" if self.k == 0 else format_3graph(self.sigma, header=False)

    @classmethod
    def from_text(cls, text: str, labels: int) -> "FlagType":
        if labels == 0:
            return cls(0)
        g = parse_3graph(text)
        if g.n != labels:
            raise CertificateError(f"type has {g.n} vertices but {labels} labels")
        return cls.of(g)


@dataclass(frozen=True)
class Flag:
    graph: ThreeGraph
    type: FlagType

    def __post_init__(self):
        k = self.type.k
        if self.graph.n < k:
            raise ValueError("flag smaller than its type")
        if k >= 3 and _restrict_mask(self.graph, k) != self.type.mask:
            raise ValueError("labeled vertices do not induce the type")

    @property
    def size(self) -> int:
        return self.graph.n


def _restrict_mask(g: ThreeGraph, k: int) -> int:
    # colex indices of triples inside 1..k are exactly 0..C(k,3)-1
    return g.mask & ((1 << math.comb(k, 3)) - 1)


def flag_size(ell: int, k: int) -> int:
    """Largest ``s`` with two ``s``-flags over a ``k``-type fitting in ``ell`` vertices."""
    return (ell + k) // 2


def default_types(ell: int, forbidden: Sequence[ThreeGraph] = ()) -> list[FlagType]:
    """Empty and 1-vertex types, plus the 3-vertex ones when ``ell >= 5``."""
    if not 3 <= ell <= ELL_CAP:
        raise ValueError(f"evaluation size {ell} outside 3..{ELL_CAP}")
    out = [FlagType(0), FlagType(1)]
    if ell >= 5:
        out += [FlagType.of(g) for g in enumerate_graphs(3, list(forbidden))]
    return out


@lru_cache(maxsize=None)
def _unlabeled_perms(s: int, k: int) -> np.ndarray:
    """For each permutation of positions ``k..s-1``: where each triple goes."""
    trip = _triples(s)
    if not trip:
        return np.zeros((1, 0), dtype=np.int64)
    rows = []
    for tail in itertools.permutations(range(k, s)):
        p = list(range(k)) + list(tail)
        rows.append([triple_index(*sorted((p[a], p[b], p[c]))) for a, b, c in trip])
    return np.array(rows, dtype=np.int64).reshape(-1, len(trip))


def _images(s: int, k: int, code: int) -> list[int]:
    table = _unlabeled_perms(s, k)
    if table.shape[1] == 0:
        return [0]
    bits = np.array([code >> t & 1 for t in range(table.shape[1])], dtype=np.int64)
    return np.unique((bits[None, :] << table).sum(axis=1)).tolist()


@lru_cache(maxsize=256)
def _enumerate_flags_cached(t: FlagType, size: int, forbidden: tuple) -> tuple[Flag, ...]:
    k = t.k
    base = math.comb(k, 3)
    free = math.comb(size, 3) - base
    masks = np.array([t.mask | (x << base) for x in range(1 << free)], dtype=np.int64)
    if size >= 3 and forbidden:
        masks = masks[free_of(size, masks, list(forbidden))]
    seen = set()
    out = []
    for code in masks.tolist():
        if code in seen:
            continue
        imgs = _images(size, k, code)
        seen.update(imgs)
        rep = min(imgs)
        out.append(rep)
    return tuple(Flag(ThreeGraph.from_mask(size, c), t) for c in sorted(out))


def enumerate_flags(t: FlagType, size: int, forbidden: Sequence[ThreeGraph] = ()) -> list[Flag]:
    """One representative per flag class over ``t``, free of ``forbidden``."""
    if size > FLAG_SIZE_CAP:
        raise ValueError(f"flag size {size} exceeds the cap {FLAG_SIZE_CAP}")
    if size < max(t.k, 1):
        raise ValueError("flag size below the type size")
    return list(_enumerate_flags_cached(t, size, tuple(forbidden)))


def _lookup(flags: Sequence[Flag]) -> tuple[int, int, dict[int, int]]:
    if not flags:
        raise ValueError("empty flag list")
    t = flags[0].type
    s = flags[0].size
    table: dict[int, int] = {}
    for i, f in enumerate(flags):
        if f.type != t or f.size != s:
            raise CertificateError("flags of one block must share type and size")
        for c in _images(s, t.k, f.graph.mask):
            if c in table:
                raise CertificateError(f"flags {table[c] + 1} and {i + 1} are isomorphic")
            table[c] = i
    return t.k, s, table


def _code(mask: int, vs: Sequence[int], trip) -> int:
    out = 0
    for t, (a, b, c) in enumerate(trip):
        if mask >> triple_index(*sorted((vs[a], vs[b], vs[c]))) & 1:
            out |= 1 << t
    return out


def moment_counts(t: FlagType, flags: Sequence[Flag], g: ThreeGraph) -> tuple[np.ndarray, int]:
    """Integer pair counts and the number of (theta, A, B) choices."""
    k, s, table = _lookup(flags)
    if flags[0].type != t:
        raise CertificateError("flag list does not match the type")
    m = s - k
    n = g.n
    if 2 * s - k > n:
        raise ValueError(f"two {s}-flags over a {k}-type need {2 * s - k} vertices, host has {n}")
    d = len(flags)
    counts = np.zeros((d, d), dtype=np.int64)
    total = math.perm(n, k) * math.comb(n - k, m) * math.comb(n - k - m, m)
    trip_k, trip_s = _triples(k) if k >= 3 else (), _triples(s)
    for theta in itertools.permutations(range(n), k):
        if k >= 3 and _code(g.mask, theta, trip_k) != t.mask:
            continue
        rest = [v for v in range(n) if v not in theta]
        ext = []
        for a in itertools.combinations(rest, m):
            ext.append((frozenset(a), table.get(_code(g.mask, theta + a, trip_s))))
        for (sa, ia), (sb, ib) in itertools.permutations(ext, 2):
            if ia is not None and ib is not None and not sa & sb:
                counts[ia, ib] += 1
    return counts, total


def moment_matrix(t: FlagType, flags: Sequence[Flag], g: ThreeGraph) -> list[list[Fraction]]:
    counts, total = moment_counts(t, flags, g)
    return [[Fraction(int(x), total) for x in row] for row in counts.tolist()]


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class FlagCertificate:
    family: tuple  # names or 3graph texts
    ell: int
    types: tuple  # FlagType per block
    flags: tuple  # tuple of Flag tuples per block
    matrices: tuple  # tuple of Fraction matrices (tuples of tuples)
    bound: Fraction

    def __post_init__(self):
        if not (len(self.types) == len(self.flags) == len(self.matrices)):
            raise CertificateError("types, flags and matrices differ in number")
        for i, (t, fl, q) in enumerate(zip(self.types, self.flags, self.matrices)):
            d = len(fl)
            if len(q) != d or any(len(row) != d for row in q):
                raise CertificateError(f"Q_{i + 1} is not {d}x{d}")
            for f in fl:
                if f.type != t:
                    raise CertificateError(f"a flag of block {i + 1} has the wrong type")
                if 2 * f.size - t.k > self.ell:
                    raise CertificateError(f"flags of block {i + 1} are too large for l={self.ell}")

    def forbidden(self) -> list[ThreeGraph]:
        return family_from_names(self.family)

    def to_json(self) -> str:
        blocks = []
        for t, fl, q in zip(self.types, self.flags, self.matrices):
            blocks.append(
                {
                    "labels": t.k,
                    "sigma": t.text(),
                    "flag_size": fl[0].size if fl else None,
                    "flags": [format_3graph(f.graph, header=False) for f in fl],
                    "matrix": [[_frac_str(x) for x in row] for row in q],
                }
            )
        doc = {
            "fmt_version": FMT_VERSION,
            "family": list(self.family),
            "ell": self.ell,
            "types": blocks,
            "bound": _frac_str(self.bound),
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "FlagCertificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if doc.get("fmt_version") != FMT_VERSION:
            raise CertificateError(f"unsupported fmt_version {doc.get('fmt_version')!r}")
        types, flags, mats = [], [], []
        for b in doc["types"]:
            t = FlagType.from_text(b["sigma"], int(b["labels"]))
            types.append(t)
            flags.append(tuple(Flag(parse_3graph(f), t) for f in b["flags"]))
            mats.append(tuple(tuple(Fraction(x) for x in row) for row in b["matrix"]))
        return cls(
            tuple(doc["family"]), int(doc["ell"]), tuple(types), tuple(flags), tuple(mats),
            Fraction(doc["bound"]),
        )


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def family_from_names(names: Sequence[str]) -> list[ThreeGraph]:
    out = []
    for name in names:
        out.append(parse_3graph(name) if name.lstrip().startswith("3graph") else catalog(name))
    return out


def _family_label(g: ThreeGraph) -> str:
    from .extremal import family_name

    name = family_name([g])[0]
    return format_3graph(g) if name.startswith("3graph:") else name


def zero_certificate(forbidden: Sequence[ThreeGraph], ell: int, types=None) -> FlagCertificate:
    types = default_types(ell, forbidden) if types is None else list(types)
    flags = tuple(tuple(enumerate_flags(t, flag_size(ell, t.k), forbidden)) for t in types)
    mats = tuple(tuple(tuple(Fraction(0) for _ in fl) for _ in fl) for fl in flags)
    fam = tuple(_family_label(g) for g in forbidden)
    return FlagCertificate(fam, ell, tuple(types), flags, mats, Fraction(0))


# ---------------------------------------------------------------------------
# exact PSD test


def ldl_psd(q: Sequence[Sequence[Fraction]]) -> tuple[bool, str]:
    """Exact symmetric PSD test by LDL^T with largest-diagonal pivoting."""
    a = [[Fraction(x) for x in row] for row in q]
    n = len(a)
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                return False, f"not symmetric at ({j + 1},{i + 1})"
    live = list(range(n))
    while live:
        p = max(live, key=lambda i: (a[i][i], -i))
        d = a[p][p]
        if d < 0:
            return False, f"negative pivot {d} at row {p + 1}"
        if d == 0:
            for i in live:
                for j in live:
                    if a[i][j] != 0:
                        return False, f"zero pivot with nonzero entry at ({i + 1},{j + 1})"
            return True, "ok"
        live.remove(p)
        for i in live:
            f = a[i][p] / d
            if f:
                for j in live:
                    a[i][j] -= f * a[p][j]
    return True, "ok"


def psd_project(q: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Rebuild ``L D L^T`` from the positive pivots only; the Schur
    complement left once no positive diagonal remains is dropped."""
    a = [[Fraction(x) for x in row] for row in q]
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    live = list(range(n))
    while live:
        p = max(live, key=lambda i: (a[i][i], -i))
        d = a[p][p]
        if d <= 0:
            break
        col = {i: a[i][p] for i in live}
        live.remove(p)
        for i, ci in col.items():
            if ci:
                for j, cj in col.items():
                    out[i][j] += ci * cj / d
        for i in live:
            f = col[i] / d
            if f:
                for j in live:
                    a[i][j] -= f * col[j]
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass
class Verification:
    accepted: bool
    bound: Fraction | None
    reason: str
    worst: ThreeGraph | None = None
    graphs: int = 0

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "bound": None if self.bound is None else _frac_str(self.bound),
            "reason": self.reason,
            "worst": None if self.worst is None else sorted(self.worst.edges),
            "graphs": self.graphs,
        }


def slack(cert: FlagCertificate, g: ThreeGraph) -> Fraction:
    """``p(rho, G)`` minus the paired moment contributions."""
    out = induced_density(RHO, g)
    for t, fl, q in zip(cert.types, cert.flags, cert.matrices):
        if not fl or all(x == 0 for row in q for x in row):
            continue
        counts, total = moment_counts(t, fl, g)
        acc = Fraction(0)
        for qa, ca in zip(q, counts.tolist()):
            for x, c in zip(qa, ca):
                if c and x:
                    acc += x * c
        out -= acc / total
    return out


def verify_certificate(cert: FlagCertificate, threads: int = 1) -> Verification:
    if not 3 <= cert.ell <= ELL_CAP:
        raise CertificateError(f"evaluation size {cert.ell} outside 3..{ELL_CAP}")
    for i, q in enumerate(cert.matrices):
        ok, why = ldl_psd(q)
        if not ok:
            t = cert.types[i]
            return Verification(False, None, f"Q_{i + 1} (type on {t.k} labels) is not PSD: {why}")
    graphs = enumerate_graphs(cert.ell, cert.forbidden())
    if not graphs:
        return Verification(True, None, "no forbidden-free graph on l vertices", graphs=0)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            values = list(pool.map(lambda g: slack(cert, g), graphs))
    else:
        values = [slack(cert, g) for g in graphs]
    worst = min(range(len(graphs)), key=lambda i: (values[i], i))
    best = values[worst]
    if best < cert.bound:
        return Verification(
            False, best, f"bound shortfall: slack {best} < claimed {cert.bound}", graphs[worst], len(graphs)
        )
    return Verification(True, best, "ok", graphs[worst], len(graphs))


# ---------------------------------------------------------------------------
# SDPA export


@dataclass
class SdpaProblem:
    """Sparse SDPA data: ``maximize F0 . Y`` s.t. ``Fi . Y = c_i``, ``Y >= 0``.

    ``entries`` holds ``(matno, block, i, j, value)`` with ``i <= j``; a
    negative block size marks a diagonal block.
    """

    m: int
    blocks: list
    c: list
    entries: list
    comments: list = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f'"{c}"' for c in self.comments]
        lines.append(str(self.m))
        lines.append(str(len(self.blocks)))
        lines.append(" ".join(str(b) for b in self.blocks))
        lines.append(" ".join(repr(float(x)) for x in self.c))
        for mat, blk, i, j, v in self.entries:
            lines.append(f"{mat} {blk} {i} {j} {float(v)!r}")
        return "\n".join(lines) + "\n"


def parse_sdpa(text: str) -> SdpaProblem:
    comments = []
    tokens: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s:
            continue
        if s[0] in '"*':
            if not tokens:
                comments.append(s.strip('"'))
            continue
        for ch in "{}(),":
            s = s.replace(ch, " ")
        tokens.extend((no, x) for x in s.split())
    pos = 0

    def take(conv):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of SDPA data")
        no, tok = tokens[pos]
        pos += 1
        try:
            return conv(tok)
        except ValueError:
            raise ValueError(f"line {no}: bad token {tok!r}") from None

    m = take(int)
    nb = take(int)
    blocks = [take(int) for _ in range(nb)]
    c = [take(float) for _ in range(m)]
    entries = []
    while pos < len(tokens):
        rec = (take(int), take(int), take(int), take(int), take(float))
        if not 0 <= rec[0] <= m or not 1 <= rec[1] <= nb:
            raise ValueError(f"entry {rec} out of range")
        size = abs(blocks[rec[1] - 1])
        if not (1 <= rec[2] <= size and 1 <= rec[3] <= size):
            raise ValueError(f"entry {rec} outside its block")
        if blocks[rec[1] - 1] < 0 and rec[2] != rec[3]:
            raise ValueError(f"entry {rec} off the diagonal of a diagonal block")
        entries.append(rec)
    return SdpaProblem(m, blocks, c, entries, comments)


def export_sdp(
    forbidden: Sequence[ThreeGraph], ell: int, types: Sequence[FlagType] | None = None
) -> tuple[SdpaProblem, dict]:
    """SDP whose optimum is the best bound these types give at size ``ell``.

    Blocks: one per type (the ``Q_t``), then a diagonal block holding one
    slack per graph followed by the bound ``c`` (which is nonnegative since
    the zero certificate already certifies ``c = 0``).  Constraint ``i`` reads
    ``sum_t <Q_t, M_t(G_i)> + s_i + c = p(rho, G_i)``.
    """
    cert = zero_certificate(forbidden, ell, types)
    graphs = enumerate_graphs(ell, list(forbidden))
    if ell > ELL_CAP:
        raise ValueError(f"evaluation size {ell} exceeds {ELL_CAP}")
    m = len(graphs)
    keep = [i for i, fl in enumerate(cert.flags) if fl]
    blocks = [len(cert.flags[i]) for i in keep] + [-(m + 1)]
    diag = len(blocks)
    entries = [(0, diag, m + 1, m + 1, 1.0)]
    rhs = []
    for gi, g in enumerate(graphs, 1):
        rhs.append(induced_density(RHO, g))
        for b, i in enumerate(keep, 1):
            counts, total = moment_counts(cert.types[i], cert.flags[i], g)
            d = counts.shape[0]
            for a in range(d):
                for bb in range(a, d):
                    if counts[a, bb]:
                        entries.append((gi, b, a + 1, bb + 1, Fraction(int(counts[a, bb]), total)))
        entries.append((gi, diag, gi, gi, 1.0))
        entries.append((gi, diag, m + 1, m + 1, 1.0))
    entries.sort(key=lambda e: e[:4])
    prob = SdpaProblem(
        m, blocks, rhs, entries,
        [f"flag SDP, l={ell}, family {','.join(cert.family) or 'none'}", f"FMT_VERSION {FMT_VERSION}"],
    )
    manifest = {
        "fmt_version": FMT_VERSION,
        "family": list(cert.family),
        "ell": ell,
        "objective": "maximize the last diagonal entry of the final block",
        "constraints": [format_3graph(g, header=False) for g in graphs],
        "rhs": [_frac_str(x) for x in rhs],
        "blocks": [
            {
                "block": b,
                "labels": cert.types[i].k,
                "sigma": cert.types[i].text(),
                "flag_size": cert.flags[i][0].size,
                "flags": [format_3graph(f.graph, header=False) for f in cert.flags[i]],
            }
            for b, i in enumerate(keep, 1)
        ],
        "diagonal_block": {"block": diag, "slacks": m, "bound_index": m + 1},
    }
    return prob, manifest


def read_solution(text: str, blocks: Sequence[int]) -> tuple[list[float], list[np.ndarray]]:
    """CSDP-style solution: first line ``y``, then ``matno blk i j v`` lines;
    ``matno = 2`` rows form the primal matrix ``Y``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty solution file")
    y = [float(x) for x in lines[0]]
    mats = [np.zeros((abs(b), abs(b))) for b in blocks]
    for no, parts in enumerate(lines[1:], 2):
        if len(parts) != 5:
            raise ValueError(f"line {no}: expected 5 fields, got {len(parts)}")
        mat, blk, i, j = (int(x) for x in parts[:4])
        if mat != 2:
            continue
        v = float(parts[4])
        mats[blk - 1][i - 1, j - 1] = v
        mats[blk - 1][j - 1, i - 1] = v
    return y, mats


def round_solution(
    matrices: Sequence[np.ndarray],
    denominator: int,
    manifest: dict,
    bound: float | Fraction | None = None,
) -> FlagCertificate:
    """Nearest rationals with denominators at most ``denominator``, symmetrized
    and made PSD by dropping non-positive LDL pivots.

    ``bound`` defaults to zero; the result still has to pass
    :func:`verify_certificate`.
    """
    if denominator < 1:
        raise ValueError("denominator bound must be at least 1")
    types, flags, mats = [], [], []
    for spec, q in zip(manifest["blocks"], matrices):
        t = FlagType.from_text(spec["sigma"], int(spec["labels"]))
        fl = tuple(Flag(parse_3graph(f), t) for f in spec["flags"])
        q = np.asarray(q, dtype=float)
        d = len(fl)
        if q.shape != (d, d):
            raise CertificateError(f"block {spec['block']} is {q.shape}, expected {(d, d)}")
        r = [[Fraction(float(q[i, j])).limit_denominator(denominator) for j in range(d)] for i in range(d)]
        sym = [[(r[i][j] + r[j][i]) / 2 for j in range(d)] for i in range(d)]
        types.append(t)
        flags.append(fl)
        mats.append(tuple(tuple(row) for row in psd_project(sym)))
    claim = Fraction(0) if bound is None else Fraction(bound).limit_denominator(denominator)
    return FlagCertificate(
        tuple(manifest["family"]), int(manifest["ell"]), tuple(types), tuple(flags), tuple(mats), claim
    )
