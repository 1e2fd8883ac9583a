"""Brute-force reference implementations, deliberately naive.

They only read ``.n`` and ``.edges`` / ``.arcs`` from package objects so that a
bug in the optimized code cannot leak into the oracle.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction


def edge_set(g):
    return {tuple(sorted(e)) for e in g.edges}


def relabel(edges, perm):
    # perm maps old vertex v (1-based) to perm[v-1]
    return {tuple(sorted(perm[v - 1] for v in e)) for e in edges}


def induced(edges, verts):
    pos = {v: i + 1 for i, v in enumerate(sorted(verts))}
    return {tuple(pos[v] for v in e) for e in edges if all(v in pos for v in e)}


def isomorphic(n1, e1, n2, e2):
    if n1 != n2 or len(e1) != len(e2):
        return False
    return any(relabel(e1, p) == e2 for p in itertools.permutations(range(1, n1 + 1)))


def canonical(n, edges):
    best = None
    for p in itertools.permutations(range(1, n + 1)):
        key = tuple(sorted(relabel(edges, p)))
        if best is None or key < best:
            best = key
    return best


def count_induced(h, g):
    he = edge_set(h)
    ge = edge_set(g)
    return sum(
        isomorphic(h.n, he, h.n, induced(ge, s))
        for s in itertools.combinations(range(1, g.n + 1), h.n)
    )


def density(h, g):
    return Fraction(count_induced(h, g), math.comb(g.n, h.n))


def has_induced(g, h):
    return count_induced(h, g) > 0


# orgraphs as (n, set of arcs)


def fdf(n, arcs):
    arcs = set(arcs)
    out = set()
    for t in itertools.combinations(range(1, n + 1), 3):
        sub = [(u, v) for u, v in arcs if u in t and v in t]
        touched = {x for a in sub for x in a}
        isolated = any(v not in touched for v in t)
        outdeg2 = any(sum(1 for u, _ in sub if u == v) == 2 for v in t)
        if isolated or outdeg2:
            out.add(t)
    return out


def has_c4(n, arcs):
    arcs = set(arcs)
    for q in itertools.combinations(range(1, n + 1), 4):
        sub = [(u, v) for u, v in arcs if u in q and v in q]
        if len(sub) != 4:
            continue
        for p in itertools.permutations(q):
            if {(p[0], p[1]), (p[1], p[2]), (p[2], p[3]), (p[3], p[0])} == set(sub):
                return True
    return False


def has_p3bar(n, arcs):
    arcs = set(arcs)
    for t in itertools.combinations(range(1, n + 1), 3):
        if sum(1 for u, v in arcs if u in t and v in t) == 1:
            return True
    return False


def all_orgraphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for states in itertools.product(range(3), repeat=len(pairs)):
        arcs = set()
        for (u, v), s in zip(pairs, states):
            if s == 1:
                arcs.add((u, v))
            elif s == 2:
                arcs.add((v, u))
        yield arcs


def naive_regular(g):
    """Exhaustive 3^C(n,2) search for a realizing orgraph."""
    ge = edge_set(g)
    for arcs in all_orgraphs(g.n):
        if fdf(g.n, arcs) <= ge and not has_p3bar(g.n, arcs) and not has_c4(g.n, arcs):
            return arcs
    return None


def naive_ex_min(n, forbidden):
    """Minimum edges over all 2^C(n,3) graphs (n <= 5)."""
    triples = list(itertools.combinations(range(1, n + 1), 3))
    best = None
    for r in range(len(triples) + 1):
        for edges in itertools.combinations(triples, r):
            es = set(edges)
            ok = True
            for f in forbidden:
                fe = edge_set(f)
                for s in itertools.combinations(range(1, n + 1), f.n):
                    if isomorphic(f.n, fe, f.n, induced(es, s)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return r, es
    return best


def pair_density(g, k_labels, sigma_edges, flag_a, flag_b, s):
    """Exact disjoint pair density by explicit enumeration of (theta, A, B).

    ``flag_a``/``flag_b`` are edge sets on 1..s with labels 1..k.
    """
    ge = edge_set(g)
    n = g.n
    m = s - k_labels
    hits = total = 0

    def is_flag(theta, ext, flag):
        verts = list(theta) + list(ext)
        local = {
            tuple(sorted(i + 1 for i, v in enumerate(verts) if v in e))
            for e in ge
            if all(x in verts for x in e)
        }
        # any permutation of the unlabeled tail
        for tail in itertools.permutations(range(k_labels + 1, s + 1)):
            p = list(range(1, k_labels + 1)) + list(tail)
            if relabel(local, p) == flag:
                return True
        return False

    for theta in itertools.permutations(range(1, n + 1), k_labels):
        rest = [v for v in range(1, n + 1) if v not in theta]
        sigma_ok = induced_labeled(ge, theta) == sigma_edges
        for a in itertools.combinations(rest, m):
            for b in itertools.combinations([v for v in rest if v not in a], m):
                total += 1
                if sigma_ok and is_flag(theta, a, flag_a) and is_flag(theta, b, flag_b):
                    hits += 1
    return Fraction(hits, total)


def induced_labeled(edges, theta):
    pos = {v: i + 1 for i, v in enumerate(theta)}
    return {tuple(sorted(pos[v] for v in e)) for e in edges if all(v in pos for v in e)}
