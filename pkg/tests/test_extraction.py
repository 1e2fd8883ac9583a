from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

import oracles
from turan34.constructions import H1, H2, H3, I34
from turan34.extraction import (
    AntiparallelError,
    BudgetExhausted,
    DoubledEmbedding,
    FailureWitness,
    all_doubled_hosts,
    certify_regularization,
    check_doubled,
    derive_orientation,
    find_doubled_embedding,
    kostochka_doubled,
)
from turan34.hypergraph import ThreeGraph, is_isomorphic
from turan34.regularity import Realization

FAMILY = [I34, H1, H2, H3]


def _revalidate(d, real):
    gamma = real.orgraph
    pattern = oracles.edge_set(d.pattern)
    assert oracles.fdf(d.ell, gamma.arcs) <= pattern
    assert not oracles.has_p3bar(d.ell, gamma.arcs)
    assert not oracles.has_c4(d.ell, gamma.arcs)
    assert not any((v, u) in gamma.arcs for u, v in gamma.arcs)


def test_parametrization_size():
    assert sum(1 for _ in all_doubled_hosts(2)) == 4
    assert sum(1 for _ in all_doubled_hosts(3)) == 128
    assert all(check_doubled(d).ok for d in all_doubled_hosts(3))


def test_parametrization_matches_brute_force_at_ell_2():
    # every host on 4 vertices where (1,2),(3,4) is doubled
    triples = list(itertools.combinations(range(1, 5), 3))
    valid = set()
    for r in range(5):
        for es in itertools.combinations(triples, r):
            d = DoubledEmbedding(ThreeGraph(4, es), ((1, 2), (3, 4)))
            if check_doubled(d).ok:
                valid.add(frozenset(es))
    assert valid == {d.host.edges for d in all_doubled_hosts(2)}


@pytest.mark.parametrize("ell", [2, 3])
def test_forbidden_free_hosts_always_certify(ell):
    hosts = list(all_doubled_hosts(ell, FAMILY))
    assert hosts
    for d in hosts:
        res = certify_regularization(d)
        assert isinstance(res, Realization), res
        _revalidate(d, res)


def test_failures_carry_genuine_forbidden_subgraphs():
    claims = set()
    for d in all_doubled_hosts(3):
        res = certify_regularization(d)
        if isinstance(res, FailureWitness):
            claims.add((res.claim, res.forbidden))
            assert res.revalidate(d.host)
            pat = {"I34": I34, "H1": H1, "H2": H2, "H3": H3}[res.forbidden]
            sub = oracles.induced(oracles.edge_set(d.host), res.subset)
            assert oracles.isomorphic(pat.n, oracles.edge_set(pat), len(res.subset), sub)
    assert ("independent-pairs", "H1") in claims
    assert ("orientedness", "I34") in claims


def test_antiparallel_raises():
    # a1 b1 a2 and a1 b1 b2 non-edges and a2 b2 a1, a2 b2 b1 non-edges
    d = DoubledEmbedding(ThreeGraph(4), ((1, 2), (3, 4)))
    with pytest.raises(AntiparallelError):
        derive_orientation(d)


def test_invalid_embedding_rejected():
    d = DoubledEmbedding(ThreeGraph(4, [(1, 2, 3)]), ((1, 2), (3, 4)))
    assert not check_doubled(d).ok
    with pytest.raises(ValueError):
        certify_regularization(d)
    with pytest.raises(ValueError):
        DoubledEmbedding(ThreeGraph(4), ((1, 2), (2, 3)))


def test_swapping_representatives_keeps_validity():
    for d in itertools.islice(all_doubled_hosts(3), 0, 128, 9):
        for i in range(1, 4):
            s = d.swapped(i)
            assert check_doubled(s).ok
            assert is_isomorphic(s.pattern, d.pattern)


def test_kostochka_doubled_hosts_certify():
    rng = random.Random(11)
    for _ in range(25):
        ell = rng.randint(2, 4)
        pts = set()
        while len(pts) < ell:
            pts.add((rng.randrange(3), Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))))
        if any((a - b) % 3 and x == -y for (a, x), (b, y) in itertools.combinations(pts, 2)):
            continue
        d = kostochka_doubled(sorted(pts))
        assert check_doubled(d).ok
        res = certify_regularization(d)
        assert isinstance(res, Realization)
        _revalidate(d, res)


def test_search_finds_and_exhausts():
    d = kostochka_doubled([(0, Fraction(1)), (1, Fraction(1)), (2, Fraction(1))])
    found = find_doubled_embedding(d.host, 3)
    assert found is not None and check_doubled(found).ok
    assert find_doubled_embedding(ThreeGraph(5, [(1, 2, 3)]), 2) is not None
    with pytest.raises(BudgetExhausted):
        find_doubled_embedding(ThreeGraph.complete(8), 4, budget=3)


def test_search_returns_none_when_impossible():
    # with 3 pairs on 6 vertices the single-edge host has no doubled embedding
    assert find_doubled_embedding(ThreeGraph(6, [(1, 2, 3)]), 3) is None


def test_seed_changes_only_the_choice():
    host = ThreeGraph.complete(7)
    for seed in (1, 2, 3):
        d = find_doubled_embedding(host, 3, seed=seed)
        assert d is not None and check_doubled(d).ok
