from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from turan34.constructions import H1, H2, H3, I34, M2, balanced_spec, kostochka_3graph
from turan34.hypergraph import ThreeGraph, enumerate_graphs
from turan34.orgraph import Orgraph
from turan34.regularity import classify_all, find_realization, validate_realization

# regular on six vertices, but no realization puts the first searched pair
# in the "forward" state, so first-pair symmetry breaking misses it
SYMMETRY_COUNTEREXAMPLE = ThreeGraph(
    6, [(1, 2, 3), (1, 4, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6)]
)


def _independent_check(g, gamma):
    assert oracles.fdf(g.n, gamma.arcs) <= oracles.edge_set(g)
    assert not oracles.has_p3bar(g.n, gamma.arcs)
    assert not oracles.has_c4(g.n, gamma.arcs)


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_agrees_with_naive_enumeration(size):
    for g in enumerate_graphs(size):
        r = find_realization(g)
        naive = oracles.naive_regular(g)
        assert (r is None) == (naive is None)
        if r is not None:
            _independent_check(g, r.orgraph)


def test_named_verdicts():
    assert find_realization(I34) is None
    for n in range(1, 8):
        assert find_realization(ThreeGraph.complete(n)) is not None
    r = find_realization(M2)
    assert r is not None and validate_realization(M2, r.orgraph) == []


def test_realization_trace_names_the_rule():
    r = find_realization(M2)
    assert set(r.trace.values()) <= {"isolated", "out-degree-2", "non-edge"}
    assert sum(v != "non-edge" for v in r.trace.values()) <= M2.num_edges


def test_classification_counts():
    c = classify_all(5, [I34])
    assert c.counts() == {"regular": 23, "singular": 0}
    c = classify_all(5)
    assert c.counts() == {"regular": 23, "singular": 11}
    assert all(find_realization(g) is None for g in c.singular)


@pytest.mark.slow
def test_six_vertex_singular_inventory():
    c = classify_all(6, [I34, H1, H2, H3])
    assert c.counts() == {"regular": 643, "singular": 3}
    for g, _, r in c.entries:
        if r is not None:
            assert validate_realization(g, r.orgraph) == []


def test_slices_are_regular():
    for k in (1, 2):
        g = kostochka_3graph(balanced_spec(k))
        r = find_realization(g)
        assert r is not None
        _independent_check(g, r.orgraph)


def test_symmetry_breaking_is_unsound():
    assert find_realization(SYMMETRY_COUNTEREXAMPLE) is not None
    assert find_realization(SYMMETRY_COUNTEREXAMPLE, symmetry_breaking=True) is None


def test_cap():
    with pytest.raises(ValueError):
        find_realization(ThreeGraph(8))


def test_validate_reports_problems():
    c4 = Orgraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    probs = validate_realization(ThreeGraph.complete(4), c4)
    assert any("4-cycle" in p for p in probs)
    one_arc = Orgraph(3, [(1, 2)])
    assert any("single arc" in p for p in validate_realization(ThreeGraph.complete(3), one_arc))
    assert any("FDF" in p for p in validate_realization(ThreeGraph(3), Orgraph(3)))


@st.composite
def small_graphs(draw):
    n = draw(st.integers(3, 5))
    triples = list(itertools.combinations(range(1, n + 1), 3))
    return ThreeGraph(n, draw(st.lists(st.sampled_from(triples), unique=True)))


@given(small_graphs(), st.data())
def test_verdict_is_isomorphism_invariant(g, data):
    perm = data.draw(st.permutations(range(1, g.n + 1)))
    assert (find_realization(g) is None) == (find_realization(g.relabel(perm)) is None)


@given(small_graphs())
def test_supergraphs_of_regular_graphs_are_regular(g):
    r = find_realization(g)
    if r is not None:
        bigger = ThreeGraph.complete(g.n)
        assert validate_realization(bigger, r.orgraph) == []
