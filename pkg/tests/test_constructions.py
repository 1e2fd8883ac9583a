from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

import oracles
from turan34.constructions import (
    G3,
    H1,
    H2,
    H3,
    H4,
    H4_INTRO,
    I34,
    M2,
    KostochkaSpec,
    balanced_spec,
    catalog,
    density_profile,
    kostochka_3graph,
    kostochka_orgraph,
    kostochka_vertices,
    parse_heights,
    verify_missing,
)
from turan34.hypergraph import ThreeGraph, contains_induced, is_isomorphic
from turan34.orgraph import is_c4_free


def test_m2_is_the_two_height_slice():
    g = kostochka_3graph(balanced_spec(2))
    assert (g.n, g.num_edges) == (6, 6)
    assert g == M2


def test_balanced_densities():
    want = [0, Fraction(3, 10), Fraction(5, 14), Fraction(21, 55), Fraction(36, 91),
            Fraction(55, 136), Fraction(39, 95), Fraction(105, 253)]
    got = [density_profile(balanced_spec(k)) for k in range(1, 9)]
    assert got == want


def test_density_independent_oracle():
    g = kostochka_3graph(balanced_spec(3))
    rho = ThreeGraph(3, [(1, 2, 3)])
    assert density_profile(balanced_spec(3)) == oracles.density(rho, g)


def test_arc_rule_by_hand():
    spec = parse_heights("a:1;b:2;c:-3")
    pts = kostochka_vertices(spec)
    gamma = kostochka_orgraph(spec)
    # (a,1),(b,2): sum > 0, b = a+1, so the arc points back from b to a
    assert pts == [(0, 1), (1, 2), (2, -3)]
    assert gamma.has_arc(2, 1)
    # (b,2),(c,-3): sum < 0 and c = b+1, arc b -> c
    assert gamma.has_arc(2, 3)
    # (a,1),(c,-3): sum < 0, a = c+1, arc c -> a
    assert gamma.has_arc(3, 1)


def test_slices_are_c4_free_and_i34_free():
    for k in range(2, 5):
        spec = balanced_spec(k, [-2, 1, 3, -4][:k])
        gamma = kostochka_orgraph(spec)
        assert is_c4_free(gamma) is None
        assert contains_induced(kostochka_3graph(spec), I34) is None


def test_spec_validation():
    with pytest.raises(ValueError):
        parse_heights("a:0;b:1;c:1")
    with pytest.raises(ValueError):
        parse_heights("a:1,1;b:1;c:1")
    with pytest.raises(ValueError):
        parse_heights("a:1;b:-1;c:2")  # cross-class zero sum, strict
    permissive = parse_heights("a:1;b:-1;c:2", strict=False)
    assert permissive.size == 3
    with pytest.raises(ValueError):
        parse_heights("d:1")
    assert str(parse_heights("b:2,1/2;a:1")) == "a:1;b:1/2,2;c:"


def test_zero_sum_pairs_are_independent_in_permissive_mode():
    spec = KostochkaSpec(((1,), (-1,), ()), strict=False)
    gamma = kostochka_orgraph(spec)
    assert not gamma.arcs


def test_catalog():
    assert catalog("m2") == M2
    assert catalog("K5").num_edges == 10
    assert catalog("I4") == I34
    assert is_isomorphic(H4, H4_INTRO)
    with pytest.raises(KeyError):
        catalog("nope")


def test_missing_graphs_absent_from_small_slices():
    for k in (2, 3, 4):
        rep = verify_missing(balanced_spec(k))
        assert rep.ok and rep.subsets_scanned == len(list(itertools.combinations(range(3 * k), 5)))
    rep = verify_missing(parse_heights("a:-3,-1,2,4;b:-1,2,5;c:-3,-1,2,5"))
    assert rep.ok


def test_missing_detects_planted_copies():
    for h in (H1, H2, H3):
        rep = verify_missing(h)
        assert not rep.ok


def test_g3_presence_characterizes_turan_slices():
    # over balanced height sets from +-1..+-5, a slice avoids G3 exactly when
    # it is isomorphic to the all-positive one with the same size
    values = [x for x in range(-5, 6) if x]
    for k in (2, 3, 4):
        turan = kostochka_3graph(balanced_spec(k))
        for hs in itertools.combinations(values, k):
            if any(-x in hs for x in hs):
                continue
            g = kostochka_3graph(balanced_spec(k, hs))
            free = contains_induced(g, G3) is None
            assert free == is_isomorphic(g, turan)


def test_mixed_sign_slice_without_g3():
    # a mixed-sign slice with four heights per class that still avoids G3:
    # it is the all-positive slice in disguise
    g = kostochka_3graph(balanced_spec(4, [-5, 1, 2, 3]))
    assert contains_induced(g, G3) is None
    assert is_isomorphic(g, kostochka_3graph(balanced_spec(4)))
