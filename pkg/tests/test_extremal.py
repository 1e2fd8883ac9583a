from __future__ import annotations

import math
from fractions import Fraction

import pytest

import oracles
from turan34.constructions import G3, H1, H2, H3, I34, M2, balanced_spec, kostochka_3graph
from turan34.extremal import (
    covering_lower_bound,
    decode_cnf_model,
    density_table,
    ex_min,
    export_cnf,
    turan_upper_bound,
)
from turan34.hypergraph import contains_induced, is_isomorphic

FAMILY = [I34, H1, H2, H3]
KNOWN = {4: 1, 5: 3, 6: 6, 7: 12, 8: 20, 9: 30}


def _check_result(res, family):
    for w in res.witnesses:
        assert w.num_edges == res.minimum
        for f in family:
            assert f.n > w.n or contains_induced(w, f) is None
    for a in range(len(res.witnesses)):
        for b in range(a):
            assert not is_isomorphic(res.witnesses[a], res.witnesses[b])


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_i34_values(n):
    res = ex_min(n, [I34])
    assert res.exact
    assert res.minimum == KNOWN.get(n, 0)
    _check_result(res, [I34])


@pytest.mark.slow
def test_i34_value_nine():
    res = ex_min(9, [I34])
    assert res.exact and res.minimum == 30


def test_six_vertex_witness_is_unique_m2():
    res = ex_min(6, [I34], all_witnesses=True)
    assert res.minimum == 6 and len(res.witnesses) == 1
    assert is_isomorphic(res.witnesses[0], M2)


@pytest.mark.parametrize("n", [4, 5])
def test_brute_force_oracle(n):
    want, _ = oracles.naive_ex_min(n, [I34])
    assert ex_min(n, [I34]).minimum == want
    want, _ = oracles.naive_ex_min(n, FAMILY)
    assert ex_min(n, FAMILY).minimum == want


def test_extra_constraints_can_raise_the_minimum():
    # forbidding G3 as well: an oracle over all 2^10 graphs on 5 vertices
    want, _ = oracles.naive_ex_min(5, [I34, G3])
    res = ex_min(5, [I34, G3], all_witnesses=True)
    assert res.minimum == want
    _check_result(res, [I34, G3])


def test_monotone_in_n_and_family():
    small = [ex_min(n, [I34]).minimum for n in range(4, 9)]
    big = [ex_min(n, FAMILY).minimum for n in range(4, 9)]
    assert small == sorted(small)
    assert all(b >= s for b, s in zip(big, small))


def test_sandwich_against_slices():
    for k in (2, 3):
        n = 3 * k
        assert ex_min(n, [I34]).minimum <= kostochka_3graph(balanced_spec(k)).num_edges
    assert turan_upper_bound(7).n == 7


def test_covering_bound_below_exact_values():
    for n in range(4, 8):
        assert covering_lower_bound(n) <= KNOWN[n]
    # the plain counting bound with exact inputs
    assert covering_lower_bound(5, known={4: 1}) == 3
    assert covering_lower_bound(7, known={6: 6}) == 11
    assert covering_lower_bound(8, known={7: 12}) == 20


def test_budget_exhaustion_is_graceful():
    res = ex_min(10, [I34], budget=50)
    assert not res.exact and res.minimum is None
    assert res.lower_bound <= 45 and res.upper_bound == 45


def test_density_table_rows():
    rows = density_table(6, [I34], n_min=4)
    assert [(n, d) for n, _, d in rows] == [(4, Fraction(1, 4)), (5, Fraction(3, 10)), (6, Fraction(3, 10))]
    fam_rows = density_table(8, FAMILY, n_min=5)
    base_rows = density_table(8, [I34], n_min=5)
    assert all(a[2] >= b[2] for a, b in zip(fam_rows, base_rows))


def test_no_empty_member():
    res = ex_min(5, [G3])
    assert res.minimum == 0


def test_cnf_header_and_structure():
    text = export_cnf(5, [I34], 3)
    lines = text.splitlines()
    header = next(ln for ln in lines if ln.startswith("p cnf"))
    _, _, nvars, nclauses = header.split()
    body = [ln for ln in lines if not ln.startswith(("c", "p"))]
    assert len(body) == int(nclauses)
    assert all(ln.endswith(" 0") for ln in body)
    assert int(nvars) >= math.comb(5, 3)


@pytest.mark.parametrize("family", [[I34], FAMILY])
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_cnf_cross_check(n, family):
    solvers = pytest.importorskip("pysat.solvers")
    from pysat.formula import CNF

    m = ex_min(n, family).minimum

    def solve(edges):
        cnf = CNF(from_string=export_cnf(n, family, edges))
        with solvers.Glucose4(bootstrap_with=cnf.clauses) as s:
            return s.get_model() if s.solve() else None

    model = solve(m)
    assert model is not None
    g = decode_cnf_model(n, model)
    assert g.num_edges <= m
    assert all(contains_induced(g, f) is None for f in family if f.n <= n)
    if m > 0:
        assert solve(m - 1) is None
