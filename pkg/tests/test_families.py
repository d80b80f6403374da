from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import P_naive, V_naive, rising
from rihahn.errors import InvalidParameters
from rihahn.families import (P, V, askey_limit_deltas, askey_limit_table,
                             askey_P, evaluate_rational_monomials, exact_degree,
                             expand_rho_in_rational_monomials,
                             expand_V_in_rational_monomials, family_table, hahn,
                             leading_coefficient, monic_mu, monic_p)
from rihahn.gevp import closed_form_d
from rihahn.kernel import HahnParameterSet, ParameterSet, valid

params = st.tuples(st.integers(1, 6),
                   st.fractions(min_value=-6, max_value=6, max_denominator=7),
                   st.fractions(min_value=-6, max_value=6, max_denominator=7)
                   ).filter(lambda t: valid(t[1], t[2], t[0]))
xs = st.fractions(min_value=-10, max_value=10, max_denominator=11)


def test_trivial_values(small):
    N = small.N
    for n in range(N + 1):
        assert P(n, 0, small) == V(n, 0, small) == 1
    assert all(P(0, x, small) == V(0, x, small) == 1 for x in range(N + 1))


def test_small_examples(p2):
    assert [P(1, x, p2) for x in range(3)] == [1, 3, 5]
    assert (V(1, 1, p2), V(1, 2, p2)) == (4, -5)
    assert P(1, Fraction(1, 7), p2) == 1 + Fraction(2, 7)
    assert monic_mu(1, p2) == Fraction(1, 2)
    assert monic_p(1, Fraction(3, 5), p2) == Fraction(3, 5) + Fraction(1, 2)
    assert askey_P(1, Fraction(2, 3), 1, Fraction(1, 2)) == 1 + 4 * Fraction(2, 3)
    assert askey_P(3, 0, 1, Fraction(1, 2)) == 1


@given(params, xs)
def test_P_matches_oracle_off_grid(t, x):
    N, a, b = t
    p = ParameterSet(a, b, N)
    for n in range(N + 1):
        assert P(n, x, p) == P_naive(n, x, a, b, N)


@given(params)
def test_V_matches_oracle(t):
    N, a, b = t
    p = ParameterSet(a, b, N)
    for n in range(N + 1):
        for x in range(N + 1):
            assert V(n, x, p) == V_naive(n, x, a, b, N)


@given(params)
def test_exact_degree_and_monic(t):
    N, a, b = t
    p = ParameterSet(a, b, N)
    for n in range(N + 1):
        assert exact_degree(lambda x: P(n, x, p), N) == n
        assert leading_coefficient(lambda x: monic_p(n, x, p), n) == 1


def test_hahn_glued_is_P(small):
    for n in range(small.N + 1):
        hp = HahnParameterSet.glued(n, small)
        for x in [Fraction(x) for x in range(small.N + 1)] + [Fraction(1, 3), Fraction(-7, 4)]:
            assert hahn(n, x, hp) == P(n, x, small)


def test_rho_top_coefficient(regression):
    b = regression.beta
    for n in range(regression.N + 1):
        u = expand_rho_in_rational_monomials(n, regression)
        assert u[-1] == rising(-b - n, n)


def test_V_rational_monomials(small):
    b = small.beta
    for n in range(small.N + 1):
        u = expand_V_in_rational_monomials(n, small)
        # V_n = sum_k d_{n,k} rho_k, so only rho_n feeds the top term
        assert u[-1] == closed_form_d(n, n, small) * rising(-b - n, n)
        for x in range(small.N + 1):
            assert evaluate_rational_monomials(u, x, b) == V(n, x, small)
    assert expand_V_in_rational_monomials(0, small) == [1]


def test_table_csv(p2):
    csv_text = family_table("P", p2).to_csv()
    assert csv_text.splitlines() == ["n,0,1,2", "0,1,1,1", "1,1,3,5", "2,1,7/3,35/3"]
    tab = family_table("hahn", HahnParameterSet(Fraction(1, 3), Fraction(1, 4), 3))
    assert tab.values[0] == (1, 1, 1, 1)
    assert [row[0] for row in tab.values] == [1, 1, 1, 1]
    with pytest.raises(InvalidParameters):
        family_table("hahn", p2)


def test_degree_out_of_range(p2):
    with pytest.raises(ValueError):
        P(3, 1, p2)


def test_askey_limit_rows():
    rows = askey_limit_table(1, Fraction(1, 2))
    assert len(rows) == 15
    assert all(r.converging() for r in rows)
    # degrees 0 and 1 agree exactly at every N (P_1(N x) = 1 + 4x too)
    assert all(r.exact for r in rows if r.n <= 1)
    assert all(not r.exact for r in rows if r.n >= 2)


def test_askey_row_rejects_stalls():
    row = askey_limit_deltas(2, Fraction(1, 2), 1, Fraction(1, 2), (8, 8))
    assert not row.converging()
