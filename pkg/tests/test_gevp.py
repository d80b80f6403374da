from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from oracles import P_naive, V_naive, rising
from rihahn import gevp
from rihahn.kernel import ParameterSet, valid
from rihahn.operators import phi_basis, rho_basis

params = st.tuples(st.integers(1, 7),
                   st.fractions(min_value=-8, max_value=8, max_denominator=9),
                   st.fractions(min_value=-8, max_value=8, max_denominator=9)
                   ).filter(lambda t: valid(t[1], t[2], t[0]))


def test_eigenvalues_are_degrees(regression):
    assert gevp.bidiagonal_gevp_eigenvalues(regression) == list(range(regression.N + 1))


def test_small_coefficients(p2):
    assert gevp.solve_P_coefficients(0, p2).coefficients == (1, 0, 0)
    assert gevp.solve_V_coefficients(0, p2).coefficients == (1, 0, 0)
    assert gevp.solve_P_coefficients(1, p2).coefficients[1] == -2
    assert gevp.solve_V_coefficients(1, p2).coefficients[1] == Fraction(-3, 2)


def test_closed_forms_by_hand(p2):
    a, b, N = p2.alpha, p2.beta, p2.N
    for n in range(N + 1):
        for k in range(n + 1):
            c = rising(-n, k) * rising(a + 1, k) / (factorial(k) * rising(-N, k) * rising(1 - b - n, k))
            d = rising(-n, k) * rising(-a - N, k) / (factorial(k) * rising(-N, k))
            assert gevp.closed_form_c(n, k, p2) == c
            assert gevp.closed_form_d(n, k, p2) == d


@given(params)
def test_recurrence_equals_closed_form(t):
    N, a, b = t
    p = ParameterSet(a, b, N)
    for n in range(N + 1):
        c = gevp.solve_P_coefficients(n, p)
        d = gevp.solve_V_coefficients(n, p)
        assert c.coefficients[0] == d.coefficients[0] == 1
        assert not any(c.coefficients[n + 1:]) and not any(d.coefficients[n + 1:])
        assert not any(gevp.c_recurrence_residuals(n, c.coefficients, p))
        assert not any(gevp.d_recurrence_residuals(n, d.coefficients, p))


def test_oracle_mismatch_is_raised(monkeypatch, p2):
    monkeypatch.setattr(gevp, "closed_form_c", lambda n, k, p: Fraction(k == 0))
    with pytest.raises(gevp.OracleMismatch):
        gevp.solve_P_coefficients(1, p2)


def test_expansions_reproduce_families(small):
    N = small.N
    for n in range(N + 1):
        assert gevp.P_grid(n, small) == tuple(P_naive(n, x, small.alpha, small.beta, N)
                                              for x in range(N + 1))
        assert gevp.V_grid(n, small) == tuple(V_naive(n, x, small.alpha, small.beta, N)
                                              for x in range(N + 1))


def test_P1_explicit(p2):
    assert gevp.P_grid(1, p2) == (1, 3, 5)
    assert not any(gevp.gevp_residual(1, p2))


def test_residuals_vanish(regression):
    for n in range(regression.N + 1):
        assert not any(gevp.gevp_residual(n, regression))
        assert not any(gevp.pencil_residual(n, regression))
        assert not any(gevp.zstar_residual(n, regression))
        assert not any(gevp.adjoint_gevp_residual(n, regression))


def test_adjoint_eigenfunction_maps_to_V(small):
    from rihahn.operators import matrix_in_rho_basis
    for n in range(small.N + 1):
        pstar = gevp.adjoint_eigenfunction(n, small)
        d = gevp.solve_V_coefficients(n, small).coefficients
        assert matrix_in_rho_basis("Lstar", small) @ pstar == list(d)


def test_solution_json(p2):
    js = gevp.solve_P_coefficients(2, p2).to_json()
    assert js["eigenvalue"] == "2" and js["basis_tag"] == "phi"
    assert js["coefficients"][0] == "1"
    assert phi_basis(0, 2) == rho_basis(0, p2)


def test_index_out_of_range(p2):
    with pytest.raises(ValueError):
        gevp.solve_P_coefficients(3, p2)
