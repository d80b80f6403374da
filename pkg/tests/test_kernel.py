from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import rising
from rihahn.errors import InvalidParameters, NonTerminating, PoleInDenominator
from rihahn.kernel import (HahnParameterSet, ParameterSet, as_rational,
                           basic_hyp_terminating, format_rational,
                           hyp_terminating, parameter_violations, pochhammer,
                           q_poch_shift_identity_check, q_pochhammer,
                           termination_index, valid)

small_q = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20),
                       max_denominator=20)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def test_rational_parsing():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(" -7 ") == -7
    assert as_rational(Fraction(2, 6)) == Fraction(1, 3)
    for bad in ("0.5", "1e3", "abc", "1/2/3"):
        with pytest.raises(ValueError):
            as_rational(bad)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_canonical_strings():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(0) == "0"


@pytest.mark.parametrize("a,n,want", [(Fraction(5, 3), 0, 1), (-2, 2, 2), (1, 4, 24)])
def test_pochhammer_examples(a, n, want):
    assert pochhammer(Fraction(a), n) == want


def test_q_pochhammer_examples():
    q = Fraction(1, 3)
    assert q_pochhammer(Fraction(7, 2), q, 0) == 1
    assert all(q_pochhammer(Fraction(1), q, n) == 0 for n in range(1, 5))
    assert q_pochhammer(Fraction(1, 2), Fraction(1, 2), 2) == Fraction(3, 8)


@given(rationals, st.integers(0, 6), st.integers(0, 6))
def test_pochhammer_concatenation(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


def test_hyp_examples():
    assert hyp_terminating([0, Fraction(3)], [Fraction(1, 2)], Fraction(9)) == 1
    assert hyp_terminating([-2, 1], [3], 1) == Fraction(1, 2)
    assert hyp_terminating([-1, -1, 2], [-2, Fraction(-1, 2)], 1) == 3


@given(st.integers(0, 8), rationals, rationals)
def test_chu_vandermonde(n, b, c):
    if any(c + k == 0 for k in range(n)):
        return
    assert hyp_terminating([-n, b], [c], 1) == rising(c - b, n) / rising(c, n)


@given(st.lists(rationals, min_size=1, max_size=3), st.lists(rationals, max_size=2))
def test_zero_argument_gives_one(num, den):
    num = [-3] + num
    if any(b + k == 0 for b in den for k in range(4)):
        return
    assert hyp_terminating(num, den, 0) == 1


def test_termination_rules():
    assert termination_index([-3, Fraction(1, 2), -1]) == 1
    with pytest.raises(NonTerminating):
        termination_index([Fraction(1, 2), 2])
    with pytest.raises(PoleInDenominator):
        hyp_terminating([-3, 1], [-1], 1)
    # the pole sits past the termination point, so it is never reached
    assert hyp_terminating([-1, 1], [-1], 1) == 2


def test_basic_hyp_examples():
    q = Fraction(1, 2)
    assert basic_hyp_terminating([Fraction(1), Fraction(3)], [Fraction(5)], q, q) == 1
    # 1phi0(q^-n;;q,z) = (z q^-n; q)_n
    for n in range(5):
        z = Fraction(3, 7)
        assert basic_hyp_terminating([q ** -n], [], q, z) == q_pochhammer(z * q ** -n, q, n)


def test_basic_hyp_matches_direct_sum():
    # q-Chu-Vandermonde: 2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n b^n
    q, b, c = Fraction(2, 3), Fraction(5, 4), Fraction(1, 3)
    for n in range(6):
        want = q_pochhammer(c / b, q, n) / q_pochhammer(c, q, n) * b ** n
        assert basic_hyp_terminating([q ** -n, b], [c], q, q) == want


@given(small_q, st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9),
       st.integers(0, 6), st.data())
def test_q_shift_identity(q, z, n, data):
    k = data.draw(st.integers(0, n))
    try:
        assert q_poch_shift_identity_check(z, q, n, k)
    except ZeroDivisionError:
        pass


def test_q_shift_examples():
    assert q_poch_shift_identity_check(Fraction(1, 3), Fraction(1, 2), 3, 1)
    assert q_poch_shift_identity_check(Fraction(1, 3), Fraction(1, 2), 3, 0)
    assert q_poch_shift_identity_check(Fraction(1, 3), Fraction(1, 2), 3, 3)


def _brute_valid(alpha, beta, N):
    bad_beta = beta.denominator == 1 and -N <= beta <= N - 1
    bad_alpha = alpha.denominator == 1 and -N - 1 <= alpha <= -1
    s = alpha + beta
    bad_sum = s.denominator == 1 and -N <= s <= -1
    return not (bad_beta or bad_alpha or bad_sum)


@pytest.mark.parametrize("N", range(0, 6))
def test_validity_boundary_sweep(N):
    for a in range(-N - 2, N + 1):
        for b in range(-N - 2, N + 1):
            for shift in (Fraction(0), Fraction(1, 2)):
                alpha, beta = Fraction(a) + shift, Fraction(b)
                assert valid(alpha, beta, N) == _brute_valid(alpha, beta, N), (alpha, beta, N)
                alpha, beta = Fraction(a), Fraction(b) + shift
                assert valid(alpha, beta, N) == _brute_valid(alpha, beta, N), (alpha, beta, N)


def test_invalid_message_names_condition():
    with pytest.raises(InvalidParameters, match="beta=0"):
        ParameterSet(1, 0, 2)
    msgs = parameter_violations(Fraction(-1), Fraction(1, 2), 3)
    assert any("alpha" in m for m in msgs)
    assert any("alpha+beta" in m for m in parameter_violations(Fraction(1, 2), Fraction(-3, 2), 3))
    with pytest.raises(InvalidParameters):
        ParameterSet(1, Fraction(1, 2), -1)


def test_parameter_set_is_exact_and_frozen():
    p = ParameterSet("1", "1/2", 2)
    assert p.alpha == 1 and p.beta == Fraction(1, 2)
    assert p.to_dict() == {"alpha": "1", "beta": "1/2", "N": 2}
    with pytest.raises(Exception):
        p.alpha = Fraction(3)
    assert p.shifted() == ParameterSet(2, Fraction(-1, 2), 2)


def test_hahn_parameter_set():
    p = ParameterSet(1, Fraction(1, 2), 2)
    hp = HahnParameterSet.glued(1, p)
    assert (hp.xi, hp.eta, hp.N) == (Fraction(-3, 2), Fraction(3, 2), 2)
    with pytest.raises(InvalidParameters):
        HahnParameterSet(-1, Fraction(1, 3), 2)
