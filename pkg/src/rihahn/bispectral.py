"""Recurrence relations, difference equation and parameter-shift identities.

Polynomial identities are checked by evaluation: an identity between
polynomials of degree <= d holds everywhere once it holds at d+1 distinct
points, so N+2 sample points suffice for every identity here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PoleInDenominator
from .families import P, askey_P, monic_p
from .kernel import ParameterSet, as_rational, pochhammer
from .operators import abc, apply_operator, make_L, make_M, make_Y
from .report import Report


@dataclass(frozen=True)
class RecurrenceCoefficients:
    n: int
    gamma_n: Fraction
    delta_n: Fraction
    epsilon_n: Fraction
    A_n: Fraction
    B_n: Fraction


def recurrence_coefficients(n: int, p: ParameterSet) -> RecurrenceCoefficients:
    a, b, N = p.alpha, p.beta, p.N
    gamma = (2 * n * n + (a + 2 * b - N) * n - b * N) / (n + a + 1)
    # delta_0 = 0; the closed form is 0/0 at alpha = 0.
    delta = (n * (a + b + n) * (N + 1 - n) / ((a + n) * (a + 1 + n))
             if n else Fraction(0))
    return RecurrenceCoefficients(
        n, Fraction(gamma), Fraction(delta), n + b - 1,
        (n - N) * (b + n), n * (a + b + n))


def _lower(n: int, p: ParameterSet) -> Fraction:
    """n(alpha+beta+n)/(1-beta-n), the P_{n-1} weight; 0 at n = 0 (0/0 at beta = 1)."""
    if n == 0:
        return Fraction(0)
    return n * (p.alpha + p.beta + n) / (1 - p.beta - n)


def _grid_P(n: int, p: ParameterSet) -> list[Fraction]:
    if n < 0 or n > p.N:
        return [Fraction(0)] * (p.N + 1)
    return [P(n, x, p) for x in range(p.N + 1)]


def default_off_grid(count: int = 5) -> list[Fraction]:
    """``count`` rationals j - 5/3, none of them integers."""
    return [j - Fraction(5, 3) for j in range(count)]


def sample_points(count: int) -> list[Fraction]:
    """``count`` distinct rationals, mostly off the grid."""
    return [Fraction(3 * j - 2, 5) for j in range(count)]


def verify_Y_action(p: ParameterSet) -> Report:
    """Y P_n = A_n P_{n+1} - (A_n+B_n) P_n + B_n P_{n-1}, plus the L action."""
    a, N = p.alpha, p.N
    rep = Report("Y-action", p)
    Y, L = make_Y(p), make_L(p)
    for n in range(N + 1):
        rc = recurrence_coefficients(n, p)
        Pn, Pm, Pp = _grid_P(n, p), _grid_P(n - 1, p), _grid_P(n + 1, p)
        YP = apply_operator(Y, Pn)
        LP = apply_operator(L, Pn)
        c = _lower(n, p)
        for x in range(N + 1):
            up = rc.A_n * Pp[x] if n < N else 0
            rep.expect(YP[x], up - (rc.A_n + rc.B_n) * Pn[x] + rc.B_n * Pm[x],
                       identity="Y-action", n=n, x=x)
            rep.expect(LP[x], -(n + a + 1) * Pn[x] - c * Pm[x],
                       identity="L-action", n=n, x=x)
    return rep


def verify_recurrence_nonmonic(p: ParameterSet, off_grid: Sequence = None) -> Report:
    a, N = p.alpha, p.N
    if off_grid is None:
        off_grid = default_off_grid()
    rep = Report("recurrence-nonmonic", p)
    grid = [Fraction(x) for x in range(N + 1)]
    extra = [as_rational(x) for x in off_grid]
    for n in range(N + 1):
        rc = recurrence_coefficients(n, p)
        c = _lower(n, p)
        # At n = N the identity is only true on the grid: off it the two
        # sides differ by a multiple of (-x)_{N+1}.
        for x in (grid + extra if n < N else grid):
            Pn = P(n, x, p)
            Pm = P(n - 1, x, p) if n else 0
            up = rc.A_n * P(n + 1, x, p) if n < N else 0
            rep.expect(up - (rc.A_n + rc.B_n) * Pn + rc.B_n * Pm,
                       -x * ((n + a + 1) * Pn + c * Pm), n=n, x=x)
    return rep


def top_recurrence_residual(x, p: ParameterSet) -> Fraction:
    """Right minus left side of the non-monic recurrence at n = N."""
    a, N = p.alpha, p.N
    x = as_rational(x)
    rc = recurrence_coefficients(N, p)
    c = _lower(N, p)
    Pn, Pm = P(N, x, p), (P(N - 1, x, p) if N else 0)
    return (-x * ((N + a + 1) * Pn + c * Pm)
            - (-(rc.A_n + rc.B_n) * Pn + rc.B_n * Pm))


def verify_recurrence_monic(p: ParameterSet, points: Sequence = None) -> Report:
    """p_{n+1} + (gamma_n - x) p_n + delta_n (x - epsilon_n) p_{n-1} = 0, n = 1..N-1."""
    N = p.N
    if points is None:
        points = sample_points(N + 2)
    rep = Report("recurrence-monic", p)
    for n in range(1, N):
        rc = recurrence_coefficients(n, p)
        for x in points:
            x = as_rational(x)
            lhs = (monic_p(n + 1, x, p) + (rc.gamma_n - x) * monic_p(n, x, p)
                   + rc.delta_n * (x - rc.epsilon_n) * monic_p(n - 1, x, p))
            rep.expect(lhs, 0, n=n, x=x)
    return rep


def verify_difference_equation(p: ParameterSet) -> Report:
    """A P(x+1) + B P(x-1) + C P(x) = n((N-x) P(x+1) + (x-N-alpha-1) P(x))."""
    a, N = p.alpha, p.N
    A, B, C = abc(p)
    rep = Report("difference-equation", p)
    for n in range(N + 1):
        Pn = _grid_P(n, p)
        for x in range(N + 1):
            # A(N) = 0 and B(0) = 0 guard the off-grid neighbours.
            up = Pn[x + 1] if x < N else 0
            down = Pn[x - 1] if x > 0 else 0
            lhs = A(x) * up + B(x) * down + C(x) * Pn[x]
            rhs = n * ((N - x) * up + (x - N - a - 1) * Pn[x])
            rep.expect(lhs, rhs, n=n, x=x)
    return rep


def verify_parameter_shift(p: ParameterSet) -> Report:
    """L, M, Y acting on P_n(alpha, beta) give multiples of P_n(alpha+1, beta-1)."""
    a, b, N = p.alpha, p.beta, p.N
    q = p.shifted()
    rep = Report("parameter-shift", p)
    L, M, Y = make_L(p), make_M(p), make_Y(p)
    for n in range(N + 1):
        k = (a + 1) * (1 - b) / (1 - b - n) if n else a + 1
        Pn = _grid_P(n, p)
        Ps = _grid_P(n, q)
        Pm = _grid_P(n - 1, p)
        LP, MP, YP = (apply_operator(op, Pn) for op in (L, M, Y))
        for x in range(N + 1):
            rep.expect(LP[x], -k * Ps[x], identity="L-shift", n=n, x=x)
            rep.expect(MP[x], -n * k * Ps[x], identity="M-shift", n=n, x=x)
            rep.expect(YP[x], -x * k * Ps[x], identity="Y-shift", n=n, x=x)
            rep.expect(MP[x], n * LP[x], identity="M=nL", n=n, x=x)
            rep.expect(k * Ps[x],
                       (n + a + 1) * Pn[x] + _lower(n, p) * Pm[x],
                       identity="contiguity", n=n, x=x)
    return rep


def askey_monic(n: int, x, alpha, beta) -> Fraction:
    """(-1)^n (1-beta-n)_n / (alpha+1)_n times the Askey polynomial."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    return ((-1) ** n * pochhammer(1 - beta - n, n) / pochhammer(alpha + 1, n)
            * askey_P(n, x, alpha, beta))


def verify_askey_recurrence(alpha, beta, n_max: int, x_samples: Sequence) -> Report:
    alpha, beta = as_rational(alpha), as_rational(beta)
    rep = Report("askey-recurrence", {"alpha": alpha, "beta": beta, "n_max": n_max})
    for n in range(n_max + 1):
        if n + alpha + 1 == 0 or (n and n + alpha == 0):
            raise PoleInDenominator(f"alpha+n vanishes at n={n}")
        lower = (n * (n + alpha + beta) / ((n + alpha) * (n + alpha + 1))
                 if n else Fraction(0))
        for x in x_samples:
            x = as_rational(x)
            prev = askey_monic(n - 1, x, alpha, beta) if n else 0
            lhs = (askey_monic(n + 1, x, alpha, beta)
                   - ((n + beta) / (n + alpha + 1) + x) * askey_monic(n, x, alpha, beta)
                   + x * lower * prev)
            rep.expect(lhs, 0, n=n, x=x)
    return rep


def verify_all(p: ParameterSet) -> list[Report]:
    return [verify_difference_equation(p), verify_recurrence_nonmonic(p),
            verify_recurrence_monic(p), verify_Y_action(p),
            verify_parameter_shift(p)]


__all__ = [
    "RecurrenceCoefficients", "recurrence_coefficients", "verify_Y_action",
    "verify_recurrence_nonmonic", "verify_recurrence_monic",
    "top_recurrence_residual",
    "verify_difference_equation", "verify_parameter_shift",
    "verify_askey_recurrence", "askey_monic", "verify_all",
]
