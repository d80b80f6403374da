"""Closed-form special-function families evaluated exactly.

P_n and V_n are the biorthogonal pair, ``hahn`` the classical Hahn
polynomials, ``monic_p`` the monic renormalization of P_n and ``askey_P``
the continuous Askey polynomials reached as N -> infinity.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InvalidParameters
from .kernel import (HahnParameterSet, ParameterSet, as_rational,
                     format_rational, hyp_terminating, pochhammer)


def _index(n: int, N: int):
    if not 0 <= n <= N:
        raise ValueError(f"degree n={n} outside 0..{N}")


def P(n: int, x, p: ParameterSet) -> Fraction:
    """R_I polynomial 3F2(-n, -x, alpha+1; -N, 1-beta-n; 1) at any rational x."""
    _index(n, p.N)
    return hyp_terminating([-n, -as_rational(x), p.alpha + 1],
                           [-p.N, 1 - p.beta - n], 1)


def V(n: int, x, p: ParameterSet) -> Fraction:
    """Biorthogonal partner 3F2(-n, -x, -alpha-N; -N, 1+beta-x; 1)."""
    _index(n, p.N)
    x = as_rational(x)
    return hyp_terminating([-n, -x, -p.alpha - p.N], [-p.N, 1 + p.beta - x], 1)


def hahn(n: int, x, hp: HahnParameterSet) -> Fraction:
    """Hahn polynomial 3F2(-n, -x, n+xi+eta+1; -N, xi+1; 1)."""
    _index(n, hp.N)
    return hyp_terminating([-n, -as_rational(x), n + hp.xi + hp.eta + 1],
                           [-hp.N, hp.xi + 1], 1)


def monic_mu(n: int, p: ParameterSet) -> Fraction:
    """mu_n = (-N)_n (1-beta-n)_n / (alpha+1)_n, making mu_n P_n monic."""
    return (pochhammer(Fraction(-p.N), n) * pochhammer(1 - p.beta - n, n)
            / pochhammer(p.alpha + 1, n))


def monic_p(n: int, x, p: ParameterSet) -> Fraction:
    return monic_mu(n, p) * P(n, x, p)


def askey_P(n: int, x, alpha, beta) -> Fraction:
    """Continuous Askey polynomial 2F1(-n, alpha+1; 1-beta-n; x)."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    return hyp_terminating([-n, alpha + 1], [1 - beta - n], x)


def divided_difference(f: Callable, points: Sequence) -> Fraction:
    """f[x_0, ..., x_m] via the Lagrange form."""
    total = Fraction(0)
    for j, xj in enumerate(points):
        denom = Fraction(1)
        for i, xi in enumerate(points):
            if i != j:
                denom *= xj - xi
        total += f(xj) / denom
    return total


def leading_coefficient(f: Callable, degree: int, points=None) -> Fraction:
    """x^degree coefficient of a polynomial of degree <= ``degree``."""
    if points is None:
        points = [Fraction(i) for i in range(degree + 1)]
    return divided_difference(f, points[:degree + 1])


def exact_degree(f: Callable, bound: int) -> int:
    """Degree of the polynomial f, known to be at most ``bound``."""
    pts = [Fraction(i, 2) for i in range(bound + 1)]
    for d in range(bound, -1, -1):
        if divided_difference(f, pts[:d + 1]) != 0:
            return d
    return -1


def _rational_monomial_expansion(values: Sequence, n: int, beta) -> list[Fraction]:
    # Solve sum_{k<=n} u_k / (1+beta-x)_k = values[x] on x = 0..n.
    rows = [[1 / pochhammer(1 + beta - x, k) for k in range(n + 1)]
            + [Fraction(values[x])] for x in range(n + 1)]
    m = n + 1
    for c in range(m):
        piv = next(i for i in range(c, m) if rows[i][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        pv = rows[c][c]
        rows[c] = [v / pv for v in rows[c]]
        for i in range(m):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return [rows[i][m] for i in range(m)]


def expand_rho_in_rational_monomials(n: int, p: ParameterSet) -> list[Fraction]:
    """u_0..u_n with rho_n(x) = sum_k u_k / (1+beta-x)_k; u_n = (-beta-n)_n."""
    _index(n, p.N)
    vals = [pochhammer(Fraction(-x), n) / pochhammer(1 + p.beta - x, n)
            for x in range(n + 1)]
    return _rational_monomial_expansion(vals, n, p.beta)


def expand_V_in_rational_monomials(n: int, p: ParameterSet) -> list[Fraction]:
    """Coefficients with V_n(x) = sum_k u_k / (1+beta-x)_k on the grid.

    The top coefficient is d_{n,n} (-beta-n)_n, the rho_n top coefficient
    scaled by the leading rho-coefficient of V_n.
    """
    _index(n, p.N)
    vals = [V(n, x, p) for x in range(n + 1)]
    return _rational_monomial_expansion(vals, n, p.beta)


def evaluate_rational_monomials(u: Sequence, x, beta) -> Fraction:
    return sum((uk / pochhammer(1 + beta - x, k) for k, uk in enumerate(u)),
               Fraction(0))


@dataclass(frozen=True)
class AskeyLimitRow:
    n: int
    x: Fraction
    Ns: tuple
    deltas: tuple

    @property
    def exact(self) -> bool:
        return not any(self.deltas)

    def ratios(self) -> list[Fraction]:
        return [b / a for a, b in zip(self.deltas, self.deltas[1:])]

    def converging(self, lo=Fraction(1, 4), hi=Fraction(3, 4)) -> bool:
        """Exact agreement for every N, or strictly shrinking at rate in [lo, hi]."""
        if self.exact:
            return True
        if any(d == 0 for d in self.deltas):
            return False
        return all(lo <= r <= hi and r < 1 for r in self.ratios())


def askey_limit_deltas(n: int, x, alpha, beta, Ns: Sequence[int]) -> AskeyLimitRow:
    """|P(n, N x; alpha, beta, N) - askey_P(n, x)| for each N in ``Ns``."""
    x = as_rational(x)
    target = askey_P(n, x, alpha, beta)
    deltas = tuple(abs(P(n, M * x, ParameterSet(alpha, beta, M)) - target)
                   for M in Ns)
    return AskeyLimitRow(n, x, tuple(Ns), deltas)


def askey_limit_table(alpha, beta, n_max: int = 4,
                      xs=(Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
                      Ns=(8, 16, 32, 64)) -> list[AskeyLimitRow]:
    return [askey_limit_deltas(n, x, alpha, beta, Ns)
            for n in range(n_max + 1) for x in xs]


FAMILIES = {
    "P": P,
    "V": V,
    "monic": monic_p,
}


@dataclass(frozen=True)
class FamilyTable:
    """Row n holds member n evaluated at x = 0..N."""

    name: str
    params: object
    values: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        N = self.params.N
        writer.writerow(["n"] + [str(x) for x in range(N + 1)])
        for n, row in enumerate(self.values):
            writer.writerow([str(n)] + [format_rational(v) for v in row])
        return buf.getvalue()


def family_table(name: str, params) -> FamilyTable:
    N = params.N
    if name == "hahn":
        if not isinstance(params, HahnParameterSet):
            raise InvalidParameters("the hahn table needs a HahnParameterSet")
        rows = tuple(tuple(hahn(n, x, params) for x in range(N + 1))
                     for n in range(N + 1))
    else:
        fn = FAMILIES[name]
        rows = tuple(tuple(fn(n, x, params) for x in range(N + 1))
                     for n in range(N + 1))
    return FamilyTable(name, params, rows)


__all__ = [
    "P", "V", "hahn", "monic_mu", "monic_p", "askey_P", "FamilyTable",
    "family_table", "expand_rho_in_rational_monomials",
    "expand_V_in_rational_monomials", "evaluate_rational_monomials",
    "askey_limit_deltas", "askey_limit_table", "AskeyLimitRow",
    "leading_coefficient", "exact_degree", "divided_difference",
]
