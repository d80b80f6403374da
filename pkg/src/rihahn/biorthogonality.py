"""Weights, scalar products and exact (bi)orthogonality checks.

Covers the R_I Hahn biorthogonality, the classical Hahn orthogonality, the
parameter bridge between the two (xi = -beta-n, eta = alpha+beta) and the
Christoffel transform chain that produces the normalization h_n.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import ZeroDivisor
from .families import P, V, hahn
from .gevp import closed_form_d
from .kernel import (HahnParameterSet, ParameterSet, as_rational,
                     format_rational, pochhammer)
from .report import Report, render


# -- R_I Hahn weight --------------------------------------------------------

def weight_prefactor(p: ParameterSet) -> Fraction:
    """(-alpha-beta-N)_N / (-alpha-N)_N."""
    a, b, N = p.alpha, p.beta, p.N
    return pochhammer(-a - b - N, N) / pochhammer(-a - N, N)


def weight(x: int, p: ParameterSet) -> Fraction:
    """w_x; normalized so the weights sum to 1 (they may be negative)."""
    if not 0 <= x <= p.N:
        raise ValueError(f"x={x} outside the grid 0..{p.N}")
    a, b, N = p.alpha, p.beta, p.N
    return (weight_prefactor(p) * pochhammer(Fraction(-N), x) * pochhammer(-b, x)
            / (factorial(x) * pochhammer(-a - b - N, x)))


@dataclass(frozen=True)
class WeightVector:
    params: ParameterSet
    values: tuple

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "w"])
        for x, w in enumerate(self.values):
            writer.writerow([x, format_rational(w)])
        return buf.getvalue()


def weights(p: ParameterSet) -> WeightVector:
    return WeightVector(p, tuple(weight(x, p) for x in range(p.N + 1)))


def scalar_product(f: Sequence, g: Sequence, p: ParameterSet) -> Fraction:
    w = weights(p).values
    if len(f) != len(w) or len(g) != len(w):
        raise ValueError("grid functions must have length N+1")
    return sum((wx * fx * gx for wx, fx, gx in zip(w, f, g)), Fraction(0))


def normalization_h(n: int, p: ParameterSet) -> Fraction:
    """h_n = n! (1+alpha+beta)_n / ((-N)_n (beta)_n)."""
    a, b, N = p.alpha, p.beta, p.N
    return (factorial(n) * pochhammer(1 + a + b, n)
            / (pochhammer(Fraction(-N), n) * pochhammer(b, n)))


# -- Gram matrices ----------------------------------------------------------

@dataclass
class GramReport:
    """Full Gram matrix against the expected diagonal.

    ``violations`` lists every entry that differs from ``expected_diag[n]``
    on the diagonal or from zero off it; ``zero_norms`` flags degenerate
    diagonal entries, which the validity predicate does not rule out.
    """

    params: object
    gram: list
    expected_diag: list
    violations: list = field(default_factory=list)
    zero_norms: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @classmethod
    def build(cls, params, gram, expected_diag) -> "GramReport":
        report = cls(params, gram, list(expected_diag))
        size = len(gram)
        for n in range(size):
            for m in range(size):
                want = expected_diag[n] if n == m else Fraction(0)
                if gram[n][m] != want:
                    report.violations.append(
                        {"n": n, "m": m, "value": gram[n][m], "expected": want})
            if expected_diag[n] == 0:
                report.zero_norms.append(n)
        return report

    def to_json(self) -> dict:
        return {"params": render(self.params), "gram": render(self.gram),
                "expected_diag": render(self.expected_diag),
                "violations": render(self.violations),
                "zero_norms": self.zero_norms}


def gram_matrix(p: ParameterSet) -> GramReport:
    """Entries sum_x w_x P_n(x) V_m(x) compared with h_n delta_{nm}."""
    N = p.N
    w = weights(p).values
    Ps = [[P(n, x, p) for x in range(N + 1)] for n in range(N + 1)]
    Vs = [[V(m, x, p) for x in range(N + 1)] for m in range(N + 1)]
    gram = [[sum((w[x] * Ps[n][x] * Vs[m][x] for x in range(N + 1)), Fraction(0))
             for m in range(N + 1)] for n in range(N + 1)]
    return GramReport.build(p, gram, [normalization_h(n, p) for n in range(N + 1)])


def rational_moment_sum(n: int, m: int, p: ParameterSet) -> Fraction:
    """sum_x w_x P_n(x) / (1+beta-x)_m."""
    b = p.beta
    return sum((weight(x, p) * P(n, x, p) / pochhammer(1 + b - x, m)
                for x in range(p.N + 1)), Fraction(0))


def diagonal_moment_value(n: int, p: ParameterSet) -> Fraction:
    """(-1)^n (alpha+beta+1)_n n! / ((beta)_n (-N-alpha)_n (-beta-n)_n)."""
    a, b, N = p.alpha, p.beta, p.N
    return ((-1) ** n * pochhammer(a + b + 1, n) * factorial(n)
            / (pochhammer(b, n) * pochhammer(-N - a, n) * pochhammer(-b - n, n)))


# -- classical Hahn ---------------------------------------------------------

def hahn_weight(x: int, hp: HahnParameterSet) -> Fraction:
    xi, eta, N = hp.xi, hp.eta, hp.N
    return (pochhammer(1 + eta, N) / factorial(N) * pochhammer(Fraction(-N), x)
            * pochhammer(1 + xi, x) / (factorial(x) * pochhammer(-eta - N, x)))


def hahn_norm(n: int, hp: HahnParameterSet) -> Fraction:
    """Squared norm of H_n.

    The factor 1/(2n+xi+eta+1) cancels against the i = n factor of
    (n+xi+eta+1)_{N+1}; dropping both keeps the value finite when
    2n+xi+eta+1 = 0.
    """
    xi, eta, N = hp.xi, hp.eta, hp.N
    prod = Fraction(1)
    for i in range(N + 1):
        if i != n:
            prod *= n + xi + eta + 1 + i
    return ((-1) ** n * prod * pochhammer(eta + 1, n) * factorial(n)
            / (pochhammer(xi + 1, n) * pochhammer(Fraction(-N), n) * factorial(N)))


def hahn_gram(hp: HahnParameterSet) -> GramReport:
    N = hp.N
    w = [hahn_weight(x, hp) for x in range(N + 1)]
    H = [[hahn(n, x, hp) for x in range(N + 1)] for n in range(N + 1)]
    gram = [[sum((w[x] * H[n][x] * H[m][x] for x in range(N + 1)), Fraction(0))
             for m in range(N + 1)] for n in range(N + 1)]
    return GramReport.build(hp, gram, [hahn_norm(n, hp) for n in range(N + 1)])


def hahn_kappa(n: int, hp: HahnParameterSet) -> Fraction:
    """kappa_n = (-N)_n (xi+1)_n / (n+xi+eta+1)_n, the monic normalizer."""
    xi, eta, N = hp.xi, hp.eta, hp.N
    den = pochhammer(n + xi + eta + 1, n)
    if den == 0:
        raise ZeroDivisor(f"kappa_{n}: (n+xi+eta+1)_n vanishes")
    return pochhammer(Fraction(-N), n) * pochhammer(xi + 1, n) / den


# -- bridge between Hahn and R_I Hahn ---------------------------------------

def pochhammer_reflection_holds(a, m: int, k: int) -> bool:
    """(a-m)_k == (1-a)_m (a)_k / (1-a-k)_m."""
    a = as_rational(a)
    den = pochhammer(1 - a - k, m)
    if den == 0:
        raise ZeroDivisionError("(1-a-k)_m vanishes")
    return pochhammer(a - m, k) == pochhammer(1 - a, m) * pochhammer(a, k) / den


def _bridge_factor(n: int, x: int, b: Fraction) -> Fraction:
    # (1+beta)_{n-1} / (1+beta-x)_{n-1}, with (c)_{-1} = 1/(c-1) at n = 0.
    if n == 0:
        return (b - x) / b
    return pochhammer(1 + b, n - 1) / pochhammer(1 + b - x, n - 1)


def check_bridge(p: ParameterSet) -> Report:
    """The Hahn <-> R_I Hahn connection identities, for every n <= N.

    Checks, in order: the weight prefactor equality, H_n under the gluing
    equals P_n, the glued Hahn weight against w_x, the vanishing rational
    moments for m < n, the diagonal rational moment, the reduction of
    sum w V_n P_n to that moment, and the final value h_n.
    """
    a, b, N = p.alpha, p.beta, p.N
    rep = Report("hahn-bridge", p)
    rep.expect(weight_prefactor(p),
               pochhammer(a + b + 1, N) / pochhammer(a + 1, N),
               identity="weight-prefactor")
    w = weights(p).values
    off_grid = [Fraction(2 * j + 1, 3) for j in range(N + 2)]
    for n in range(N + 1):
        hp = HahnParameterSet.glued(n, p)
        for x in list(range(N + 1)) + off_grid:
            rep.expect(hahn(n, x, hp), P(n, x, p), identity="glued-hahn-equals-P", n=n, x=x)
        if N > 0:
            for x in range(N + 1):
                rep.expect(hahn_weight(x, hp),
                           pochhammer(a + 1, N) / factorial(N)
                           * _bridge_factor(n, x, b) * w[x],
                           identity="glued-hahn-weight", n=n, x=x)
        for m in range(n):
            rep.expect(rational_moment_sum(n, m, p), 0,
                       identity="lower-moments-vanish", n=n, m=m)
        moment = rational_moment_sum(n, n, p)
        rep.expect(moment, diagonal_moment_value(n, p), identity="diagonal-moment", n=n)
        vp = sum((w[x] * V(n, x, p) * P(n, x, p) for x in range(N + 1)),
                 Fraction(0))
        rep.expect(vp, closed_form_d(n, n, p) * pochhammer(-b - n, n) * moment,
                   identity="pairing-via-moment", n=n)
        rep.expect(vp, normalization_h(n, p), identity="pairing-equals-h", n=n)
    return rep


# -- Christoffel chain ------------------------------------------------------

def _nonzero(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise ZeroDivisor(f"{what} vanishes")
    return value


def christoffel_identities(n: int, hp: HahnParameterSet, points=None) -> Report:
    """Christoffel transform, Christoffel-Darboux form and the summed identity.

    ``hp`` carries xi; the transform relates degree n at xi to degrees n and
    n+1 at xi-1, so n+1 <= N and (xi-1, eta, N) must be valid as well.
    Identities with a 1/(x+xi) are checked multiplied out.
    """
    xi, eta, N = hp.xi, hp.eta, hp.N
    if not 0 <= n < N:
        raise ValueError(f"need 0 <= n < N, got n={n}, N={N}")
    lower = HahnParameterSet(xi - 1, eta, N)
    if points is None:
        points = [Fraction(x) for x in range(N + 1)] + \
            [Fraction(2 * j + 1, 5) for j in range(n + 3)]
    rep = Report("christoffel", hp)

    Hn_at = _nonzero(hahn(n, -xi, lower), "H_n(-xi; xi-1, eta, N)")
    W = hahn(n + 1, -xi, lower) / Hn_at
    k_n_xi = _nonzero(hahn_kappa(n, hp), "kappa_n(xi)")
    k_n1_lo = _nonzero(hahn_kappa(n + 1, lower), "kappa_{n+1}(xi-1)")
    k_n_lo = hahn_kappa(n, lower)
    norms = [_nonzero(hahn_norm(k, lower), f"h_{k}^H(xi-1)") for k in range(n + 1)]
    Y = [norms[n] * hahn(k, -xi, lower) / (norms[k] * Hn_at) for k in range(n + 1)]

    for x in points:
        kernel = hahn(n + 1, x, lower) - W * hahn(n, x, lower)
        rep.expect(k_n_xi * (x + xi) * hahn(n, x, hp), k_n1_lo * kernel,
                   identity="christoffel-transform", n=n, x=x)
        cd = sum((Y[k] * hahn(k, x, lower) for k in range(n + 1)), Fraction(0))
        rep.expect(kernel, (x + xi) * k_n_lo / k_n1_lo * cd,
                   identity="christoffel-darboux", n=n, x=x)

    lhs = sum((hahn_weight(x, lower) * hahn(n, x, hp) for x in range(N + 1)),
              Fraction(0))
    rep.expect(lhs, k_n_lo / k_n_xi * norms[n] / Hn_at, identity="summed-transform", n=n)
    return rep


def christoffel_chain_check(n: int, p: ParameterSet) -> Report:
    """Christoffel chain at the glued parameters xi = -beta-n, eta = alpha+beta.

    Adds the closed form of H_n(-xi; xi-1, eta, N), the rewriting of the
    summed identity's left side through w_x, and the resulting diagonal
    rational moment.
    """
    a, b, N = p.alpha, p.beta, p.N
    hp = HahnParameterSet.glued(n, p)
    rep = christoffel_identities(n, hp)
    rep.identity = "christoffel-chain"
    rep.params = {"alpha": a, "beta": b, "N": N, "n": n}
    lower = HahnParameterSet(hp.xi - 1, hp.eta, N)
    rep.expect(hahn(n, -hp.xi, lower),
               pochhammer(-N - a, n) / pochhammer(Fraction(-N), n),
               identity="hahn-at-minus-xi", n=n)
    lhs = sum((hahn_weight(x, lower) * hahn(n, x, hp) for x in range(N + 1)),
              Fraction(0))
    rep.expect(lhs, pochhammer(1 + a, N) * pochhammer(1 + b, n) / factorial(N)
               * rational_moment_sum(n, n, p), identity="summed-transform-via-w", n=n)
    rep.expect(rational_moment_sum(n, n, p), diagonal_moment_value(n, p),
               identity="diagonal-moment", n=n)
    return rep


__all__ = [
    "weight", "weights", "WeightVector", "weight_prefactor", "scalar_product",
    "normalization_h", "GramReport", "gram_matrix", "rational_moment_sum",
    "diagonal_moment_value", "hahn_weight", "hahn_norm", "hahn_gram", "hahn_kappa",
    "check_bridge", "christoffel_identities", "christoffel_chain_check",
    "pochhammer_reflection_holds",
]
