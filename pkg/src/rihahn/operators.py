"""Difference operators on the grid x = 0..N and their banded matrices.

Operators act on grid functions (tuples of Fractions of length N+1) as

    (X f)(x) = plus(x) f(x+1) + minus(x) f(x-1) + diag(x) f(x).

Off-grid values are never read: a shift to x = -1 or x = N+1 is only legal
when its coefficient vanishes there.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BoundaryLeak, InvalidParameters
from .kernel import ParameterSet, format_rational, pochhammer
from .report import Report

GridFunction = tuple  # tuple[Fraction, ...] of length N + 1

Coefficient = Callable[[int], Fraction]


def _zero(x: int) -> Fraction:
    return Fraction(0)


@dataclass(frozen=True)
class DifferenceOperator:
    name: str
    params: ParameterSet
    plus: Coefficient = _zero
    minus: Coefficient = _zero
    diag: Coefficient = _zero

    def __call__(self, f: Sequence) -> GridFunction:
        return apply_operator(self, f)

    def coefficient_table(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [(self.plus(x), self.minus(x), self.diag(x))
                for x in range(self.params.N + 1)]


def _check(p) -> ParameterSet:
    if not isinstance(p, ParameterSet):
        raise InvalidParameters(f"expected a ParameterSet, got {p!r}")
    return p


def make_L(p: ParameterSet) -> DifferenceOperator:
    p = _check(p)
    N, a = p.N, p.alpha
    return DifferenceOperator(
        "L", p,
        plus=lambda x: Fraction(N - x),
        diag=lambda x: x - N - a - 1)


def abc(p: ParameterSet):
    """The coefficient functions A, B, C of the operator M."""
    N, a, b = p.N, p.alpha, p.beta

    def A(x):
        return (N - x) * (x - b + 1)

    def B(x):
        return x * (a + b + N + 1 - x)

    def C(x):
        return -(A(x) + B(x))

    return A, B, C


def make_M(p: ParameterSet) -> DifferenceOperator:
    A, B, C = abc(_check(p))
    return DifferenceOperator("M", p, plus=A, minus=B, diag=C)


def make_Y(p: ParameterSet) -> DifferenceOperator:
    p = _check(p)
    N, a = p.N, p.alpha
    return DifferenceOperator(
        "Y", p,
        plus=lambda x: Fraction(x * (N - x)),
        diag=lambda x: x * (x - N - a - 1))


def make_adjoint_L(p: ParameterSet) -> DifferenceOperator:
    p = _check(p)
    N, a, b = p.N, p.alpha, p.beta
    return DifferenceOperator(
        "L*", p,
        minus=lambda x: -x * (1 + a + b + N - x) / (1 + b - x),
        diag=lambda x: x - N - a - 1)


def make_adjoint_M(p: ParameterSet) -> DifferenceOperator:
    p = _check(p)
    N, a, b = p.N, p.alpha, p.beta
    return DifferenceOperator(
        "M*", p,
        plus=lambda x: (N - x) * (x - b),
        minus=lambda x: x * (b - x) * (1 + a + b + N - x) / (1 + b - x),
        diag=lambda x: 2 * x * x - (2 * N + 2 * b + a) * x + (b - 1) * N)


OPERATORS = {"L": make_L, "M": make_M, "Y": make_Y,
             "Lstar": make_adjoint_L, "Mstar": make_adjoint_M}


def apply_operator(op: DifferenceOperator, f: Sequence) -> GridFunction:
    N = op.params.N
    if len(f) != N + 1:
        raise ValueError(f"grid function has length {len(f)}, expected {N + 1}")
    out = []
    for x in range(N + 1):
        value = op.diag(x) * f[x]
        cp = op.plus(x)
        if cp:
            if x == N:
                raise BoundaryLeak(f"{op.name}: T+ coefficient {cp} at x=N")
            value += cp * f[x + 1]
        cm = op.minus(x)
        if cm:
            if x == 0:
                raise BoundaryLeak(f"{op.name}: T- coefficient {cm} at x=0")
            value += cm * f[x - 1]
        out.append(Fraction(value))
    return tuple(out)


def phi_basis(n: int, N: int) -> GridFunction:
    """phi_n(x) = (-x)_n on the grid; zero outside 0..N."""
    if n < 0 or n > N:
        return tuple(Fraction(0) for _ in range(N + 1))
    return tuple(pochhammer(Fraction(-x), n) for x in range(N + 1))


def rho_basis(n: int, p: ParameterSet) -> GridFunction:
    """rho_n(x) = (-x)_n / (1+beta-x)_n on the grid."""
    p = _check(p)
    N, b = p.N, p.beta
    if n < 0 or n > N:
        return tuple(Fraction(0) for _ in range(N + 1))
    return tuple(pochhammer(Fraction(-x), n) / pochhammer(1 + b - x, n)
                 for x in range(N + 1))


def _forward_solve(basis: Sequence[GridFunction], g: Sequence) -> list[Fraction]:
    # basis[k][x] == 0 for x < k, so the system is lower triangular in (x, k).
    coeffs: list[Fraction] = []
    for x in range(len(g)):
        acc = Fraction(g[x])
        for k, c in enumerate(coeffs):
            acc -= c * basis[k][x]
        coeffs.append(acc / basis[x][x])
    return coeffs


def expand_in_phi(g: Sequence, N: int) -> list[Fraction]:
    """Coefficients c_k with g = sum_k c_k phi_k on the grid."""
    return _forward_solve([phi_basis(k, N) for k in range(N + 1)], g)


def expand_in_rho(g: Sequence, p: ParameterSet) -> list[Fraction]:
    """Coefficients d_k with g = sum_k d_k rho_k on the grid."""
    return _forward_solve([rho_basis(k, p) for k in range(p.N + 1)], g)


def combine(coeffs: Sequence, basis: Sequence[GridFunction]) -> GridFunction:
    n = len(basis[0])
    return tuple(sum((c * f[x] for c, f in zip(coeffs, basis)), Fraction(0))
                 for x in range(n))


@dataclass(frozen=True)
class BasisMatrix:
    """Tridiagonal (N+1)x(N+1) matrix; column n expands X applied to basis_n.

    ``sub[i]`` is entry (i+1, i), ``main[i]`` entry (i, i) and ``sup[i]``
    entry (i, i+1).
    """

    order: int
    basis_tag: str
    sub: tuple
    main: tuple
    sup: tuple

    def __post_init__(self):
        if self.basis_tag not in ("phi", "rho", "monomial"):
            raise ValueError(f"unknown basis tag {self.basis_tag!r}")
        n = self.order
        if len(self.main) != n or len(self.sub) != max(n - 1, 0) \
                or len(self.sup) != max(n - 1, 0):
            raise ValueError("band lengths do not match the order")

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if i == j:
            return self.main[i]
        if i == j + 1:
            return self.sub[j]
        if j == i + 1:
            return self.sup[i]
        return Fraction(0)

    def to_dense(self) -> list[list[Fraction]]:
        n = self.order
        return [[self[i, j] for j in range(n)] for i in range(n)]

    @classmethod
    def from_dense(cls, rows, basis_tag: str) -> "BasisMatrix":
        n = len(rows)
        for i in range(n):
            for j in range(n):
                if abs(i - j) > 1 and rows[i][j] != 0:
                    raise ValueError(f"entry ({i}, {j}) lies outside the three bands")
        return cls(n, basis_tag,
                   tuple(Fraction(rows[i + 1][i]) for i in range(n - 1)),
                   tuple(Fraction(rows[i][i]) for i in range(n)),
                   tuple(Fraction(rows[i][i + 1]) for i in range(n - 1)))

    def __matmul__(self, other):
        if isinstance(other, BasisMatrix):
            if other.order != self.order or other.basis_tag != self.basis_tag:
                raise ValueError("incompatible banded matrices")
            n = self.order
            rows = [[sum((self[i, k] * other[k, j]
                          for k in range(max(0, j - 1), min(n, j + 2))),
                         Fraction(0)) for j in range(n)] for i in range(n)]
            return BasisMatrix.from_dense(rows, self.basis_tag)
        vec = list(other)
        if len(vec) != self.order:
            raise ValueError("vector length does not match the order")
        n = self.order
        return [sum((self[i, k] * vec[k] for k in range(max(0, i - 1), min(n, i + 2))),
                    Fraction(0)) for i in range(n)]

    def to_json(self) -> dict:
        return {"order": self.order, "basis_tag": self.basis_tag,
                "sub": [format_rational(v) for v in self.sub],
                "main": [format_rational(v) for v in self.main],
                "super": [format_rational(v) for v in self.sup]}


def eta(p: ParameterSet):
    """The six coefficient families of the phi-basis actions, as functions of n."""
    N, a, b = p.N, p.alpha, p.beta
    return {
        1: lambda n: -(n + a + 1),
        2: lambda n: Fraction(n * (n - N - 1)),
        3: lambda n: -n * (n + a + 1),
        4: lambda n: n * (n - b) * (n - N - 1),
        5: lambda n: -n * (2 * n + a - N),
        6: lambda n: Fraction(n * (n - 1) * (n - N - 1)),
    }


def chi(p: ParameterSet):
    """The five coefficient families of the rho-basis actions of L*, M*."""
    N, a = p.N, p.alpha
    return {
        1: lambda n: a + N - n,
        2: lambda n: -(1 + a + N - n),
        3: lambda n: (a + N - n) * (1 + n),
        4: lambda n: -N * (2 * n + 1) + n * (2 * n - a),
        5: lambda n: Fraction(n * (1 + N - n)),
    }


def matrix_in_phi_basis(which: str, p: ParameterSet) -> BasisMatrix:
    p = _check(p)
    N = p.N
    e = eta(p)
    if which == "L":
        sub, main, sup = [0] * N, [e[1](n) for n in range(N + 1)], \
            [e[2](n) for n in range(1, N + 1)]
    elif which == "M":
        sub, main, sup = [0] * N, [e[3](n) for n in range(N + 1)], \
            [e[4](n) for n in range(1, N + 1)]
    elif which == "Y":
        sub = [-e[1](n) for n in range(N)]
        main = [e[5](n) for n in range(N + 1)]
        sup = [e[6](n) for n in range(1, N + 1)]
    else:
        raise ValueError(f"no phi-basis matrix for {which!r}")
    return BasisMatrix(N + 1, "phi", tuple(map(Fraction, sub)),
                       tuple(map(Fraction, main)), tuple(map(Fraction, sup)))


def matrix_in_rho_basis(which: str, p: ParameterSet) -> BasisMatrix:
    p = _check(p)
    N, a = p.N, p.alpha
    c = chi(p)
    if which == "Lstar":
        sub = [c[1](n) for n in range(N)]
        main = [c[2](n) for n in range(N + 1)]
        sup = [0] * N
    elif which == "Mstar":
        sub = [c[3](n) for n in range(N)]
        main = [c[4](n) for n in range(N + 1)]
        sup = [c[5](n) for n in range(1, N + 1)]
    elif which == "Zstar":
        sub = [0] * N
        main = [Fraction(n) for n in range(N + 1)]
        sup = [-n * (1 + N - n) / (1 + a + N - n) for n in range(1, N + 1)]
    else:
        raise ValueError(f"no rho-basis matrix for {which!r}")
    return BasisMatrix(N + 1, "rho", tuple(map(Fraction, sub)),
                       tuple(map(Fraction, main)), tuple(map(Fraction, sup)))


def scalar_product(f: Sequence, g: Sequence, p: ParameterSet) -> Fraction:
    """sum_x w_x f(x) g(x) with the normalized weight of :mod:`rihahn.biorthogonality`."""
    from .biorthogonality import weights
    w = weights(p).values
    if len(f) != len(w) or len(g) != len(w):
        raise ValueError("grid functions must have length N+1")
    return sum((wx * fx * gx for wx, fx, gx in zip(w, f, g)), Fraction(0))


def random_grid_function(N: int, rng: random.Random, bound: int = 20) -> GridFunction:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                 for _ in range(N + 1))


def adjoint_check(op: DifferenceOperator, op_star: DifferenceOperator,
                  p: ParameterSet, trials: int, seed: int = 0) -> bool:
    """True iff (f, op g) == (op_star f, g) on ``trials`` random pairs."""
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_grid_function(p.N, rng)
        g = random_grid_function(p.N, rng)
        if scalar_product(f, op(g), p) != scalar_product(op_star(f), g, p):
            return False
    return True


def adjoint_report(p: ParameterSet, trials: int = 50, seed: int = 0):
    """(f, X g) = (X* f, g) for X in {L, M}, recording each failing pair."""
    rep = Report("adjoint", p)
    for name, op, op_star in (("L", make_L(p), make_adjoint_L(p)),
                              ("M", make_M(p), make_adjoint_M(p))):
        rng = random.Random(seed)
        for t in range(trials):
            f = random_grid_function(p.N, rng)
            g = random_grid_function(p.N, rng)
            rep.expect(scalar_product(f, op(g), p),
                       scalar_product(op_star(f), g, p), operator=name, trial=t)
    return rep


__all__ = [
    "GridFunction", "DifferenceOperator", "BasisMatrix", "make_L", "make_M",
    "make_Y", "make_adjoint_L", "make_adjoint_M", "apply_operator",
    "phi_basis", "rho_basis", "expand_in_phi", "expand_in_rho",
    "matrix_in_phi_basis", "matrix_in_rho_basis", "adjoint_check",
    "adjoint_report",
    "scalar_product", "eta", "chi",
]
