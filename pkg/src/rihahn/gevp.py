"""The pencil M - lambda L in the phi basis and the adjoint problem Z* V = n V.

Both problems are bidiagonal, so eigenvalues are diagonal ratios and
eigenvectors follow from two-term recurrences.  Each solver also evaluates
the closed-form coefficients and refuses to return if the two disagree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .kernel import ParameterSet, format_rational, pochhammer
from .operators import (BasisMatrix, apply_operator, combine, make_L, make_M,
                        matrix_in_phi_basis, matrix_in_rho_basis, phi_basis,
                        rho_basis)


class OracleMismatch(AssertionError):
    """Recurrence and closed form disagree; this is a bug, not bad input."""


@dataclass(frozen=True)
class GEVPSolution:
    n: int
    eigenvalue: Fraction
    coefficients: tuple
    basis_tag: str

    def to_json(self) -> dict:
        return {"n": self.n, "eigenvalue": format_rational(self.eigenvalue),
                "basis_tag": self.basis_tag,
                "coefficients": [format_rational(c) for c in self.coefficients]}


def bidiagonal_gevp_eigenvalues(p: ParameterSet) -> list[Fraction]:
    L = matrix_in_phi_basis("L", p)
    M = matrix_in_phi_basis("M", p)
    return [M.main[n] / L.main[n] for n in range(p.N + 1)]


def closed_form_c(n: int, k: int, p: ParameterSet) -> Fraction:
    if k > n:
        return Fraction(0)
    a, b, N = p.alpha, p.beta, p.N
    return (pochhammer(Fraction(-n), k) * pochhammer(a + 1, k)
            / (factorial(k) * pochhammer(Fraction(-N), k) * pochhammer(1 - b - n, k)))


def closed_form_d(n: int, k: int, p: ParameterSet) -> Fraction:
    if k > n:
        return Fraction(0)
    a, N = p.alpha, p.N
    return (pochhammer(Fraction(-n), k) * pochhammer(-a - N, k)
            / (factorial(k) * pochhammer(Fraction(-N), k)))


def _check_index(n: int, p: ParameterSet):
    if not 0 <= n <= p.N:
        raise ValueError(f"index n={n} outside 0..{p.N}")


def recurrence_c(n: int, p: ParameterSet) -> list[Fraction]:
    """c_{n,k} from (k+1)(k-N)(k+1-beta-n) c_{k+1} = (k-n)(k+alpha+1) c_k."""
    _check_index(n, p)
    a, b, N = p.alpha, p.beta, p.N
    c = [Fraction(1)]
    for k in range(N):
        rhs = (k - n) * (k + a + 1) * c[k]
        c.append(rhs / ((k + 1) * (k - N) * (k + 1 - b - n)) if rhs else Fraction(0))
    return c


def recurrence_d(n: int, p: ParameterSet) -> list[Fraction]:
    """d_{n,k} from (k-n) d_k = (k+1)(k-N)/(k-alpha-N) d_{k+1}."""
    _check_index(n, p)
    a, N = p.alpha, p.N
    d = [Fraction(1)]
    for k in range(N):
        rhs = (k - n) * d[k]
        d.append(rhs * (k - a - N) / ((k + 1) * (k - N)) if rhs else Fraction(0))
    return d


def c_recurrence_residuals(n: int, c, p: ParameterSet) -> list[Fraction]:
    """Residual of the c-recurrence for k = 0..N, with c_{N+1} = 0."""
    a, b, N = p.alpha, p.beta, p.N
    ext = list(c) + [Fraction(0)]
    return [(k + 1) * (k - N) * (k + 1 - b - n) * ext[k + 1]
            - (k - n) * (k + a + 1) * ext[k] for k in range(N + 1)]


def d_recurrence_residuals(n: int, d, p: ParameterSet) -> list[Fraction]:
    a, N = p.alpha, p.N
    ext = list(d) + [Fraction(0)]
    # at alpha = 0 the k = N term is 0/0 against d_{N+1} = 0; drop it
    return [(k - n) * ext[k]
            - ((k + 1) * (k - N) / (k - a - N) * ext[k + 1] if ext[k + 1] else 0)
            for k in range(N + 1)]


def solve_P_coefficients(n: int, p: ParameterSet) -> GEVPSolution:
    c = recurrence_c(n, p)
    closed = [closed_form_c(n, k, p) for k in range(p.N + 1)]
    if c != closed:
        raise OracleMismatch(f"c-coefficients disagree for n={n}, {p}")
    if any(c_recurrence_residuals(n, c, p)):
        raise OracleMismatch(f"c-recurrence not satisfied for n={n}, {p}")
    return GEVPSolution(n, Fraction(n), tuple(c), "phi")


def solve_V_coefficients(n: int, p: ParameterSet) -> GEVPSolution:
    d = recurrence_d(n, p)
    closed = [closed_form_d(n, k, p) for k in range(p.N + 1)]
    if d != closed:
        raise OracleMismatch(f"d-coefficients disagree for n={n}, {p}")
    if any(d_recurrence_residuals(n, d, p)):
        raise OracleMismatch(f"d-recurrence not satisfied for n={n}, {p}")
    return GEVPSolution(n, Fraction(n), tuple(d), "rho")


def P_grid(n: int, p: ParameterSet) -> tuple:
    """P_n on the grid assembled from its phi-expansion."""
    sol = solve_P_coefficients(n, p)
    return combine(sol.coefficients, [phi_basis(k, p.N) for k in range(p.N + 1)])


def V_grid(n: int, p: ParameterSet) -> tuple:
    sol = solve_V_coefficients(n, p)
    return combine(sol.coefficients, [rho_basis(k, p) for k in range(p.N + 1)])


def gevp_residual(n: int, p: ParameterSet) -> tuple:
    """M P_n - n L P_n on the grid; identically zero."""
    Pn = P_grid(n, p)
    MP = apply_operator(make_M(p), Pn)
    LP = apply_operator(make_L(p), Pn)
    return tuple(m - n * l for m, l in zip(MP, LP))


def pencil_residual(n: int, p: ParameterSet) -> list[Fraction]:
    """(M - n L) c_n in phi-coordinates, using the banded matrices."""
    c = solve_P_coefficients(n, p).coefficients
    M = matrix_in_phi_basis("M", p) @ c
    L = matrix_in_phi_basis("L", p) @ c
    return [m - n * l for m, l in zip(M, L)]


def zstar_residual(n: int, p: ParameterSet) -> list[Fraction]:
    """Z* d_n - n d_n in rho-coordinates."""
    d = solve_V_coefficients(n, p).coefficients
    return [z - n * v for z, v in zip(matrix_in_rho_basis("Zstar", p) @ d, d)]


def _lower_bidiagonal_solve(mat: BasisMatrix, rhs) -> list[Fraction]:
    out: list[Fraction] = []
    for i in range(mat.order):
        acc = Fraction(rhs[i])
        if i:
            acc -= mat.sub[i - 1] * out[i - 1]
        out.append(acc / mat.main[i])
    return out


def adjoint_eigenfunction(n: int, p: ParameterSet) -> list[Fraction]:
    """rho-coordinates of P*_n, the solution of L* P*_n = V_n."""
    d = solve_V_coefficients(n, p).coefficients
    return _lower_bidiagonal_solve(matrix_in_rho_basis("Lstar", p), d)


def adjoint_gevp_residual(n: int, p: ParameterSet) -> list[Fraction]:
    """(M* - n L*) P*_n in rho-coordinates; identically zero."""
    pstar = adjoint_eigenfunction(n, p)
    M = matrix_in_rho_basis("Mstar", p) @ pstar
    L = matrix_in_rho_basis("Lstar", p) @ pstar
    return [m - n * l for m, l in zip(M, L)]


__all__ = [
    "GEVPSolution", "OracleMismatch", "bidiagonal_gevp_eigenvalues",
    "solve_P_coefficients", "solve_V_coefficients", "gevp_residual",
    "pencil_residual", "zstar_residual", "adjoint_gevp_residual",
    "adjoint_eigenfunction", "closed_form_c", "closed_form_d",
    "recurrence_c", "recurrence_d", "P_grid", "V_grid",
]
