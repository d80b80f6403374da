"""Exact scalar substrate: rationals, Pochhammer symbols, terminating series.

Every scalar in the library is a :class:`fractions.Fraction`.  The series
evaluators are written against the field operations only, so they accept
any exact field element that supports ``+ - * /`` and ``==`` (the q-side
uses :class:`rihahn.qfield.QElem`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import InvalidParameters, NonTerminating, PoleInDenominator

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing anything inexact.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats and decimal strings are rejected so no precision is lost silently.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value) -> str:
    """Canonical ``p/q`` string, ``p`` alone when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value) -> bool:
    return Fraction(value).denominator == 1


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("Pochhammer index must be non-negative")
    result = Fraction(1) if isinstance(a, (int, Fraction)) else a * 0 + 1
    for i in range(n):
        result = result * (a + i)
    return result


def q_pochhammer(a, q, n: int):
    """(a; q)_n = prod_{i<n} (1 - a q^i), with (a; q)_0 = 1."""
    if n < 0:
        raise ValueError("q-Pochhammer index must be non-negative")
    result = Fraction(1) if isinstance(a, (int, Fraction)) else a * 0 + 1
    qi = Fraction(1)
    for _ in range(n):
        result = result * (1 - a * qi)
        qi = qi * q
    return result


def q_pochhammer_multi(params: Iterable, q, n: int):
    """(a_1, ..., a_k; q)_n as the product of the single symbols."""
    result = Fraction(1)
    for a in params:
        result = q_pochhammer(a, q, n) * result
    return result


def termination_index(num: Sequence) -> int:
    """Smallest m such that -m is a numerator parameter."""
    ms = [-int(Fraction(a)) for a in num
          if is_integer(a) and Fraction(a) <= 0]
    if not ms:
        raise NonTerminating(
            "no numerator parameter is a non-positive integer")
    return min(ms)


def hyp_terminating(num: Sequence, den: Sequence, z) -> Fraction:
    """Terminating generalized hypergeometric sum rFs(num; den; z).

    The sum stops at the smallest m for which -m appears among the
    numerator parameters.  Raises :class:`PoleInDenominator` when a
    denominator Pochhammer vanishes before that point.
    """
    num = [as_rational(a) for a in num]
    den = [as_rational(b) for b in den]
    z = as_rational(z)
    m = termination_index(num)
    total = Fraction(0)
    term = Fraction(1)
    for k in range(m + 1):
        total += term
        if k == m:
            break
        ratio = z / (k + 1)
        for a in num:
            ratio *= a + k
        for b in den:
            if b + k == 0:
                raise PoleInDenominator(
                    f"denominator parameter {format_rational(b)} gives a "
                    f"vanishing Pochhammer at k={k + 1} <= {m}")
            ratio /= b + k
        term *= ratio
    return total


def _rational_value(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    to_rational = getattr(v, "to_rational", None)
    return to_rational() if to_rational is not None else None


def q_termination_index(num: Sequence, q) -> int:
    """Smallest m with q^{-m} among the numerator parameters (0 < q < 1)."""
    q = as_rational(q)
    if not 0 < q < 1:
        raise ValueError("basic hypergeometric series need 0 < q < 1")
    best = None
    for a in num:
        r = _rational_value(a)
        if r is None or r < 1:
            continue
        m, qm = 0, Fraction(1)
        while qm < r:
            m += 1
            qm /= q
        if qm == r and (best is None or m < best):
            best = m
    if best is None:
        raise NonTerminating("no numerator parameter equals q^{-m}")
    return best


def basic_hyp_terminating(num: Sequence, den: Sequence, q, z):
    """Terminating basic hypergeometric sum r phi s(num; den; q, z).

    Uses the standard normalization: term k carries
    ``[(-1)^k q^{k(k-1)/2}]^{1+s-r} z^k / (q; q)_k``.
    """
    q = as_rational(q)
    m = q_termination_index(num, q)
    excess = 1 + len(den) - len(num)
    total = 0
    term = Fraction(1)
    qk = Fraction(1)  # q^k
    for k in range(m + 1):
        total = term + total
        if k == m:
            break
        ratio = z / (1 - qk * q)
        if excess:
            ratio = ratio * (-qk) ** excess
        for a in num:
            ratio = ratio * (1 - a * qk)
        for b in den:
            factor = 1 - b * qk
            if factor == 0:
                raise PoleInDenominator(
                    f"denominator q-Pochhammer vanishes at k={k + 1} <= {m}")
            ratio = ratio / factor
        term = term * ratio
        qk *= q
    return total


def q_poch_shift_identity_check(z, q, n: int, k: int) -> bool:
    """Check (z;q)_{n-k} = (z;q)_n / (q^{1-n}/z;q)_k (-q/z)^k q^{C(k,2)-nk}."""
    z, q = as_rational(z), as_rational(q)
    if k > n or k < 0:
        raise ValueError("need 0 <= k <= n")
    if z == 0:
        raise ZeroDivisionError("identity needs z != 0")
    denom = q_pochhammer(q ** (1 - n) / z, q, k)
    if denom == 0:
        raise ZeroDivisionError("(q^{1-n}/z; q)_k vanishes")
    rhs = (q_pochhammer(z, q, n) / denom * (-q / z) ** k
           * q ** (k * (k - 1) // 2 - n * k))
    return q_pochhammer(z, q, n - k) == rhs


def _integers_in(value: Fraction, lo: int, hi: int) -> bool:
    return value.denominator == 1 and lo <= value <= hi


def parameter_violations(alpha, beta, N: int) -> list[str]:
    """Names of every pole condition hit by (alpha, beta, N); empty if valid.

    The excluded sets are the union of the poles of P_n, V_n, w_x, rho_n,
    h_n, the recurrence coefficients and the adjoint operators.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    out = []
    if not isinstance(N, int) or N < 0:
        return [f"N must be a non-negative integer, got {N!r}"]
    if _integers_in(beta, -N, N - 1):
        out.append(f"beta={format_rational(beta)} is an integer in "
                   f"[-N, N-1] = [{-N}, {N - 1}]")
    if _integers_in(alpha, -N - 1, -1):
        out.append(f"alpha={format_rational(alpha)} is an integer in "
                   f"[-N-1, -1] = [{-N - 1}, -1]")
    if _integers_in(alpha + beta, -N, -1):
        out.append(f"alpha+beta={format_rational(alpha + beta)} is an "
                   f"integer in [-N, -1] = [{-N}, -1]")
    return out


def valid(alpha, beta, N: int) -> bool:
    return not parameter_violations(alpha, beta, N)


@dataclass(frozen=True)
class ParameterSet:
    """Validated (alpha, beta, N) for the R_I Hahn family."""

    alpha: Fraction
    beta: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        problems = parameter_violations(self.alpha, self.beta, self.N)
        if problems:
            raise InvalidParameters("; ".join(problems))

    @staticmethod
    def valid(alpha, beta, N: int) -> bool:
        return valid(alpha, beta, N)

    def shifted(self) -> "ParameterSet":
        """The (alpha+1, beta-1, N) set appearing in the shift identities."""
        return ParameterSet(self.alpha + 1, self.beta - 1, self.N)

    def to_dict(self) -> dict:
        return {"alpha": format_rational(self.alpha),
                "beta": format_rational(self.beta), "N": self.N}


def hahn_violations(xi, eta, N: int) -> list[str]:
    xi, eta = as_rational(xi), as_rational(eta)
    if not isinstance(N, int) or N < 0:
        return [f"N must be a non-negative integer, got {N!r}"]
    out = []
    if _integers_in(xi, -N, -1):
        out.append(f"xi={format_rational(xi)} is an integer in [-N, -1]")
    if _integers_in(eta, -N, -1):
        out.append(f"eta={format_rational(eta)} is an integer in [-N, -1]")
    return out


@dataclass(frozen=True)
class HahnParameterSet:
    """Validated (xi, eta, N) for the classical Hahn polynomials."""

    xi: Fraction
    eta: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "xi", as_rational(self.xi))
        object.__setattr__(self, "eta", as_rational(self.eta))
        problems = hahn_violations(self.xi, self.eta, self.N)
        if problems:
            raise InvalidParameters("; ".join(problems))

    @classmethod
    def glued(cls, n: int, p: ParameterSet) -> "HahnParameterSet":
        """Hahn parameters xi = -beta-n, eta = alpha+beta for degree n."""
        return cls(-p.beta - n, p.alpha + p.beta, p.N)

    def to_dict(self) -> dict:
        return {"xi": format_rational(self.xi),
                "eta": format_rational(self.eta), "N": self.N}


__all__ = [
    "Rational", "as_rational", "format_rational", "factorial", "pochhammer",
    "q_pochhammer", "q_pochhammer_multi", "hyp_terminating",
    "basic_hyp_terminating", "q_poch_shift_identity_check",
    "ParameterSet", "HahnParameterSet", "valid", "parameter_violations",
]
