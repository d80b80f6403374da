"""Basic hypergeometric families whose limits give the R_I Hahn system.

The finite-e family U~_n is a terminating 4phi3; as e -> infinity the pair
(U~_n, V~_m) becomes a pair of 3phi2's that are biorthogonal for the
weight w~_x, and as q -> 1 these tend to V_n, P_m, w_x, h_n up to explicit
prefactors under a = beta - N, d = -alpha - N.

Powers q^r with non-integral r are handled exactly in Q(q^(1/D)) where D
is the common denominator of a and d (see :mod:`rihahn.qfield`).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Optional, Sequence

from .biorthogonality import GramReport, normalization_h, weight
from .errors import InvalidParameters
from .families import P, V
from .kernel import (ParameterSet, as_rational, basic_hyp_terminating,
                     format_rational, hyp_terminating, pochhammer,
                     q_pochhammer)
from .qfield import QElem, compare_reals, real_abs, root_field, to_real_string
from .report import render


@dataclass(frozen=True)
class QParameterSet:
    """(a, d, q, N) plus an optional finite e, with 0 < q < 1."""

    a: Fraction
    d: Fraction
    q: Fraction
    N: int
    e: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("a", "d", "q"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.e is not None:
            object.__setattr__(self, "e", as_rational(self.e))
            if self.e == 0:
                raise InvalidParameters("e must be nonzero")
        if not 0 < self.q < 1:
            raise InvalidParameters("q must satisfy 0 < q < 1")
        if not isinstance(self.N, int) or self.N < 0:
            raise InvalidParameters("N must be a non-negative integer")
        problems = self._pole_problems()
        if problems:
            raise InvalidParameters("; ".join(problems))

    @classmethod
    def from_params(cls, p: ParameterSet, q, e=None) -> "QParameterSet":
        """The map a = beta - N, d = -alpha - N."""
        return cls(p.beta - p.N, -p.alpha - p.N, as_rational(q), p.N, e)

    @property
    def field(self):
        return root_field(self.q, lcm(self.a.denominator, self.d.denominator))

    def Q(self, r) -> QElem:
        """q ** r inside the parameter field."""
        return self.field.power(r)

    def without_e(self) -> "QParameterSet":
        return QParameterSet(self.a, self.d, self.q, self.N)

    def with_e(self, e) -> "QParameterSet":
        return QParameterSet(self.a, self.d, self.q, self.N, e)

    def _pole_problems(self) -> list[str]:
        a, d, N = self.a, self.d, self.N
        out = []
        # 1 - q^r vanishes iff r == 0
        exps = {
            "(q^{a+1-d};q)_n": [a + 1 - d + i for i in range(N)],
            "(q^d;q)_N": [d + i for i in range(N)],
            "(q^{-N-a+d};q)_x": [-N - a + d + i for i in range(N)],
            "(q^{N-x+a+1};q)_k": [N - x + a + 1 + i
                                  for x in range(N + 1) for i in range(x)],
            "(q^{-N-m+1-a};q)_k": [-N - m + 1 - a + i
                                   for m in range(N + 1) for i in range(m)],
        }
        for label, rs in exps.items():
            if any(r == 0 for r in rs):
                out.append(f"{label} vanishes")
        if self.e is not None:
            F, e = self.field, self.e
            for label, base in (("(q^{a+1}/e;q)_n", F.power(a + 1) / e),
                                ("(e;q)_N", F.element(e))):
                if q_pochhammer(base, self.q, N) == 0:
                    out.append(f"{label} vanishes")
            for n in range(N + 1):
                base = F.power(d - n - a) * e
                if q_pochhammer(base, self.q, n) == 0:
                    out.append(f"(q^(d-n-a) e;q)_k vanishes for n={n}")
        return out

    def to_dict(self) -> dict:
        out = {"a": format_rational(self.a), "d": format_rational(self.d),
               "q": format_rational(self.q), "N": self.N}
        if self.e is not None:
            out["e"] = format_rational(self.e)
        return out


def _qp(base, qp: QParameterSet, n: int):
    return q_pochhammer(base, qp.q, n)


def _require_e(qp: QParameterSet):
    if qp.e is None:
        raise InvalidParameters("finite-e family needs e")
    return qp.e


def u_tilde(n: int, x: int, qp: QParameterSet):
    """Finite-e U~_n(x): prefactor times a terminating 4phi3 at argument q."""
    e = _require_e(qp)
    a, d, N, Q = qp.a, qp.d, qp.N, qp.Q
    pre = (_qp(Q(a + 1), qp, n) * _qp(Q(a + 1 - d) / e, qp, n)
           / (_qp(Q(a + 1 - d), qp, n) * _qp(Q(a + 1) / e, qp, n)))
    series = basic_hyp_terminating(
        [Q(-n), Q(-x), Q(d), qp.field.element(e)],
        [Q(-N), Q(N - x + a + 1), Q(d - n - a) * e], qp.q, qp.q)
    return pre * series


def u_tilde_einf(n: int, x: int, qp: QParameterSet):
    a, d, N, Q = qp.a, qp.d, qp.N, qp.Q
    pre = _qp(Q(a + 1), qp, n) / _qp(Q(a + 1 - d), qp, n)
    return pre * basic_hyp_terminating(
        [Q(-n), Q(-x), Q(d)], [Q(-N), Q(N - x + a + 1)], qp.q,
        Q(1 + n + a - d))


def v_tilde_einf(m: int, x: int, qp: QParameterSet):
    a, d, N, Q = qp.a, qp.d, qp.N, qp.Q
    pre = _qp(Q(a + N), qp, m) / _qp(Q(a + 1 - d), qp, m)
    return pre * basic_hyp_terminating(
        [Q(-m), Q(-x), Q(-N + 1 - d)], [Q(-N), Q(-N - m + 1 - a)], qp.q, qp.q)


def w_einf(x: int, qp: QParameterSet):
    a, d, N, Q = qp.a, qp.d, qp.N, qp.Q
    q = qp.field.element(qp.q)
    pre = (_qp(Q(a + 1 - d), qp, N) * _qp(Q(-N), qp, N)
           / (_qp(Q(d), qp, N) * _qp(q, qp, N)))
    return (pre * _qp(Q(-N - a), qp, x) * _qp(Q(-N), qp, x)
            / (_qp(Q(-N - a + d), qp, x) * _qp(q, qp, x))
            * Q(N * (d - a) + x * (N + d)))


def h_einf(n: int, qp: QParameterSet):
    a, d, Q = qp.a, qp.d, qp.Q
    q = qp.field.element(qp.q)
    return (Q(-n) * _qp(q, qp, n) * _qp(Q(a + 1), qp, n)
            / (_qp(Q(-qp.N), qp, n) * _qp(Q(a + 1 - d), qp, n)))


def q_gram_einf(qp: QParameterSet) -> GramReport:
    """Gram matrix sum_x w~_x U~_n(x) V~_m(x) against h~_n delta_{nm}."""
    N = qp.N
    w = [w_einf(x, qp) for x in range(N + 1)]
    U = [[u_tilde_einf(n, x, qp) for x in range(N + 1)] for n in range(N + 1)]
    Vt = [[v_tilde_einf(m, x, qp) for x in range(N + 1)] for m in range(N + 1)]
    zero = qp.field.zero()
    gram = [[sum((w[x] * U[n][x] * Vt[m][x] for x in range(N + 1)), zero)
             for m in range(N + 1)] for n in range(N + 1)]
    return GramReport.build(qp.without_e(), gram,
                            [h_einf(n, qp) for n in range(N + 1)])


# -- q -> 1 targets (exact rationals) ---------------------------------------

def u_target(n: int, x: int, a, d, N: int) -> Fraction:
    return (pochhammer(a + 1, n) / pochhammer(a + 1 - d, n)
            * hyp_terminating([-n, -x, d], [-N, N - x + a + 1], 1))


def v_target(m: int, x: int, a, d, N: int) -> Fraction:
    return (pochhammer(a + N, m) / pochhammer(a + 1 - d, m)
            * hyp_terminating([-m, -x, -N + 1 - d], [-N, -N - m + 1 - a], 1))


def w_target(x: int, a, d, N: int) -> Fraction:
    return (pochhammer(a + 1 - d, N) * pochhammer(Fraction(-N), N)
            / (factorial(N) * pochhammer(d, N))
            * pochhammer(-N - a, x) * pochhammer(Fraction(-N), x)
            / (factorial(x) * pochhammer(-N - a + d, x)))


def h_target(n: int, a, d, N: int) -> Fraction:
    return (factorial(n) * pochhammer(a + 1, n)
            / (pochhammer(Fraction(-N), n) * pochhammer(a + 1 - d, n)))


def check_targets_match_families(p: ParameterSet) -> list[dict]:
    """Mismatches between the q -> 1 targets and V_n, P_m, w_x, h_n."""
    a, d, N = p.beta - p.N, -p.alpha - p.N, p.N
    b, al = p.beta, p.alpha
    bad = []
    for n in range(N + 1):
        cu = pochhammer(b - N + 1, n) / pochhammer(al + b + 1, n)
        cv = pochhammer(b, n) / pochhammer(al + b + 1, n)
        for x in range(N + 1):
            if u_target(n, x, a, d, N) != cu * V(n, x, p):
                bad.append({"family": "U", "n": n, "x": x})
            if v_target(n, x, a, d, N) != cv * P(n, x, p):
                bad.append({"family": "V", "n": n, "x": x})
        if h_target(n, a, d, N) != cu * cv * normalization_h(n, p):
            bad.append({"family": "h", "n": n})
    for x in range(N + 1):
        if w_target(x, a, d, N) != weight(x, p):
            bad.append({"family": "w", "x": x})
    return bad


def _max_abs(values: Iterable):
    best = Fraction(0)
    for v in values:
        v = real_abs(v)
        if compare_reals(v, best) > 0:
            best = v
    return best


def strictly_decreasing(seq: Sequence) -> bool:
    return all(compare_reals(seq[i + 1], seq[i]) < 0 for i in range(len(seq) - 1))


@dataclass
class QLimitReport:
    params: ParameterSet
    rows: list = field(default_factory=list)  # (k, q, dU, dV, dw, dh)
    violations: list = field(default_factory=list)
    min_factor: int = 16

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def column(self, name: str) -> list:
        idx = {"U": 2, "V": 3, "w": 4, "h": 5}[name]
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "q", "delta_U", "delta_V", "delta_w", "delta_h"])
        for k, q, *deltas in self.rows:
            writer.writerow([k, format_rational(q)]
                            + [to_real_string(v) for v in deltas])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"params": render(self.params),
                "rows": [{"k": k, "q": format_rational(q),
                          "delta_U": to_real_string(du), "delta_V": to_real_string(dv),
                          "delta_w": to_real_string(dw), "delta_h": to_real_string(dh)}
                         for k, q, du, dv, dw, dh in self.rows],
                "violations": render(self.violations)}


def q_deltas(p: ParameterSet, q) -> tuple:
    """Max deviations of the e -> infinity family from its q -> 1 targets."""
    qp = QParameterSet.from_params(p, q)
    a, d, N = qp.a, qp.d, qp.N
    dU = _max_abs(u_tilde_einf(n, x, qp) - u_target(n, x, a, d, N)
                  for n in range(N + 1) for x in range(N + 1))
    dV = _max_abs(v_tilde_einf(n, x, qp) - v_target(n, x, a, d, N)
                  for n in range(N + 1) for x in range(N + 1))
    dw = _max_abs(w_einf(x, qp) - w_target(x, a, d, N) for x in range(N + 1))
    dh = _max_abs(h_einf(n, qp) - h_target(n, a, d, N) for n in range(N + 1))
    return dU, dV, dw, dh


def q_to_1_limit_check(p: ParameterSet, ks: Sequence[int] = range(3, 11),
                       min_factor: int = 16) -> QLimitReport:
    """Delta table along q = 1 - 2^-k.

    Each delta column must be strictly decreasing and shrink by at least
    ``min_factor`` from the first to the last k; the degree-0 row must be
    exact, and the q -> 1 targets must equal the R_I Hahn objects up to
    their prefactors.
    """
    rep = QLimitReport(p, min_factor=min_factor)
    for bad in check_targets_match_families(p):
        rep.violations.append({"check": "targets-vs-families", **bad})
    for k in ks:
        q = 1 - Fraction(1, 2 ** k)
        rep.rows.append((k, q, *q_deltas(p, q)))
        qp = QParameterSet.from_params(p, q)
        a, d, N = qp.a, qp.d, qp.N
        for x in range(N + 1):
            if u_tilde_einf(0, x, qp) != u_target(0, x, a, d, N) or \
                    v_tilde_einf(0, x, qp) != v_target(0, x, a, d, N):
                rep.violations.append({"check": "degree-0-row", "k": k, "x": x})
    for name in ("U", "V", "w", "h"):
        col = rep.column(name)
        if not strictly_decreasing(col):
            rep.violations.append({"check": "strictly-decreasing", "delta": name})
        if len(col) > 1 and compare_reals(col[-1] * min_factor, col[0]) > 0:
            rep.violations.append({"check": f"decrease-factor>={min_factor}",
                                   "delta": name})
    return rep


def finite_e_deltas(qp: QParameterSet, es: Sequence) -> list:
    """max_{n,x} |U~_n(x; e) - lim_{e->inf} U~_n(x)| for each e."""
    base = qp.without_e()
    N = qp.N
    limit = [[u_tilde_einf(n, x, base) for x in range(N + 1)] for n in range(N + 1)]
    out = []
    for e in es:
        qe = base.with_e(e)
        out.append(_max_abs(u_tilde(n, x, qe) - limit[n][x]
                            for n in range(N + 1) for x in range(N + 1)))
    return out


def finite_e_convergence(qp: QParameterSet, ms: Sequence[int] = range(6, 13)) -> dict:
    """Deltas of U~ at e = 2^m against the e -> infinity form; must shrink strictly.

    Small m are excluded: for m below roughly 5 the approach is not yet
    monotone on some parameter sets, and e = q^{-i} is a pole.
    """
    deltas = finite_e_deltas(qp, [Fraction(2) ** m for m in ms])
    return {"ms": list(ms), "deltas": deltas,
            "decreasing": strictly_decreasing(deltas)}


__all__ = [
    "QParameterSet", "u_tilde", "u_tilde_einf", "v_tilde_einf", "w_einf",
    "h_einf", "q_gram_einf", "u_target", "v_target", "w_target", "h_target",
    "check_targets_match_families", "q_deltas", "q_to_1_limit_check",
    "QLimitReport", "finite_e_deltas", "finite_e_convergence", "strictly_decreasing",
]
