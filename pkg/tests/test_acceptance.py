"""Acceptance gate: nine exact criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""
import random
import time
from fractions import Fraction

import pytest

from rihahn import bispectral as bs
from rihahn import gevp
from rihahn.biorthogonality import (check_bridge, christoffel_chain_check,
                                    gram_matrix, hahn_gram, weights)
from rihahn.families import askey_limit_table
from rihahn.kernel import HahnParameterSet, ParameterSet, valid
from rihahn.operators import adjoint_report
from rihahn.qlimit import QParameterSet, q_gram_einf, q_to_1_limit_check

# (N, alpha, beta)
SETS = [(2, Fraction(1), Fraction(1, 2)),
        (5, Fraction(1, 3), Fraction(2, 5)),
        (8, Fraction(7, 2), Fraction(-1, 3)),
        (12, Fraction(5, 7), Fraction(9, 4))]
PARAMS = [ParameterSet(a, b, N) for N, a, b in SETS]


def criterion_1():
    start = time.perf_counter()
    reports = [gram_matrix(p) for p in PARAMS]
    elapsed = time.perf_counter() - start
    spot = reports[0].gram
    ok = (all(r.ok for r in reports) and elapsed < 10
          and spot[0][0] == 1 and spot[1][1] == Fraction(-5, 2))
    return ok, f"4 Gram matrices exactly diagonal with h_n, {elapsed:.2f}s"


def criterion_2():
    bad = []
    for p in PARAMS:
        if gevp.bidiagonal_gevp_eigenvalues(p) != list(range(p.N + 1)):
            bad.append((p.N, "eigenvalues"))
        for n in range(p.N + 1):
            if any(gevp.gevp_residual(n, p)):
                bad.append((p.N, n, "M-nL"))
            if any(gevp.zstar_residual(n, p)):
                bad.append((p.N, n, "Z*"))
    return not bad, f"residuals zero, eigenvalues 0..N; failures={bad}"


def random_valid_sets(count, seed=2024, max_N=10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        N = rng.randint(0, max_N)
        a = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
        b = Fraction(rng.randint(-60, 60), rng.randint(1, 9))
        if valid(a, b, N):
            out.append(ParameterSet(a, b, N))
    return out


def criterion_3():
    sets = random_valid_sets(100)
    bad = [p for p in sets if weights(p).total != 1]
    return not bad, f"sum w_x = 1 on {len(sets)} seeded sets; failures={len(bad)}"


def criterion_4():
    bad = []
    for p in PARAMS:
        for rep in bs.verify_all(p):
            if not rep.ok:
                bad.append((p.N, rep.identity, len(rep.failures)))
    return not bad, f"difference eq, recurrences, Y/L actions, shifts; failures={bad}"


def criterion_5():
    bad = []
    for p in PARAMS:
        for n in range(p.N + 1):
            if not hahn_gram(HahnParameterSet.glued(n, p)).ok:
                bad.append((p.N, n, "hahn-orthogonality"))
        rep = check_bridge(p)
        if not rep.ok:
            bad.append((p.N, "bridge", len(rep.failures)))
        for n in range(p.N):
            rep = christoffel_chain_check(n, p)
            if not rep.ok:
                bad.append((p.N, n, "christoffel", len(rep.failures)))
    return not bad, f"Hahn orthogonality, bridge, Christoffel chain; failures={bad}"


def criterion_6():
    rows = askey_limit_table(1, Fraction(1, 2), n_max=4)
    bad_rows = [(r.n, r.x) for r in rows if not r.converging()]
    exact_rows = sum(r.exact for r in rows)
    rng = random.Random(6)
    xs = [Fraction(rng.randint(-40, 40), rng.randint(1, 40)) for _ in range(10)]
    rec = bs.verify_askey_recurrence(1, Fraction(1, 2), 6, xs)
    ok = not bad_rows and rec.ok
    return ok, (f"{len(rows) - exact_rows} rows strictly decreasing with ratios in [1/4,3/4], "
                f"{exact_rows} rows exact (delta 0); recurrence ok={rec.ok}")


def criterion_7():
    start = time.perf_counter()
    bad = []
    gram_sets = [ParameterSet(Fraction(1, 3), Fraction(2, 5), N) for N in range(1, 6)]
    gram_sets += [p for p in PARAMS if p.N <= 5]
    gram_sets.append(ParameterSet(Fraction(3, 2), Fraction(-1, 3), 4))
    for p in gram_sets:
        for q in (Fraction(1, 2), Fraction(3, 4)):
            if not q_gram_einf(QParameterSet.from_params(p, q)).ok:
                bad.append((p.N, p.alpha, p.beta, q))
    for p in (p for p in PARAMS if p.N <= 5):
        rep = q_to_1_limit_check(p, range(3, 11))
        if not rep.ok:
            bad.append((p.N, "q->1", rep.violations))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 30, f"q-Gram exact, q->1 deltas decreasing >=16x, {elapsed:.1f}s; failures={bad}"


def criterion_8():
    p = PARAMS[-1]
    try:
        for n in range(p.N + 1):
            c = gevp.solve_P_coefficients(n, p).coefficients
            d = gevp.solve_V_coefficients(n, p).coefficients
            if list(c) != [gevp.closed_form_c(n, k, p) for k in range(p.N + 1)] or \
                    list(d) != [gevp.closed_form_d(n, k, p) for k in range(p.N + 1)]:
                return False, f"mismatch at n={n}"
    except gevp.OracleMismatch as exc:
        return False, str(exc)
    return True, "recurrence and closed-form coefficients agree for n <= N = 12"


def criterion_9():
    bad = []
    for p in PARAMS:
        rep = adjoint_report(p, trials=50, seed=p.N)
        if not rep.ok:
            bad.append((p.N, len(rep.failures)))
    return not bad, f"(f, Xg) = (X*f, g) for X in {{L, M}}, 50 pairs per set; failures={bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _line(i, ok, detail):
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("index", range(1, 10))
def test_criterion(index, request):
    ok, detail = CRITERIA[index - 1]()
    line = _line(index, ok, detail)
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        reporter.write_line(line)
    else:
        print(line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_line(i, ok, detail), flush=True)
    raise SystemExit(0 if all(results) else 1)
