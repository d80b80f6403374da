"""Command-line front end.

    rihahn tabulate {P,V,hahn,weights,monic} --alpha A --beta B --N N
    rihahn verify {gevp,adjoint,biorth,hahn,bridge,christoffel,
                   recurrence,difference,shift} --alpha A --beta B --N N
    rihahn limit {askey,q} ...

Exit status: 0 when every identity held, 1 on a violation, 2 on invalid
parameters, 3 on an I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
from fractions import Fraction

from . import bispectral, gevp
from .biorthogonality import (check_bridge, christoffel_chain_check,
                              gram_matrix, hahn_gram, weights)
from .errors import InvalidParameters, ZeroDivisor
from .families import askey_limit_table, family_table
from .kernel import HahnParameterSet, ParameterSet, as_rational, format_rational
from .operators import adjoint_report
from .qlimit import QParameterSet, finite_e_deltas, q_gram_einf, q_to_1_limit_check
from .qfield import to_real_string
from .report import render

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3

TABLES = ("P", "V", "hahn", "weights", "monic")
VERIFIERS = ("gevp", "adjoint", "biorth", "hahn", "bridge", "christoffel",
             "recurrence", "difference", "shift")
LIMITS = ("askey", "q")


def rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rihahn",
        description="Exact evaluation and verification of R_I Hahn families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--alpha", type=rational_arg)
        p.add_argument("--beta", type=rational_arg)
        p.add_argument("--N", type=int)
        p.add_argument("--xi", type=rational_arg)
        p.add_argument("--eta", type=rational_arg)
        p.add_argument("--q", type=rational_arg)
        p.add_argument("--e", type=rational_arg)
        p.add_argument("--n-max", type=int, dest="n_max")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=50)

    for name, choices, help_text in (
            ("tabulate", TABLES, "tabulate a family on the grid"),
            ("verify", VERIFIERS, "check an identity suite exactly"),
            ("limit", LIMITS, "delta tables for the Askey and q -> 1 limits")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("target", choices=choices)
        common(sp)
    return parser


def _params(args) -> ParameterSet:
    missing = [f for f in ("alpha", "beta", "N") if getattr(args, f) is None]
    if missing:
        raise InvalidParameters("missing " + ", ".join("--" + m for m in missing))
    return ParameterSet(args.alpha, args.beta, args.N)


def _hahn_params(args) -> HahnParameterSet:
    if args.xi is None or args.eta is None or args.N is None:
        raise InvalidParameters("the hahn family needs --xi, --eta and --N")
    return HahnParameterSet(args.xi, args.eta, args.N)


def _envelope(command, params, identity, violations, **extra) -> dict:
    out = {"command": command, "params": render(params), "identity": identity,
           "status": "pass" if not violations else "fail",
           "violations": render(violations)}
    out.update({k: render(v) for k, v in extra.items()})
    return out


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# -- tabulate ---------------------------------------------------------------

def run_tabulate(args):
    if args.target == "hahn":
        params = _hahn_params(args)
    else:
        params = _params(args)
    if args.target == "weights":
        table = weights(params)
        doc = _envelope("tabulate", params, "weights", [], values=table.values,
                        total=table.total)
    else:
        table = family_table(args.target, params)
        doc = _envelope("tabulate", params, args.target, [], values=table.values)
    return doc, table.to_csv(), True


# -- verify -----------------------------------------------------------------

def _verify_gevp(p: ParameterSet):
    v = []
    eig = gevp.bidiagonal_gevp_eigenvalues(p)
    if eig != list(range(p.N + 1)):
        v.append({"check": "eigenvalues", "value": eig})
    for n in range(p.N + 1):
        try:
            checks = (("M-nL", gevp.gevp_residual(n, p)),
                      ("pencil", gevp.pencil_residual(n, p)),
                      ("Zstar", gevp.zstar_residual(n, p)),
                      ("adjoint-pencil", gevp.adjoint_gevp_residual(n, p)))
        except gevp.OracleMismatch as exc:
            v.append({"check": "oracle", "n": n, "detail": str(exc)})
            continue
        for name, res in checks:
            if any(res):
                v.append({"check": name, "n": n, "residual": list(res)})
    return v, {"eigenvalues": eig}


def _verify_hahn(args, default_params):
    if args.xi is not None or args.eta is not None:
        hp = _hahn_params(args)
        rep = hahn_gram(hp)
        return hp, rep.violations, {"gram": rep.gram, "expected_diag": rep.expected_diag}
    p = default_params()
    v = []
    for n in range(p.N + 1):
        rep = hahn_gram(HahnParameterSet.glued(n, p))
        v.extend({"glued_n": n, **f} for f in rep.violations)
    return p, v, {}


def _verify_christoffel(p: ParameterSet, n_max):
    top = p.N - 1 if n_max is None else min(n_max, p.N - 1)
    v, checked = [], 0
    for n in range(top + 1):
        try:
            rep = christoffel_chain_check(n, p)
        except ZeroDivisor as exc:
            v.append({"n": n, "degenerate": str(exc)})
            continue
        checked += rep.checked
        v.extend({"identity": rep.identity, **f} for f in rep.failures)
    return v, {"checked": checked}


def run_verify(args):
    target = args.target
    if target == "hahn":
        p, v, extra = _verify_hahn(args, lambda: _params(args))
    else:
        p = _params(args)
    if target == "hahn":
        pass
    elif target == "gevp":
        v, extra = _verify_gevp(p)
    elif target == "adjoint":
        rep = adjoint_report(p, args.trials, args.seed)
        v, extra = rep.failures, {"checked": rep.checked, "seed": args.seed,
                                  "trials": args.trials}
    elif target == "biorth":
        rep = gram_matrix(p)
        v = rep.violations
        extra = {"gram": rep.gram, "expected_diag": rep.expected_diag,
                 "zero_norms": rep.zero_norms}
    elif target == "bridge":
        rep = check_bridge(p)
        v, extra = rep.failures, {"checked": rep.checked}
    elif target == "christoffel":
        v, extra = _verify_christoffel(p, args.n_max)
    elif target == "recurrence":
        reps = [bispectral.verify_recurrence_nonmonic(p),
                bispectral.verify_recurrence_monic(p), bispectral.verify_Y_action(p)]
        v = [{"identity": r.identity, **f} for r in reps for f in r.failures]
        extra = {"checked": sum(r.checked for r in reps)}
    elif target == "difference":
        rep = bispectral.verify_difference_equation(p)
        v, extra = rep.failures, {"checked": rep.checked}
    else:  # shift
        rep = bispectral.verify_parameter_shift(p)
        v, extra = rep.failures, {"checked": rep.checked}
    doc = _envelope("verify", p, target, v, **extra)
    rows = [["identity", "status", "violations"],
            [target, doc["status"], len(v)]]
    return doc, _csv(rows), not v


# -- limit ------------------------------------------------------------------

def run_limit(args):
    if args.target == "askey":
        if args.alpha is None or args.beta is None:
            raise InvalidParameters("missing --alpha/--beta")
        n_max = 4 if args.n_max is None else args.n_max
        table = askey_limit_table(args.alpha, args.beta, n_max)
        rng = random.Random(args.seed)
        xs = [Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(10)]
        rec = bispectral.verify_askey_recurrence(args.alpha, args.beta, n_max, xs)
        v = [{"n": r.n, "x": r.x, "deltas": r.deltas}
             for r in table if not r.converging()]
        v += [{"identity": rec.identity, **f} for f in rec.failures]
        Ns = table[0].Ns if table else ()
        rows = [["n", "x"] + [f"N={M}" for M in Ns]]
        rows += [[r.n, format_rational(r.x)] + [format_rational(d) for d in r.deltas]
                 for r in table]
        params = {"alpha": args.alpha, "beta": args.beta, "n_max": n_max,
                  "seed": args.seed}
        doc = _envelope("limit", params, "askey", v,
                        rows=[{"n": r.n, "x": r.x, "deltas": r.deltas} for r in table],
                        recurrence_x=xs)
        return doc, _csv(rows), not v

    p = _params(args)
    rep = q_to_1_limit_check(p)
    v = list(rep.violations)
    extra = {"rows": rep.to_json()["rows"]}
    if args.q is not None:
        qp = QParameterSet.from_params(p, args.q)
        gram = q_gram_einf(qp)
        v += [{"check": "q-biorthogonality", "n": f["n"], "m": f["m"]}
              for f in gram.violations]
        if args.e is not None:
            (delta,) = finite_e_deltas(qp, [args.e])
            extra["finite_e_delta"] = to_real_string(delta)
    return _envelope("limit", p, "q", v, **extra), rep.to_csv(), not v


COMMANDS = {"tabulate": run_tabulate, "verify": run_verify, "limit": run_limit}


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


_NEGATIVE_FRACTION = re.compile(r"^-\d+/\d+$")


def _join_negative_fractions(argv):
    # argparse takes "-1/3" for an option; rewrite "--beta -1/3" as "--beta=-1/3"
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] \
                and _NEGATIVE_FRACTION.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_fractions(argv))
    fmt = args.format or ("csv" if args.command == "tabulate" else "json")
    try:
        doc, csv_text, ok = COMMANDS[args.command](args)
    except InvalidParameters as exc:
        sys.stderr.write(f"invalid parameters: {exc}\n")
        return EXIT_INVALID
    text = csv_text if fmt == "csv" else json.dumps(doc, indent=2) + "\n"
    try:
        _emit(text, args.out)
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return EXIT_IO
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
