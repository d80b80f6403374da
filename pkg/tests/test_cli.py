import json
import subprocess
import sys

import pytest

from rihahn.cli import main

BASE = ["--alpha", "1", "--beta", "1/2", "--N", "2"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tabulate_P(capsys):
    code, out, _ = run(capsys, "tabulate", "P", *BASE)
    assert code == 0
    assert out.splitlines() == ["n,0,1,2", "0,1,1,1", "1,1,3,5", "2,1,7/3,35/3"]


def test_tabulate_json_and_weights(capsys):
    code, out, _ = run(capsys, "tabulate", "weights", *BASE, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["values"] == ["35/24", "-5/12", "-1/24"] and doc["total"] == "1"
    assert set(doc) >= {"command", "params", "identity", "status", "violations"}


def test_tabulate_hahn_needs_xi(capsys):
    code, _, err = run(capsys, "tabulate", "hahn", *BASE)
    assert code == 2 and "--xi" in err
    code, out, _ = run(capsys, "tabulate", "hahn", "--xi", "1/3", "--eta", "1/4", "--N", "3")
    assert code == 0 and out.startswith("n,0,1,2,3")


def test_verify_biorth(capsys):
    code, out, _ = run(capsys, "verify", "biorth", *BASE)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["violations"] == []
    assert doc["expected_diag"][:2] == ["1", "-5/2"]


def test_invalid_parameters_exit_2(capsys):
    code, _, err = run(capsys, "verify", "biorth", "--alpha", "1", "--beta", "0", "--N", "2")
    assert code == 2 and "beta=0 is an integer in [-N, N-1]" in err


def test_decimal_input_rejected():
    proc = subprocess.run([sys.executable, "-m", "rihahn", "tabulate", "P",
                           "--alpha", "0.5", "--beta", "1/2", "--N", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "exact rational" in proc.stderr


@pytest.mark.parametrize("target", ["gevp", "adjoint", "biorth", "hahn", "bridge",
                                    "christoffel", "recurrence", "difference", "shift"])
def test_every_verifier_passes(capsys, target):
    code, out, _ = run(capsys, "verify", target, "--alpha", "1/3", "--beta", "2/5", "--N", "4")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["identity"]


def test_violation_exit_1(capsys):
    # alpha = 0, N = 2, n = 1 hits a vanishing divisor in the Christoffel chain
    code, out, _ = run(capsys, "verify", "christoffel", "--alpha", "0", "--beta", "1/2", "--N", "2")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail" and doc["violations"]


def test_io_error_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "tabulate", "P", *BASE, "--out", str(tmp_path / "no" / "f.csv"))
    assert code == 3 and "cannot write" in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / "p.csv"
    assert run(capsys, "tabulate", "V", *BASE, "--out", str(path))[0] == 0
    assert path.read_text().splitlines()[2] == "1,1,4,-5"


def test_seeded_output_is_deterministic(capsys):
    args = ("verify", "adjoint", "--alpha", "7/2", "--beta", "-1/3", "--N", "5",
            "--seed", "11", "--trials", "7")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0
    assert json.loads(first[1])["checked"] == 14


def test_limit_askey(capsys):
    code, out, _ = run(capsys, "limit", "askey", "--alpha", "1", "--beta", "1/2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,x,N=8,N=16,N=32,N=64" and len(lines) == 16


def test_limit_q(capsys):
    code, out, _ = run(capsys, "limit", "q", *BASE, "--q", "1/2", "--e", "1024")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 8 and "finite_e_delta" in doc
    code, out, _ = run(capsys, "limit", "q", *BASE, "--format", "csv")
    assert out.splitlines()[0] == "k,q,delta_U,delta_V,delta_w,delta_h"


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "shift", *BASE, "--format", "csv")
    assert out.splitlines() == ["identity,status,violations", "shift,pass,0"]
