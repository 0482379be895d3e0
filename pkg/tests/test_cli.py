import json
import subprocess
import sys
from pathlib import Path

import pytest

from apery_lab.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    (["seq", "--family", "j", "--k", "4", "--n-max", "4", "--format", "json"], "seq_j4.json"),
    (["seq", "--family", "a2", "--n-max", "4"], "seq_a2.csv"),
    (["seq", "--family", "tj", "--k", "3", "--n-max", "3", "--format", "json"], "seq_tj3.json"),
    (["eta", "--which", "lambda", "--n-max", "13"], "eta_lambda.csv"),
    (["eta", "--which", "gamma", "--n-max", "8", "--format", "json"], "eta_gamma.json"),
    (["congruence", "--check", "SUM_TJ2,CONJ_KO", "--p-max", "7", "--r-max", "1", "--m-max", "1"], "congruence.jsonl"),
    (["congruence", "--check", "all", "--p-max", "7", "--r-max", "1", "--m-max", "1", "--n-max", "20",
      "--format", "csv"], "congruence_summary.csv"),
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,golden", CASES, ids=[c[1] for c in CASES])
def test_golden(argv, golden, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_seq_examples(capsys):
    code, out, _ = run(["seq", "--family", "a2", "--n-max", "1"], capsys)
    assert code == 0 and out.splitlines()[1:] == ["0,1/1", "1,3/1"]
    code, out, _ = run(["seq", "--family", "tj", "--k", "3", "--n-max", "1"], capsys)
    assert out.splitlines()[-1] == "1,1/2"
    code, out, _ = run(["seq", "--family", "j", "--k", "1", "--n-max", "2"], capsys)
    assert out.splitlines()[1] == "0,_"
    doc_lines = (GOLDEN / "seq_j4.json").read_text()
    assert [v["riemann"] for v in json.loads(doc_lines)["values"]][4] == \
        "129735/16384*zeta(4) + 1044135/1048576*zeta(2)"


def test_eta_examples(capsys):
    _, out, _ = run(["eta", "--which", "lambda", "--n-max", "5"], capsys)
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["1", "0", "0", "0", "-6"]
    _, out, _ = run(["eta", "--which", "gamma", "--n-max", "1"], capsys)
    assert out.splitlines()[1:] == ["1,1"]


@pytest.mark.parametrize("argv,flag", [
    (["seq", "--family", "j", "--n-max", "3"], "--k"),
    (["seq", "--family", "a2", "--k", "2", "--n-max", "3"], "--k"),
    (["seq", "--family", "zz", "--n-max", "3"], "--family"),
    (["eta", "--which", "lambda", "--n-max", "0"], "--n-max"),
    (["congruence", "--check", "NOPE"], "--check"),
    (["congruence", "--check", "SUM_TJ2", "--k-set", "a,b"], "--k-set"),
    (["zetaq", "--s", "2", "--alpha", "1", "--beta", "1"], "alpha*beta > 2"),
    (["zetaq", "--s", "4", "--alpha", "3", "--beta", "3"], "--s"),
    (["verify", "--suite", "recurrence", "--k-max", "3"], "--k-max"),
    ([], "command"),
])
def test_usage_errors(argv, flag, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert flag in err


def test_zetaq(capsys):
    code, out, _ = run(["zetaq", "--s", "2", "--alpha", "2", "--beta", "2"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert float(doc["value"]) == pytest.approx(2 * (4 / (2 * 12**0.5)) ** 2 * 3 * 1.6449340668482264, rel=1e-14)
    code, out, _ = run(["zetaq", "--s", "3", "--alpha", "3", "--beta", "1", "--tol", "1e-8"], capsys)
    doc = json.loads(out)
    assert code == 0 and abs(float(doc["g_exact"]) - float(doc["g_closed"])) < 1e-8


def test_verify_small(capsys):
    code, out, _ = run(["verify", "--suite", "all", "--k-max", "5", "--n-max", "12", "--order", "12"], capsys)
    assert code == 0 and "0 failing" in out
    code, out, _ = run(["verify", "--suite", "ode", "--order", "10", "--format", "json"], capsys)
    assert json.loads(out)["ok"] is True


def test_verify_reports_failures(monkeypatch, capsys):
    from apery_lab import verify_suites

    def broken(k_max, n_max, order):
        res = verify_suites.SuiteResult("decomposition", 1)
        res.failures.append(verify_suites.Failure("decomposition", 3, 2, "a", "b"))
        return res

    monkeypatch.setitem(verify_suites.SUITES, "decomposition", broken)
    code, out, _ = run(["verify", "--suite", "decomposition"], capsys)
    assert code == 1 and "FAIL decomposition fails at k=3, n=2: lhs = a, rhs = b" in out


def test_congruence_exit_code_on_fails(monkeypatch, capsys):
    from apery_lab import congruence_lab as cl

    def fake_run_checks(checks, jobs=None, **kw):
        return [cl.CongruenceReport(cl.CheckId.CONJ_KO, {"p": 3, "r": 1, "m": 1, "e": 1}, cl.Status.FAILS,
                                    witness={"p": 3, "r": 1, "m": 1, "e": 1})]

    monkeypatch.setattr(cl, "run_checks", fake_run_checks)
    code, out, err = run(["congruence", "--check", "CONJ_KO"], capsys)
    assert code == 1 and "counterexample" in err


def test_output_file_and_module_entry(tmp_path):
    target = tmp_path / "a3.csv"
    assert main(["seq", "--family", "a3", "--n-max", "2", "--output", str(target)]) == 0
    assert target.read_text() == "n,value\n0,1/1\n1,5/1\n2,73/1\n"
    proc = subprocess.run([sys.executable, "-m", "apery_lab", "eta", "--which", "lambda", "--n-max", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "n,value\n1,1\n"


def test_jobs_env(monkeypatch, capsys):
    monkeypatch.setenv("APERY_LAB_JOBS", "2")
    code, out, _ = run(["congruence", "--check", "SUM_TJ2,MORTENSON", "--p-max", "11", "--format", "csv"], capsys)
    assert code == 0 and out.count("\n") == 3
