import json

import pytest
from click.testing import CliRunner

from artifact.cli import RunConfig, main, run_suites

runner = CliRunner()


def invoke(*args):
    return runner.invoke(main, list(args))


def test_hilbert_examples():
    assert invoke("hilbert", "--p", "7", "1:3", "0:1").output.strip() == "0"
    assert invoke("hilbert", "--p", "7", "0:3", "1:1").output.strip() == "1"


@pytest.mark.parametrize("lit", ["3", "1:x", "0:7"])
def test_hilbert_malformed(lit):
    assert invoke("hilbert", "--p", "7", lit, "0:1").exit_code == 2


def test_config_errors_exit_2():
    assert invoke("verify", "gauss", "--p", "11").exit_code == 2
    assert invoke("verify", "gauss", "--c", "5").exit_code == 2
    assert invoke("verify", "nosuch").exit_code == 2


def test_verify_gauss():
    r = invoke("verify", "gauss", "--p", "13")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["schema"] == 1
    assert {"name", "inputs", "expected", "provenance", "computed", "pass"} <= set(rep["checks"][0])


def test_verify_ktype_and_alias():
    r = invoke("verify", "ktype", "--p", "7", "--L", "3")
    assert r.exit_code == 0
    assert invoke("ktype-count").output == r.output


def test_verify_arch_reports_failure():
    r = invoke("arch-check")
    assert r.exit_code == 1
    rep = json.loads(r.output)
    failing = {c["name"] for c in rep["checks"] if not c["pass"]}
    assert failing == {"arch.identity"}


def test_csv_output():
    r = invoke("verify", "gauss", "--format", "csv")
    lines = r.output.strip().splitlines()
    assert lines[0].split(",")[:2] == ["name", "inputs"]


def test_table_whittaker():
    rep = json.loads(invoke("table", "whittaker", "--window", "-3", "3").output)
    rows = rep["rows"]
    assert len(rows) == 49
    assert all(r["value"] == "0" for r in rows if r["a"] < r["b"])
    assert {"a": 0, "b": 0, "value": "1"} in rows


def test_table_empty_and_lfactor():
    r = invoke("table", "whittaker", "--window", "1", "0")
    assert r.exit_code == 0 and json.loads(r.output)["rows"] == []
    rows = json.loads(invoke("table", "lfactor", "--rep", "adjoint", "--s0", "1").output)["rows"]
    assert rows == [{"rep": "adjoint", "s0": "1",
                     "value": "(1)/(-Q^-6 + Q^-4*t1^-1*t2 + Q^-4 + Q^-4*t1*t2^-1 + "
                              "-Q^-2*t1^-1*t2 + -Q^-2 + -Q^-2*t1*t2^-1 + 1)"}]


def test_out_file(tmp_path):
    out = tmp_path / "r.json"
    assert invoke("verify", "arch", "--out", str(out)).exit_code == 1
    assert json.loads(out.read_text())["suites"] == ["arch"]


def test_seeded_reports_identical():
    cfg = RunConfig(samples=500, seed=4)
    a = run_suites(("hilbert", "cocycle", "splitting"), cfg)
    b = run_suites(("hilbert", "cocycle", "splitting"), cfg)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
