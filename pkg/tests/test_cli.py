import json
import subprocess
import sys

import pytest

from bcflab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_squared_factorials_as_csv(capsys):
    code, out, _ = run(capsys, "compute", "--family", "S", "--m", "2", "--weights",
                       "prealpha:w=2,pre=repeat3(k+1)", "--N", "8", "--column", "0", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "n,k0"
    assert [r.split(",")[1] for r in rows[1:]] == \
        ["1", "1", "4", "36", "576", "14400", "518400", "25401600", "1625702400"]


def test_genocchi_hankel_is_tp(capsys):
    code, out, _ = run(capsys, "tp-check", "--seq", "genocchi", "--size", "6", "--order", "4")
    assert code == 0
    assert json.loads(out)["verdict"] == "tp"


def test_missing_weight_is_an_input_error(capsys):
    code, out, err = run(capsys, "compute", "--family", "S", "--m", "1", "--weights",
                         "table:alpha=[]", "--N", "1")
    assert code == 2
    assert "MissingWeight" in err and out == ""


def test_violation_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "tp-check", "--m", "1", "--weights", "generic:kind=S",
                       "--partial", "2", "--size", "2")
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] == "violated"
    assert rep["witness"]["rows"] == [0, 1]


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["compute", "--bogus"])
    assert e.value.code == 2
    code, _, err = run(capsys, "compute", "--N", "2")
    assert code == 2 and "--m" in err
    code, _, _ = run(capsys, "compute", "--m", "1", "--weights", "periodic:x=[1", "--N", "2")
    assert code == 2
    # symbolic values cannot be written as CSV
    code, _, _ = run(capsys, "compute", "--m", "1", "--weights", "generic:kind=S", "--N", "2",
                     "--format", "csv")
    assert code == 2


def test_json_is_exact_and_deterministic(capsys):
    argv = ["compute", "--m", "1", "--weights", "table:alpha=[1/2,1/3,...]", "--N", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    vals = [v["text"] for v in json.loads(first)["values"]]
    assert vals == ["1", "1/2", "5/12", "4/9"] or all("/" in v or v.isdigit() for v in vals)


@pytest.mark.parametrize("argv", [
    ["oracle-check", "--m", "1", "--weights", "generic:kind=S", "--N", "3"],
    ["oracle-check", "--m", "2", "--weights", "generic:kind=J", "--family", "J", "--N", "3", "--forests"],
    ["contract", "--m", "2", "--weights", "generic:kind=S", "--kind", "odd", "--N", "3"],
    ["prodmat", "--m", "1", "--weights", "generic:kind=S", "--size", "4", "--output", "3"],
    ["hyper-verify", "--params", "a=1/2,1/3;b=5/2;kind=first", "--N", "6"],
    ["hyper-verify", "--params", "a=1/2,1/3;b=5/2;relation=AB-shift", "--N", "6"],
    ["family", "--name", "fuss-narayana", "--m", "2", "--variant", "Q", "--n", "3", "--check"],
    ["family", "--name", "eulerian", "--m", "1", "--n", "3", "--check"],
    ["family", "--name", "rth-eulerian", "--r", "2", "--n", "3"],
    ["genocchi-check", "--m-max", "2", "--n-max", "4"],
    ["row-generating", "--m", "1", "--N", "3"],
])
def test_verbs_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    json.loads(out)


@pytest.mark.parametrize("verb,number", [("oracle-check", "1"), ("contract", "3"),
                                         ("hyper-verify", "9"), ("genocchi-check", "10")])
def test_suite_flag_runs_criterion(capsys, verb, number):
    code, out, _ = run(capsys, verb, "--suite", number)
    assert code == 0
    assert f"criterion {number}: PASS" in out or json.loads(out)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bcflab", "family", "--name", "rth-eulerian",
                          "--r", "1", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "4" in res.stdout
