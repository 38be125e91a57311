import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from tsirelson.cli import RunConfig, main, parse_grid
from tsirelson.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_norm_examples(capsys):
    code, out, _ = run(capsys, "norm", "--family", "schreier", "--theta", "1/2", "--vector", "2:1,3:1,4:1,5:1")
    data = json.loads(out)
    assert code == 0 and data["value"] == 1.5 and data["value_exact"] == "3/2"
    assert data["schema_version"] == 1 and "theta_children" in data["certificate"]
    code, out, _ = run(capsys, "norm", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--vector", "1:1,2:1,3:1,4:1")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(2.0)
    code, out, _ = run(capsys, "norm", "--vector", "7:1")
    assert json.loads(out)["value"] == 1.0


def test_norm_formats(capsys):
    code, out, _ = run(capsys, "norm", "--vector", "2:1,3:1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["value_exact"] == "1"
    code, out, _ = run(capsys, "norm", "--vector", "2:1,3:1,4:1,5:1", "--format", "text")
    assert out.splitlines()[0] == "3/2"
    assert out.splitlines()[1].startswith("certificate: θ[")


def test_norm_check(capsys):
    code, out, _ = run(capsys, "norm", "--family", "finite-rank:3", "--theta", "3/4", "--vector", "1:3,2:-1,4:2", "--check")
    data = json.loads(out)
    assert code == 0 and data["check"] == {"passed": True, "problems": []}


@pytest.mark.parametrize(
    "argv",
    [
        ["norm", "--family", "schreir", "--vector", "1:1"],
        ["norm", "--vector", "0:1"],
        ["norm", "--theta", "2", "--vector", "1:1"],
        ["verify", "step1", "--n", "2", "--theta", "1/2"],
        ["sweep", "constants", "--theta-grid", "a:b:c"],
        ["family", "--family", "schreier", "--blocks", "[[2],[2]]"],
    ],
)
def test_exit_code_parse(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_exit_code_cap(capsys):
    vec = ",".join(f"{k}:1" for k in range(1, 42))
    code, out, err = run(capsys, "norm", "--vector", vec)
    assert code == 3 and "cap" in err and out == ""
    code, _, _ = run(capsys, "norm", "--family", "finite-rank:2", "--vector", "1:1,2:1,3:1", "--cap", "2")
    assert code == 3


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("TSIRELSON_DP_CAP", "2")
    code, _, _ = run(capsys, "norm", "--vector", "1:1,2:1,3:1")
    assert code == 3


def test_verify_pass_and_fail(capsys):
    code, out, err = run(capsys, "verify", "step2", "--n", "2", "--theta", "root:n=2,q=2", "--m-max", "32")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["claim"] == "step2"
    assert err.startswith("PASS step2")
    code, out, _ = run(capsys, "verify", "step2", "--n", "2", "--family", "finite-rank:5", "--m-max", "9")
    assert code == 1 and json.loads(out)["counterexample"] is not None


def test_verify_oracle_and_text(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--family", "schreier", "--theta", "1/2", "--max-supp", "6",
                       "--samples", "40", "--seed", "42", "--format", "text")
    assert code == 0 and out.startswith("PASS oracle: 40 samples")


def test_verify_csv_and_audit(capsys):
    code, out, _ = run(capsys, "verify", "step1", "--n", "3", "--theta", "1/2", "--samples", "40", "--audit",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["passed"] == "1" and rows[0]["samples"] == "40"


def test_sweep_growth(capsys):
    code, out, _ = run(capsys, "sweep", "growth", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--m-max", "16")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 16
    norms = {int(r["m"]): float(r["norm"]) for r in rows}
    assert norms[1] == 1 and norms[4] == pytest.approx(2) and norms[16] == pytest.approx(4)


def test_sweep_constants(capsys):
    code, out, _ = run(capsys, "sweep", "constants", "--n", "2", "--theta-grid", "0.55:0.75:0.1", "--samples", "30")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["theta"] for r in rows] == ["11/20", "13/20", "3/4"]
    assert all(float(r["c_low"]) >= 0.25 and r["ok"] == "1" for r in rows)


def test_sweep_empty_grid(capsys):
    code, out, _ = run(capsys, "sweep", "constants", "--theta-grid", "0.9:0.6:0.1")
    assert code == 0 and out.count("\n") == 1 and out.startswith("schema_version,n,theta")


def test_sweep_constants_hypothesis_violation(capsys):
    code, _, err = run(capsys, "sweep", "constants", "--n", "2", "--theta-grid", "0.5:0.5:0.1", "--samples", "5")
    assert code == 2 and "1/n" in err


def test_family_command(capsys):
    code, out, _ = run(capsys, "family", "--family", "schreier", "--blocks", "[[2],[3]]", "--truncate", "3")
    data = json.loads(out)
    assert code == 0 and data["rank"] == "ω" and data["witness"] == [2, 3]
    assert data["truncation"] == [[], [1], [2], [3], [2, 3]]


def test_byte_identical_output(capsys):
    argv = ["verify", "step3", "--n", "2", "--samples", "5", "--seed", "11"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    argv = ["sweep", "constants", "--theta-grid", "0.6:0.8:0.1", "--samples", "20", "--seed", "3"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_parse_grid():
    assert [str(g) for g in parse_grid("0.55:0.95:0.1")] == ["0.55", "0.65", "0.75", "0.85", "0.95"]
    with pytest.raises(ParseError):
        parse_grid("0.1:0.2:0")


@given(
    st.sampled_from(["schreier", "finite-rank:3", "explicit:[[1,3]]", "union(schreier,finite-rank:1)"]),
    st.sampled_from(["1/2", "3/4", "root:n=2,q=2", "root:n=3,q=2.5"]),
    st.dictionaries(st.integers(1, 30), st.fractions(max_denominator=7), max_size=5),
    st.sampled_from(["json", "csv", "text"]),
    st.integers(0, 10**6),
)
def test_run_config_round_trip(family, theta, entries, output, seed):
    literal = ",".join(f"{k}:{v}" for k, v in sorted(entries.items()))
    cfg = RunConfig.parse(family, theta, literal, output, seed, {"dp": 12})
    again = RunConfig.parse(**cfg.format())
    assert again == cfg
    assert again.format() == cfg.format()


def test_run_config_rejects_output():
    with pytest.raises(ParseError):
        RunConfig.parse(output="xml")
