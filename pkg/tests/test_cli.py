import csv
import io
import json
import subprocess
import sys

import pytest

from operad_forge.cli import RunConfig, main, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "--family", "khat", "--n", "2", "--k", "2")
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == "operad-forge/report/v1"
    assert data["data"]["count"] == 5
    assert data["seed"] == 0xC0FFEE


def test_axioms_khat(capsys):
    code, out = run(capsys, "axioms", "--family", "khat", "--n", "2", "--max-arity", "3", "--format", "text")
    assert code == 0
    assert "[PASS] associativity" in out and "exhaustive" in out


def test_homology_csv(capsys):
    code, out = run(capsys, "homology", "--family", "k", "--n", "2", "--k", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [int(r[1]) for r in rows[1:]] == [1, 3, 2]


def test_counterexample_reports_unequal_labels(capsys):
    code, out = run(capsys, "counterexample", "--target", "ru-c2")
    data = json.loads(out)
    assert code == 0
    chase = data["data"]["chase"]
    assert chase["equal"] is False
    assert [1, 2] in chase["differing_edges"]
    assert chase["lhs"]["labels"][0]["label"] != chase["rhs"]["labels"][0]["label"]


def test_deterministic_modulo_timings(capsys, tmp_path):
    args = ["cells", "--n", "2", "--k", "3", "--samples", "20", "--seed", "7"]
    main(args + ["--out", str(tmp_path / "a.json")])
    main(args + ["--out", str(tmp_path / "b.json")])
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    a.pop("timings"), b.pop("timings")
    assert a == b
    main(args + ["--no-timings", "--out", str(tmp_path / "c.json")])
    main(args + ["--no-timings", "--out", str(tmp_path / "d.json")])
    assert (tmp_path / "c.json").read_bytes() == (tmp_path / "d.json").read_bytes()


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# budgets\nsamples = 5\nseed = 0x2A\nsimplex_budget = 10\n")
    code, out = run(capsys, "roundtrip", "--config", str(cfg))
    data = json.loads(out)
    assert data["seed"] == 42 and data["checks"][0]["samples"] == 5
    code, out = run(capsys, "roundtrip", "--config", str(cfg), "--seed", "3", "--samples", "7")
    data = json.loads(out)
    assert data["seed"] == 3 and data["checks"][0]["samples"] == 7


def test_budget_exceeded_is_reported(capsys, tmp_path):
    code, out = run(capsys, "homology", "--family", "k", "--n", "3", "--k", "3", "--simplex-budget", "100")
    data = json.loads(out)
    assert code == 1
    assert data["checks"][-1]["name"] == "budget" and "witness" in data["checks"][-1]


def test_failing_check_exits_one():
    rep = run_suite(RunConfig("axioms", {"family": "r1", "n": 2, "max_arity": 2, "monoid": "z2"}))
    assert rep.passed
    rep.add("forced", False)
    assert not rep.passed and rep.checks[-1]["witness"]


def test_obstruction_monoid_csv(capsys, tmp_path):
    f = tmp_path / "m.csv"
    f.write_text("*,1,a\n1,1,a\na,a,a\n")
    code, out = run(capsys, "obstruction", "--monoid", str(f), "--c", "a,1")
    data = json.loads(out)
    assert code == 0
    assert data["data"]["witness"]["c_prime"] == ["a", "a"]


def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError):
        run_suite(RunConfig("nope"))
    with pytest.raises(SystemExit):
        main(["nope"])


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "operad_forge.cli", "interchange", "--case", "c2-fail",
                          "--format", "text"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "[PASS] failure_exhibited" in out.stdout
