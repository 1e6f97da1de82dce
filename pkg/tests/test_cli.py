import csv
import io
import json

import pytest

from hartogs_bergman import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == 0
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert "tmu" in ids and "counterexample" in ids and len(ids) == 12


def test_global_list_flag(capsys):
    code, out, _ = _run(capsys, "--list")
    assert code == 0 and "bell-isometry" in out


def test_verify_tmu_exit_zero(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = _run(capsys, "verify", "tmu", "--mu-max", "64", "--json", str(path))
    assert code == 0
    assert "tmu: Pass" in out
    doc = json.loads(path.read_text())
    assert doc["reports"][0]["parameters"] == {"mu_max": 64}
    assert doc["config"]["overrides"] == {"mu_max": "64"}


def test_verify_counterexample_csv_has_divergence_table(capsys):
    code, out, _ = _run(capsys, "verify", "counterexample", "--p", "1.25", "--box", "4", "--csv", "-")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r for r in rows if r["quantity"] == "truncated_integral"]
    inv = [r for r in rows if r["quantity"] == "Lq_norm_inv_z1"]
    assert inv[0]["verdict"] == "Diverged"


def test_norm_inv_z1_p4_diverged(capsys):
    code, out, _ = _run(capsys, "norm", "--f", "inv-z1", "--p", "4", "--weight", "none")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["quantity"] == "lp_norm"
    assert rows[0]["verdict"] == "Diverged"
    assert list(rows[0]) == list(cli.CSV_COLUMNS)


def test_norm_values_have_17_digits(capsys):
    code, out, _ = _run(capsys, "norm", "--f", "inv-z1", "--p", "2")
    value = next(csv.DictReader(io.StringIO(out)))["value"]
    assert float(value) == pytest.approx(3.141592653589793, rel=1e-12)
    assert len(value.replace(".", "").lstrip("0")) == 17


def test_project_csv(capsys):
    code, out, _ = _run(capsys, "project", "--f", "counterexample", "--box", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(r["quantity"], r["value"]) for r in rows] == [("coeff[-1,0]", "0.46875")]


def test_scan(capsys):
    code, out, _ = _run(capsys, "scan", "--f", "inv-z1", "--param", "q", "--values", "3.5,4")
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["quantity"] == "lp_norm"]
    assert [r["verdict"] for r in rows] == ["Converged", "Diverged"]


@pytest.mark.parametrize(
    "argv, field",
    [
        (["verify", "nope"], "scenario"),
        (["verify", "tmu", "--p", "3"], "p"),
        (["verify", "counterexample", "--p", "1.5"], "p"),
        (["verify", "tmu", "--mu-max", "abc"], "mu_max"),
        (["norm", "--f", "sin", "--p", "2"], "f"),
        (["norm", "--f", "one", "--p", "2", "--weight", "bogus"], "weight"),
        (["verify", "tmu", "--workers", "0"], "workers"),
    ],
)
def test_config_errors_exit_2(capsys, argv, field):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert field in err


def test_config_file_and_flag_precedence(capsys, tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[run]\nscenarios = tmu\nmu_max = 5\n[tmu]\nmu-max = 7\n")
    path = tmp_path / "r.json"
    assert cli.main(["verify", "--config", str(ini), "--json", str(path)]) == 0
    assert json.loads(path.read_text())["reports"][0]["parameters"]["mu_max"] == 5
    assert cli.main(["verify", "--config", str(ini), "--mu-max", "3", "--json", str(path)]) == 0
    assert json.loads(path.read_text())["reports"][0]["parameters"]["mu_max"] == 3


def test_unknown_section_rejected(capsys, tmp_path):
    ini = tmp_path / "bad.ini"
    ini.write_text("[run]\nscenarios = tmu\n[nosuch]\np = 2\n")
    code, _, err = _run(capsys, "verify", "--config", str(ini))
    assert code == 2 and "nosuch" in err


def test_from_report_reproduces_bytes(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "tmu,orthogonality", "--mu-max", "10", "--json", str(a)]) == 0
    assert cli.main(["verify", "--from-report", str(a), "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_workers_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.WORKERS_ENV, "2")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "tmu,orthogonality", "--json", str(a)]) == 0
    monkeypatch.setenv(cli.WORKERS_ENV, "1")
    assert cli.main(["verify", "tmu,orthogonality", "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_fail_exit_code(capsys, tmp_path):
    # the weighted-norm scenario fails because the stated value is not reproduced
    code, out, _ = _run(capsys, "verify", "weighted-norm", "--p-values", "2")
    assert code == 1
    assert "weighted-norm: Fail" in out
