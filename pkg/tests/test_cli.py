"""Command-line harness: exit codes, JSON validity, CSV round-trips."""

import csv
import json
import math
import subprocess
import sys

import pytest

from turanlab.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_version_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "turanlab" in capsys.readouterr().out

    def test_missing_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_domain(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["certify", "dodecahedron"])
        assert exc.value.code == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_q_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["norms", "disk", "--roots", "[[0,0]]", "--q", "0.5"])
        assert exc.value.code == 2

    def test_bad_roots_json(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["norms", "disk", "--roots", "[[0, oops]]", "--q", "2"])
        assert exc.value.code == 2
        assert "roots" in capsys.readouterr().err

    def test_malformed_spec_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"name": "x", "pieces": [
            {"kind": "segment", "start": [0, 0], "end": [1, 0]}
        ]}))
        with pytest.raises(SystemExit) as exc:
            main(["certify", str(bad)])
        assert exc.value.code == 2
        assert "pieces[0]" in capsys.readouterr().err

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "turanlab", "--version"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "turanlab" in proc.stdout


class TestCertifyCommand:
    def test_disk_json(self, capsys):
        code, out, _ = run_cli(capsys, ["certify", "disk",
                                        "--fekete-m", "8"])
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "certified"
        assert doc["domain"] == "disk"
        assert doc["delta"] == pytest.approx(1.0)
        assert doc["xi"] == pytest.approx(math.pi / 2)
        assert doc["constants"]["c_k"] > 0
        assert doc["constants"]["n0"] >= 1

    def test_heptagon_kappa_inf_encoded(self, capsys):
        code, out, _ = run_cli(capsys, ["certify", "heptagon",
                                        "--fekete-m", "8"])
        assert code == 0
        doc = json.loads(out)
        assert doc["kappa"] == "inf"

    def test_square_rejected_is_not_an_error(self, capsys):
        code, out, _ = run_cli(capsys, ["certify", "square"])
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "rejected"
        assert doc["error"] == "StraightTooLong"
        assert doc["reason"]

    def test_plausible_mode(self, capsys):
        code, out, _ = run_cli(capsys, ["certify", "truncated_disk",
                                        "--delta-mode", "plausible",
                                        "--fekete-m", "8"])
        assert code == 0
        doc = json.loads(out)
        assert doc["delta_mode"] == "plausible"
        certified = json.loads(run_cli(capsys, [
            "certify", "truncated_disk", "--fekete-m", "8"])[1])
        assert doc["delta"] >= certified["delta"]


class TestBoundsCommand:
    def test_disk_table(self, capsys):
        code, out, _ = run_cli(capsys, ["bounds", "disk", "--n", "10",
                                        "--R", "1", "--fekete-m", "8"])
        assert code == 0
        doc = json.loads(out)
        by_name = {r["name"]: r for r in doc["bounds"]}
        assert by_name["circular"]["value"] == pytest.approx(5.0)
        assert by_name["circular"]["applicable"] is True
        assert by_name["target-upper"]["kind"] == "upper"
        assert doc["R"] == pytest.approx(1.0)

    def test_triangle_inapplicable_rows_null(self, capsys):
        code, out, _ = run_cli(capsys, ["bounds", "triangle", "--n", "4",
                                        "--fekete-m", "8"])
        assert code == 0
        doc = json.loads(out)  # must be strict JSON: no NaN literal
        by_name = {r["name"]: r for r in doc["bounds"]}
        assert by_name["depth"]["applicable"] is False
        assert by_name["circular"]["applicable"] is False
        assert by_name["circular"]["value"] is None


class TestNormsCommand:
    def test_unit_circle_l2(self, capsys):
        code, out, _ = run_cli(capsys, ["norms", "disk", "--roots",
                                        "[[-1, 0]]", "--q", "2"])
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 1
        assert doc["norm"]["value"] == pytest.approx(
            math.sqrt(4 * math.pi), rel=1e-9)
        assert doc["norm"]["converged"] is True
        assert doc["ratio"] == pytest.approx(
            math.sqrt(2 * math.pi) / math.sqrt(4 * math.pi), rel=1e-9)

    def test_sup_norm_power(self, capsys):
        code, out, _ = run_cli(capsys, ["norms", "disk", "--roots",
                                        "[0, 0, 0]", "--q", "inf"])
        assert code == 0
        doc = json.loads(out)
        assert doc["q"] == "inf"
        assert doc["norm"]["value"] == pytest.approx(1.0)
        assert doc["ratio"] == pytest.approx(3.0)

    def test_roots_from_file(self, capsys, tmp_path):
        f = tmp_path / "roots.json"
        f.write_text("[[0.1, 0.2], [-0.3, 0.0]]")
        code, out, _ = run_cli(capsys, ["norms", "disk", "--roots",
                                        str(f), "--q", "2"])
        assert code == 0
        assert json.loads(out)["n"] == 2


class TestEstimateCommand:
    def test_disk_sup(self, capsys):
        code, out, _ = run_cli(capsys, [
            "estimate", "disk", "--n", "2", "--q", "inf",
            "--budget", "2000", "--restarts", "2", "--seed", "0"])
        assert code == 0
        doc = json.loads(out)
        assert doc["best_ratio"] == pytest.approx(1.0, rel=1e-6)
        assert doc["evaluations"] > 0
        assert len(doc["witness_roots"]) == 2
        assert all(len(z) == 2 for z in doc["witness_roots"])


class TestVerifyCommand:
    def test_csv_shape_and_exit(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _, err = run_cli(capsys, [
            "verify", "disk", "--n", "3", "--q", "2", "--trials", "3",
            "--seed", "0", "--out", str(out_path),
            "--suites", "geometry", "nikolskii", "quadrature-oracle"])
        assert code == 0
        assert "0 failed" in err
        with out_path.open(newline="") as f:
            rows = list(csv.DictReader(f))
        assert rows
        assert list(rows[0]) == ["domain", "suite", "case_id", "n", "q",
                                 "lhs", "rhs", "margin", "pass", "seed"]
        for r in rows:
            assert r["domain"] == "disk"
            assert r["pass"] == "true"
            # repr floats round-trip exactly
            assert float(r["margin"]) >= 0.0
            assert repr(float(r["lhs"])) == r["lhs"]

    def test_unknown_suite_errors(self, capsys):
        with pytest.raises(ValueError):
            main(["verify", "disk", "--suites", "astrology"])


class TestReportCommand:
    def test_json_battery(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, [
            "report", "--out", str(tmp_path), "--format", "json"])
        assert code == 0
        docs = json.loads((tmp_path / "report.json").read_text())
        domains = {d["domain"] for d in docs}
        assert {"disk", "heptagon", "square", "stadium", "triangle",
                "truncated_disk"} <= domains
        commands = {d["command"] for d in docs}
        assert commands == {"geometry", "certify", "witness"}
        for d in docs:
            assert d["wall_s"] >= 0.0
            assert "version" in d and "seed" in d

    def test_csv_battery(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, [
            "report", "--out", str(tmp_path), "--format", "csv"])
        assert code == 0
        with (tmp_path / "report.csv").open(newline="") as f:
            rows = list(csv.DictReader(f))
        assert rows
        assert {"domain", "command", "field", "value"} <= set(rows[0])
