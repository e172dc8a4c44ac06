import csv
import io
import json
import math
import subprocess
import sys

import pytest

from sphharm.cli import run
from sphharm.exactpoly import MultiPoly


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestDim:
    def test_d3_n5(self, capsys):
        code, out = invoke(capsys, "dim", "--d", "3", "--n", "5")
        assert code == 0
        assert json.loads(out)["dim"] == 11

    def test_csv(self, capsys):
        code, out = invoke(capsys, "dim", "--d", "4", "--n", "2", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["d", "n", "dim"]
        assert rows[1] == ["4", "2", "9"]


class TestQuad:
    def test_weights_sum_to_4pi(self, capsys):
        code, out = invoke(capsys, "quad", "--d", "3", "--degree", "6")
        assert code == 0
        payload = json.loads(out)
        assert payload["d"] == 3
        assert sum(payload["weights"]) == pytest.approx(4 * math.pi, abs=1e-12)
        assert all(abs(sum(c * c for c in p) - 1) < 1e-12 for p in payload["points"])

    def test_csv_parses(self, capsys):
        code, out = invoke(capsys, "quad", "--d", "2", "--degree", "3", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["x1", "x2", "weight"]
        total = sum(float(r[-1]) for r in rows[1:])
        assert total == pytest.approx(2 * math.pi, abs=1e-12)


class TestBasis:
    def test_maxwell_json(self, capsys):
        code, out = invoke(capsys, "basis", "--d", "3", "--n", "2", "--kind", "maxwell")
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 5
        el = MultiPoly.from_json_dict(payload["elements"][0]["polynomial"])
        assert el.laplacian().is_zero()

    def test_sphcoord_json(self, capsys):
        code, out = invoke(capsys, "basis", "--d", "4", "--n", "1", "--kind", "sphcoord")
        payload = json.loads(out)
        assert payload["count"] == 4
        assert payload["orthonormal"] is True

    def test_coeffs_format(self, capsys):
        code, out = invoke(capsys, "basis", "--d", "3", "--n", "1", "--format", "coeffs")
        lines = out.strip().splitlines()
        assert len(lines) == 3
        assert json.loads(lines[0])["terms"]

    def test_kind_dimension_mismatch(self, capsys):
        code, _ = invoke(capsys, "basis", "--d", "3", "--n", "1", "--kind", "d2")
        assert code == 2


class TestEvalAndProject:
    def test_eval_rational(self, capsys, tmp_path):
        p = MultiPoly(2, {(2, 0): 1, (0, 2): 1})
        path = tmp_path / "p.json"
        path.write_text(p.to_json())
        code, out = invoke(capsys, "eval", "--poly", str(path), "--rational", "3/5,4/5")
        assert code == 0
        assert json.loads(out) == {"value": "1", "exact": True}

    def test_eval_float(self, capsys, tmp_path):
        p = MultiPoly(3, {(1, 1, 0): 1})
        path = tmp_path / "p.json"
        path.write_text(p.to_json())
        code, out = invoke(capsys, "eval", "--poly", str(path), "--point", "1,1,1")
        assert json.loads(out)["value"] == 1.0

    def test_project_matches_library(self, capsys, tmp_path):
        from sphharm.kernels import project_homogeneous

        p = MultiPoly.monomial(3, (2, 0, 0))
        path = tmp_path / "p.json"
        path.write_text(p.to_json())
        code, out = invoke(capsys, "project", "--poly", str(path))
        assert code == 0
        assert MultiPoly.from_json(out) == project_homogeneous(p)

    def test_project_rejects_inhomogeneous(self, capsys, tmp_path):
        p = MultiPoly(2, {(0, 0): 1, (1, 0): 1})
        path = tmp_path / "p.json"
        path.write_text(p.to_json())
        code, _ = invoke(capsys, "project", "--poly", str(path))
        assert code == 2

    def test_missing_file(self, capsys):
        code, _ = invoke(capsys, "eval", "--poly", "/nonexistent.json", "--point", "1,0")
        assert code == 2

    def test_malformed_json_names_problem(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"terms": []}')
        code, _ = invoke(capsys, "eval", "--poly", str(path), "--point", "1,0")
        assert code == 2


class TestZonal:
    def test_value(self, capsys):
        code, out = invoke(capsys, "zonal", "--d", "3", "--n", "2", "--t", "0.5")
        assert code == 0
        # (2n+1) P_2(0.5) = 5 * (-1/8)
        assert json.loads(out)["value"] == pytest.approx(-0.625, abs=1e-14)

    def test_profile_table(self, capsys):
        code, out = invoke(capsys, "zonal", "--d", "3", "--profile-table", "--nmax", "4")
        lines = out.strip().splitlines()
        assert len(lines) == 5
        assert json.loads(lines[1])["lambda"] == "1/2"


class TestFunkHecke:
    def test_linear_profile(self, capsys):
        code, out = invoke(capsys, "funk-hecke", "--d", "3", "--n", "1", "--coeffs", "0,1")
        assert code == 0
        assert json.loads(out)["lambda_n"] == pytest.approx(4 * math.pi / 3, abs=1e-10)

    def test_needs_profile(self, capsys):
        code, _ = invoke(capsys, "funk-hecke", "--d", "3", "--n", "1")
        assert code == 2


class TestFundsysAndInterp:
    def test_fundsys_diagnostics(self, capsys):
        code, out = invoke(capsys, "fundsys", "--d", "3", "--n", "2", "--seed", "0")
        assert code == 0
        payload = json.loads(out)
        assert payload["size"] == 5
        assert payload["gram_determinant"] > 0
        assert payload["min_eigenvalue"] > 0

    def test_interp_round_trip(self, capsys, tmp_path):
        from sphharm.zonalsys import greedy_fundamental_system

        system = greedy_fundamental_system(1, 3, seed=0)
        target = system.basis[0]
        values = [target(p) for p in system.points]
        path = tmp_path / "values.json"
        path.write_text(json.dumps(values))
        code, out = invoke(
            capsys, "interp", "--d", "3", "--n", "1", "--seed", "0", "--values", str(path)
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["samples"]) == 10
        for sample in payload["samples"]:
            assert sample["value"] == pytest.approx(target(tuple(sample["point"])), abs=1e-7)

    def test_interp_value_count(self, capsys, tmp_path):
        path = tmp_path / "values.json"
        path.write_text("[1.0]")
        code, _ = invoke(capsys, "interp", "--d", "3", "--n", "1", "--values", str(path))
        assert code == 2


class TestCheck:
    def test_passes_small(self, capsys):
        code, out = invoke(capsys, "check", "--d", "3", "--nmax", "2", "--seed", "0")
        assert code == 0
        payload = json.loads(out)
        names = [e["check"] for e in payload["checks"]]
        assert names == sorted(names)
        assert all(e["status"] == "pass" for e in payload["checks"])

    def test_tolerance_override_can_fail(self, capsys):
        code, out = invoke(
            capsys, "check", "--d", "3", "--nmax", "2", "--tol", "addition-formula=1e-30"
        )
        assert code == 1
        payload = json.loads(out)
        failing = [e for e in payload["checks"] if e["status"] == "fail"]
        assert failing and failing[0]["check"] == "addition-formula"
        assert failing[0]["witness"]

    def test_unknown_tolerance_name(self, capsys):
        code, _ = invoke(capsys, "check", "--tol", "bogus=1")
        assert code == 2

    def test_csv(self, capsys):
        code, out = invoke(capsys, "check", "--d", "2", "--nmax", "1", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["check", "status", "max_residual", "witness"]
        assert code == 0


class TestDeterminism:
    def test_check_byte_identical(self):
        cmd = [sys.executable, "-m", "sphharm.cli", "check", "--d", "3", "--nmax", "2", "--seed", "7"]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        assert a.returncode == 0
        assert a.stdout == b.stdout

    def test_fundsys_byte_identical(self):
        cmd = [sys.executable, "-m", "sphharm.cli", "fundsys", "--d", "3", "--n", "2", "--seed", "3"]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        assert a.stdout == b.stdout


class TestUsageErrors:
    def test_unknown_subcommand(self):
        assert run(["frobnicate"]) == 2

    def test_no_subcommand(self):
        assert run([]) == 2

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out.json"
        code, out = invoke(capsys, "dim", "--d", "3", "--n", "1", "--output", str(path))
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["dim"] == 3


def test_float_serialization_round_trips(capsys):
    code, out = invoke(capsys, "quad", "--d", "3", "--degree", "8")
    payload = json.loads(out)
    # 17 significant digits survive a JSON round trip bit-exactly
    rule_weights = payload["weights"]
    assert all(float(repr(w)) == w for w in rule_weights)
