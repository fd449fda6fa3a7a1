import csv
import io
import json
import math

import numpy as np
import pytest

from hardyq import cli
from hardyq.geometry import symmetric_dart
from hardyq.verifier import CheckReport


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}))
    return str(path)


@pytest.fixture
def dart_file(tmp_path):
    path = tmp_path / "dart.json"
    path.write_text(json.dumps({"vertices": symmetric_dart(1.7 * math.pi, 0.3).tolist()}))
    return str(path)


def test_constant(capsys):
    code, out, _ = run(["constant", "--beta", "6.2832"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["c"] == pytest.approx(0.20536, abs=1e-5)
    assert data["alpha"] == pytest.approx(0.71128, abs=1e-5)


def test_constant_in_degrees(capsys):
    code, out, _ = run(["constant", "--beta", "270", "--degrees"], capsys)
    assert code == 0 and json.loads(out)["c"] == 0.25


def test_critical_angle(capsys):
    code, out, _ = run(["critical-angle"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["beta_cr"] == pytest.approx(4.856055320931662, abs=1e-12)
    assert round(data["beta_cr_over_pi"], 3) == 1.546


def test_profile_csv(capsys):
    code, out, _ = run(["profile", "--beta", "5.5", "--samples", "25"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 25
    assert list(rows[0]) == ["theta", "psi", "f", "g", "V"]
    assert all(float(r["psi"]) > 0 for r in rows)


def test_classify_square(square_file, capsys):
    code, out, _ = run(["classify", "--quad", square_file], capsys)
    data = json.loads(out)
    assert code == 0 and data["type"] == "Convex" and data["c"] == 0.25


def test_classify_round_trip(dart_file, tmp_path, capsys):
    code, out, _ = run(["classify", "--quad", dart_file, "--svg", str(tmp_path / "d.svg")], capsys)
    first = json.loads(out)
    assert code == 0 and (tmp_path / "d.svg").exists()
    assert set(first["angles"]) == {"radians", "degrees"}
    assert first["angles"]["degrees"]["beta"] == pytest.approx(306.0)
    again = tmp_path / "again.json"
    again.write_text(out)
    code, out2, _ = run(["classify", "--quad", str(again)], capsys)
    second = json.loads(out2)
    assert second["type"] == first["type"]
    assert second["c"] == first["c"]
    assert np.allclose(second["vertices"], first["vertices"], atol=1e-14)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "c.json"
    code, out, _ = run(["constant", "--beta", "5.0", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["beta"] == 5.0


def test_sector(capsys):
    code, out, _ = run(["sector", "--beta", "6.283185307179586", "--n", "1000"], capsys)
    data = json.loads(out)
    assert code == 0 and data["method"] == "Sector1D" and data["converged"]
    assert data["lambda_min"] == pytest.approx(0.2054, abs=2e-3)


def test_estimate_with_refinement(dart_file, capsys):
    code, out, _ = run(["estimate", "--quad", dart_file, "--h", "0.03", "--refine", "1"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data) == 2
    assert data[1]["discretization"] == pytest.approx(0.015)
    assert all(r["method"] == "Quad2D" for r in data)


def test_verify_quad_and_beta(dart_file, capsys):
    code, out, _ = run(["verify", "--quad", dart_file], capsys)
    assert code == 0 and all(r["passed"] for r in json.loads(out))
    code, out, _ = run(["verify", "--beta", "5.2"], capsys)
    assert code == 0 and len(json.loads(out)) == 4


def test_verify_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "lemma_suite",
                        lambda betas: [CheckReport("forced", {}, -1.0, {}, 1e-10)])
    code, out, _ = run(["verify", "--beta", "5.2"], capsys)
    assert code == cli.EXIT_VERIFY
    assert json.loads(out)[0]["passed"] is False


@pytest.mark.parametrize("argv, flag", [
    (["constant"], "--beta"),
    (["sector", "--beta", "5", "--n", "0"], "--n"),
    (["estimate", "--quad", "x.json", "--h", "-1"], "--h"),
    (["classify", "--quad", "/nonexistent/q.json"], "--quad"),
    (["profile", "--beta", "5", "--format", "xml"], "--format"),
    (["nonsense"], "nonsense"),
])
def test_usage_errors(argv, flag, capsys):
    code, _, err = run(argv, capsys)
    assert code == cli.EXIT_USAGE
    assert flag in err


def test_missing_command(capsys):
    code, _, err = run([], capsys)
    assert code == cli.EXIT_USAGE and "command" in err


def test_domain_errors(tmp_path, capsys):
    code, _, err = run(["constant", "--beta", "2.0"], capsys)
    assert code == cli.EXIT_DOMAIN and "HardyDomainError" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]}))
    code, _, err = run(["classify", "--quad", str(bad)], capsys)
    assert code == cli.EXIT_DOMAIN and "DegenerateInput" in err


def test_deterministic_output(dart_file, capsys):
    _, a, _ = run(["classify", "--quad", dart_file], capsys)
    _, b, _ = run(["classify", "--quad", dart_file], capsys)
    assert a == b
