"""Command line surface: schemas, exit codes, determinism, figures."""
import json
import subprocess
import sys

import pytest

from rosspec import (
    CheckEntry,
    NumericalError,
    PropositionReport,
    TheoremReport,
    TheoremRow,
    make_space,
)
from rosspec.cli import main
from rosspec.report import CSV_COLUMNS
import rosspec.cli

EIG_ARGS = ["eig", "--space", "R", "--ball", "1.0",
            "--alpha", "-0.2", "--ell", "1"]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def diag_of(err):
    lines = [ln for ln in err.splitlines() if ln.strip()]
    assert len(lines) == 1
    return json.loads(lines[0])


class TestEig:
    def test_json_schema(self, capsys):
        code, out, err = run(capsys, EIG_ARGS)
        assert code == 0 and err == ""
        data = json.loads(out)
        assert set(data) == {"command", "config", "tolerances", "result"}
        assert data["command"] == "eig"
        assert data["config"]["alpha"] == -0.2
        res = data["result"]
        assert res["kind"] == "real" and res["m"] == 2
        assert res["lambda"] > 0.0
        assert res["bc_residual"] <= 1e-8
        assert res["nodes"] == 0

    def test_csv_annulus(self, capsys):
        code, out, err = run(capsys, [
            "eig", "--space", "C", "--annulus", "0.3:1.2",
            "--alpha", "-0.1", "--ell", "0", "--format", "csv"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# ")
        json.loads(lines[0][2:])
        assert lines[1] == ",".join(CSV_COLUMNS)
        cells = dict(zip(CSV_COLUMNS, lines[2].split(",")))
        assert cells["kind"] == "complex"
        assert cells["R1"] == "0.3"
        assert float(cells["lambda"]) != 0.0

    def test_requires_exactly_one_domain(self, capsys):
        code, _, err = run(capsys, [
            "eig", "--space", "R", "--alpha", "-0.2", "--ell", "1"])
        assert code == 2
        assert diag_of(err)["error"] == "ValidationError"
        code, _, err = run(capsys, [
            "eig", "--space", "R", "--ball", "1.0", "--annulus", "0.3:1.2",
            "--alpha", "-0.2", "--ell", "1"])
        assert code == 2

    def test_unknown_space(self, capsys):
        code, _, err = run(capsys, [
            "eig", "--space", "Z", "--ball", "1.0",
            "--alpha", "-0.2", "--ell", "1"])
        assert code == 2
        assert diag_of(err)["error"] == "InvalidSpaceError"

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, EIG_ARGS[:-2] + ["--ell", "1", "--index", "0"])
        assert code == 2


class TestSweep:
    ARGS = ["sweep", "--spaces", "R,C", "--radii", "0.5", "--alphas", "-0.2",
            "--ells", "1", "--indices", "1", "--format", "csv"]

    def test_csv_shape(self, capsys):
        code, out, err = run(capsys, self.ARGS)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# ")
        assert lines[1] == ",".join(CSV_COLUMNS)
        assert len(lines) == 2 + 2
        first = dict(zip(CSV_COLUMNS, lines[2].split(",")))
        assert first["kind"] == "real"
        assert first["R1"] == "0"
        assert first["ell"] == "1"

    def test_in_process_determinism(self, capsys):
        _, out1, _ = run(capsys, self.ARGS)
        _, out2, _ = run(capsys, self.ARGS)
        assert out1 == out2

    def test_subprocess_determinism(self):
        cmd = [sys.executable, "-m", "rosspec.cli"] + self.ARGS
        a = subprocess.run(cmd, capture_output=True, check=True)
        b = subprocess.run(cmd, capture_output=True, check=True)
        assert a.stdout == b.stdout
        assert a.stdout.decode().splitlines()[1] == ",".join(CSV_COLUMNS)


class TestSteklov:
    def test_routes_reported(self, capsys):
        code, out, _ = run(capsys, ["steklov", "--space", "H", "--ball", "1.0"])
        assert code == 0
        res = json.loads(out)["result"]
        assert abs(res["route_difference"]) <= 1e-8
        assert res["inverse_radius_margin"] > 0.0
        assert res["sigma1"] > 0.0


class TestCheck:
    def test_alpha_grid(self, capsys):
        code, out, _ = run(capsys, [
            "check", "--space", "R", "--ball", "1.0", "--alpha-grid", "3"])
        assert code == 0
        result = json.loads(out)["result"]
        assert result["all_passed"] is True
        assert len(result["reports"]) == 3
        alphas = [r["alpha"] for r in result["reports"]]
        assert alphas[-1] == 0.0
        assert alphas[0] < alphas[1] < alphas[2]

    def test_alpha_and_grid_conflict(self, capsys):
        code, _, err = run(capsys, [
            "check", "--space", "R", "--ball", "1.0",
            "--alpha", "-0.2", "--alpha-grid", "3"])
        assert code == 2

    def test_failure_exits_4(self, capsys, monkeypatch):
        space = make_space("R", 2)
        entry = CheckEntry("derivative_positive", -1.0, 0.0, False)
        fake = PropositionReport(space=space, R=1.0, alpha=-0.2, lam2=0.5,
                                 tau2=1.0, sigma1=0.7, entries=(entry,),
                                 all_passed=False)
        monkeypatch.setattr(rosspec.cli, "check_propositions",
                            lambda *a, **k: fake)
        code, _, err = run(capsys, [
            "check", "--space", "R", "--ball", "1.0", "--alpha", "-0.2"])
        assert code == 4
        diag = diag_of(err)
        assert diag["error"] == "assertion"
        assert diag["payload"]["checks"] == ["derivative_positive"]


class TestVerify:
    def test_malformed_inners(self, capsys):
        bad = ["0.1:0.2", "a:b:4", "0.5:0.2:3", "0.1:0.3:1"]
        for text in bad:
            code, _, err = run(capsys, [
                "verify", "--space", "R", "--volume-of-ball", "1.0",
                "--alpha", "-0.2", "--inners", text])
            assert code == 2, text
            assert diag_of(err)["error"] == "ValidationError"

    def test_gap_failure_exits_4(self, capsys, monkeypatch):
        space = make_space("R", 2)
        row = TheoremRow(r_inner=0.1, r_outer=1.0, lam2_domain=2.0,
                         lam2_ball=1.5, mode_ell=1, mode_index=1, gap=-0.5,
                         asymmetry=0.05, rayleigh_bound=1.7, resolvable=True)
        fake = TheoremReport(space=space, volume=0.54, alpha=-0.2,
                             ball_radius=1.0, sigma1=0.7, lam2_ball=1.5,
                             rows=(row,), fitted_constant=None,
                             all_gaps_positive=False,
                             gap_vanishes_with_asymmetry=True,
                             gap_monotone=True)
        monkeypatch.setattr(rosspec.cli, "verify_theorem",
                            lambda *a, **k: fake)
        code, _, err = run(capsys, [
            "verify", "--space", "R", "--volume-of-ball", "1.0",
            "--alpha", "-0.2", "--inners", "0.1:0.1:1"])
        assert code == 4
        assert diag_of(err)["error"] == "assertion"


class TestNumericalFailure:
    def test_exit_3(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise NumericalError("step size collapsed")

        monkeypatch.setattr(rosspec.cli, "eigen_radial", boom)
        code, _, err = run(capsys, EIG_ARGS)
        assert code == 3
        assert diag_of(err)["error"] == "NumericalError"


class TestTolerances:
    def test_env_profile(self, capsys, monkeypatch):
        monkeypatch.setenv("ROSSPEC_TOL_PROFILE", "fast")
        _, out, _ = run(capsys, EIG_ARGS)
        assert json.loads(out)["tolerances"]["name"] == "fast"

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv("ROSSPEC_TOL_PROFILE", "fast")
        _, out, _ = run(capsys, EIG_ARGS + ["--tol-profile", "strict"])
        assert json.loads(out)["tolerances"]["name"] == "strict"

    def test_unknown_env_profile(self, capsys, monkeypatch):
        monkeypatch.setenv("ROSSPEC_TOL_PROFILE", "bogus")
        code, _, err = run(capsys, EIG_ARGS)
        assert code == 2


class TestOutputAndFigures:
    def test_out_file_with_companion_figure(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        code, stdout, _ = run(capsys, EIG_ARGS + ["--out", str(out)])
        assert code == 0 and stdout == ""
        data = json.loads(out.read_text())
        assert data["command"] == "eig"
        assert (tmp_path / "run_profile.png").exists()

    def test_no_figures(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        code, _, _ = run(capsys, EIG_ARGS + ["--out", str(out), "--no-figures"])
        assert code == 0
        assert not (tmp_path / "run_profile.png").exists()

    def test_figures_dir(self, tmp_path, capsys):
        figs = tmp_path / "figs"
        figs.mkdir()
        code, out, _ = run(capsys, EIG_ARGS + ["--figures", str(figs)])
        assert code == 0
        assert json.loads(out)["command"] == "eig"
        assert (figs / "profile.png").exists()

    def test_stdout_has_no_figures(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, out, _ = run(capsys, EIG_ARGS)
        assert code == 0
        assert list(tmp_path.glob("*.png")) == []


class TestEntryPoints:
    def test_help(self, capsys):
        code, out, _ = run(capsys, ["--help"])
        assert code == 0
        assert "eig" in out and "verify" in out

    def test_no_command(self, capsys):
        code, _, err = run(capsys, [])
        assert code == 2
        assert diag_of(err)["error"] == "validation"
