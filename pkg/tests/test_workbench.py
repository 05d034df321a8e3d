"""Config parsing, snapshot IO, run command, convergence driver, CLI."""

import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

import qmhd.cli as cli
from qmhd.config import RunConfig
from qmhd.mesh import cell_b_from_faces, new_grid
from qmhd.physics import GasParams
from qmhd.problems import build
from qmhd.workbench import (CSV_HEADER, ConfigError, cmd_run,
                            convergence_study, parse_config,
                            read_snapshot_csv, write_convergence_csv,
                            write_snapshot_csv, write_snapshot_vtk)


class TestParseConfig:
    def test_minimal_applies_problem_defaults(self):
        cfg = parse_config("problem = orszag-tang\nn = 400\n")
        assert cfg.gamma == pytest.approx(5.0 / 3.0)
        assert cfg.beta == 0.2
        assert cfg.alpha == 0.3
        assert cfg.bc_x == "periodic"

    def test_file_overrides_defaults(self):
        cfg = parse_config("problem = orszag-tang\nn = 64\nbeta = 0.15\n")
        assert cfg.beta == 0.15

    def test_flags_override_file(self):
        cfg = parse_config("problem = orszag-tang\nn = 64\nbeta = 0.15\n",
                           {"beta": 0.1})
        assert cfg.beta == 0.1

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_config("problem = blast\nn = 32\nalpa = 0.3\n")

    def test_alpha_range(self):
        with pytest.raises(ConfigError):
            parse_config("problem = blast\nn = 32\nalpha = 1.5\n")
        with pytest.warns(UserWarning):
            parse_config("problem = blast\nn = 32\nalpha = 0.9\n")

    def test_sections_and_comments(self):
        text = """
        [run]  # grouping only
        problem = blast   # catalog name
        n = 32
        [numerics]
        beta = 0.12
        """
        cfg = parse_config(text)
        assert cfg.problem == "blast"
        assert cfg.beta == 0.12

    def test_malformed_line(self):
        with pytest.raises(ConfigError):
            parse_config("problem blast\n")

    def test_requires_problem_and_n(self):
        with pytest.raises(ConfigError):
            parse_config("n = 4\n")
        with pytest.raises(ConfigError):
            parse_config("problem = blast\n")


class TestSnapshotCsv:
    def test_single_cell_row(self, tmp_path):
        g = new_grid(1, 1, (0.0, 1.0, 0.0, 1.0))
        g.rho[:, :] = 2.0
        g.mx[:, :] = 2.0 * 0.25
        g.en[:, :] = 3.0
        g.fbx[:, :] = 0.5
        cell_b_from_faces(g)
        path = write_snapshot_csv(g, GasParams(gamma=1.4), tmp_path / "one.csv")
        lines = path.read_text().strip().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2
        vals = [float(v) for v in lines[1].split(",")]
        assert vals[0] == 0.5 and vals[1] == 0.5
        assert vals[2] == 2.0
        assert vals[3] == 0.25
        assert vals[10] == 3.0

    def test_round_trip_bitwise(self, tmp_path):
        g, cfg = build("orszag-tang", 12)
        gas = GasParams(gamma=cfg.gamma)
        path = write_snapshot_csv(g, gas, tmp_path / "ot.csv")
        data = read_snapshot_csv(path)
        jsl, isl = g.interior
        np.testing.assert_array_equal(
            data["rho"], g.rho[jsl, isl].ravel())
        ux = (g.mx[jsl, isl] / g.rho[jsl, isl]).ravel()
        np.testing.assert_array_equal(data["ux"], ux)

    def test_row_major_j_then_i(self, tmp_path):
        g = new_grid(2, 2, (0.0, 1.0, 0.0, 1.0))
        g.rho[g.interior] = np.array([[1.0, 2.0], [3.0, 4.0]])
        g.en[:, :] = 10.0
        path = write_snapshot_csv(g, GasParams(gamma=1.4), tmp_path / "rm.csv")
        data = read_snapshot_csv(path)
        np.testing.assert_array_equal(data["rho"], [1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(data["x"], [0.25, 0.75, 0.25, 0.75])
        np.testing.assert_array_equal(data["y"], [0.25, 0.25, 0.75, 0.75])

    def test_bad_header_rejected(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("nope\n1,2\n")
        with pytest.raises(ValueError):
            read_snapshot_csv(p)


class TestSnapshotVtk:
    def test_legacy_structured_points_layout(self, tmp_path):
        g, cfg = build("blast", 8)
        path = write_snapshot_vtk(g, GasParams(gamma=cfg.gamma),
                                  tmp_path / "b.vtk")
        lines = path.read_text().splitlines()
        assert lines[0] == "# vtk DataFile Version 3.0"
        assert lines[2] == "ASCII"
        assert lines[3] == "DATASET STRUCTURED_POINTS"
        assert lines[4] == "DIMENSIONS 9 9 1"
        assert lines[5].startswith("ORIGIN 0 0")
        assert lines[6].startswith("SPACING 0.125 0.125")
        assert lines[7] == "CELL_DATA 64"
        assert "SCALARS rho double 1" in lines
        assert "SCALARS Bx double 1" in lines
        k = lines.index("SCALARS rho double 1")
        assert lines[k + 1] == "LOOKUP_TABLE default"
        assert float(lines[k + 2]) == 1.0


class TestRunCommand:
    def test_blast_run_writes_artifacts(self, tmp_path):
        cfg = RunConfig(problem="blast", n=24, t_end=1e-4, alpha=0.4,
                        beta=0.1, gamma=1.4, bc_x="zero-gradient",
                        bc_y="zero-gradient", outdir=str(tmp_path))
        art = cmd_run(cfg)
        assert art.summary_path.exists()
        payload = json.loads(art.summary_path.read_text())
        assert payload["t_end"] == pytest.approx(1e-4, abs=0.0)
        assert payload["config"]["problem"] == "blast"
        assert payload["final_monitors"]["min_p"] > 0
        # no cadence -> only the final snapshot
        csvs = [p for p in art.snapshot_paths if p.suffix == ".csv"]
        assert len(csvs) == 1
        assert art.monitor_path.exists()
        header = art.monitor_path.read_text().splitlines()[0]
        assert header == "step,time,dt,max_div_b,min_rho,min_p,max_abs_bz"

    def test_deterministic_rerun_bitwise(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            cfg = RunConfig(problem="orszag-tang", n=16, t_end=0.01,
                            alpha=0.3, beta=0.2, outdir=str(out))
            cmd_run(cfg)
        f1 = (out1 / "orszag-tang-16-final.csv").read_bytes()
        f2 = (out2 / "orszag-tang-16-final.csv").read_bytes()
        assert f1 == f2

    def test_cadence_snapshots(self, tmp_path):
        cfg = RunConfig(problem="orszag-tang", n=12, t_end=0.06, alpha=0.3,
                        beta=0.2, outdir=str(tmp_path), cadence_steps=3)
        art = cmd_run(cfg)
        csvs = [p for p in art.snapshot_paths if p.suffix == ".csv"]
        assert len(csvs) > 2


class TestConvergenceDriver:
    def test_single_resolution_no_rate(self, tmp_path):
        rows = convergence_study("waves/fast", [32], outdir=tmp_path)
        assert len(rows) == 1
        assert rows[0].rate is None
        table = write_convergence_csv(rows, tmp_path / "t.csv")
        lines = table.read_text().splitlines()
        assert lines[0] == "N,delta,rate,delta_display,rate_display"
        assert lines[1].startswith("32,")
        assert lines[1].split(",")[2] == ""

    def test_wave_pair_rate_near_one(self, tmp_path):
        rows = convergence_study("waves/fast", [32, 64], outdir=tmp_path)
        assert rows[1].rate == pytest.approx(0.95, abs=0.15)

    def test_unknown_problem(self, tmp_path):
        with pytest.raises(ConfigError):
            convergence_study("nope", [8], outdir=tmp_path)
        with pytest.raises(ConfigError):
            convergence_study("blast", [8], outdir=tmp_path)

    def test_reference_cache_reused(self, tmp_path):
        from qmhd.workbench import cached_reference
        r1 = cached_reference("riemann-bw", 400, tmp_path)
        files = list((tmp_path / "references").glob("*.npz"))
        assert len(files) == 1
        mtime = files[0].stat().st_mtime_ns
        r2 = cached_reference("riemann-bw", 400, tmp_path)
        assert files[0].stat().st_mtime_ns == mtime
        np.testing.assert_array_equal(r1["rho"], r2["rho"])


class TestCli:
    def test_list_problems(self, capsys):
        assert cli.main(["list-problems"]) == 0
        out = capsys.readouterr().out
        assert "orszag-tang" in out
        assert "riemann-bw" in out

    def test_monitors_command(self, capsys):
        assert cli.main(["monitors", "blast", "--n", "16"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["min_p"] == pytest.approx(1.0, rel=1e-12)

    def test_config_error_exit_code(self, capsys):
        assert cli.main(["run", "--problem", "nope", "--n", "8"]) == 2

    def test_run_via_cli(self, tmp_path, capsys):
        rc = cli.main(["run", "--problem", "orszag-tang", "--n", "12",
                       "--t-end", "0.005", "--outdir", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "orszag-tang-12-final.csv").exists()

    def test_flag_precedence_over_file(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("problem = orszag-tang\nn = 12\nbeta = 0.25\n")
        rc = cli.main(["run", str(cfgfile), "--beta", "0.1",
                       "--t-end", "0.004", "--outdir", str(tmp_path)])
        assert rc == 0
        payload = json.loads((tmp_path / "orszag-tang-12-summary.json").read_text())
        assert payload["config"]["beta"] == 0.1

    def test_convergence_cli(self, tmp_path, capsys):
        rc = cli.main(["convergence", "--problem", "waves/fast",
                       "--n-list", "16,32", "--outdir", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "N=    16" in out or "N=16" in out.replace(" ", "N=16")
        assert (tmp_path / "waves_fast-convergence.csv").exists()

    def test_solver_failure_exit_code(self, tmp_path, capsys):
        # nearly-ideal run at an aggressive Courant number loses positivity
        rc = cli.main(["run", "--problem", "blast", "--n", "24",
                       "--alpha", "0.02", "--beta", "0.9",
                       "--outdir", str(tmp_path)])
        assert rc == 3

    def test_io_failure_exit_code(self, tmp_path, capsys):
        blocker = tmp_path / "blocked"
        blocker.write_text("a file, not a directory")
        rc = cli.main(["run", "--problem", "orszag-tang", "--n", "12",
                       "--t-end", "0.004", "--outdir", str(blocker)])
        assert rc == 4


class TestEnvironmentAndSummary:
    def test_outdir_env_default(self, tmp_path, monkeypatch):
        from qmhd.workbench import default_outdir
        monkeypatch.setenv("QMHD_OUT", str(tmp_path / "envout"))
        cfg = RunConfig(problem="blast", n=8)
        assert default_outdir(cfg) == tmp_path / "envout"

    def test_summary_relaunches_identical_run(self, tmp_path):
        cfg = RunConfig(problem="orszag-tang", n=12, t_end=0.004, alpha=0.3,
                        beta=0.2, outdir=str(tmp_path / "a"))
        art = cmd_run(cfg)
        echo = json.loads(art.summary_path.read_text())["config"]
        echo["formats"] = tuple(echo["formats"])
        echo["outdir"] = str(tmp_path / "b")
        cfg2 = RunConfig(**echo).validate()
        art2 = cmd_run(cfg2)
        f1 = (tmp_path / "a" / "orszag-tang-12-final.csv").read_bytes()
        f2 = (tmp_path / "b" / "orszag-tang-12-final.csv").read_bytes()
        assert f1 == f2
