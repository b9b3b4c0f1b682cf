"""Experiment harness: generators, CSV schemas, metadata sidecars, CLI
exit codes and end-to-end solve round trips."""

import csv
import subprocess
import sys

import numpy as np
import pytest

import tensor_kaczmarz as tk
from tensor_kaczmarz.cli import cli_main


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def read_meta(path):
    lines = path.read_text().strip().splitlines()
    return dict(line.split("=", 1) for line in lines)


class TestGenerators:
    def test_row_slice_normalization(self):
        a = tk.gen_gaussian_tensor((30, 5, 4), 0, "row-slice")
        norms = np.linalg.norm(a.data.reshape(30, -1), axis=1)
        assert np.allclose(norms, 1.0, atol=1e-12)

    def test_determinism(self):
        a = tk.gen_gaussian_tensor((6, 5, 4), 123)
        b = tk.gen_gaussian_tensor((6, 5, 4), 123)
        assert np.array_equal(a.data, b.data)
        assert not np.array_equal(
            a.data, tk.gen_gaussian_tensor((6, 5, 4), 124).data)

    def test_entries_are_real_standard_normal(self):
        a = tk.gen_gaussian_tensor((100, 100, 100), 7)
        entries = a.data.ravel()
        assert np.all(entries.imag == 0)
        vals = entries.real
        n = vals.size
        assert abs(vals.mean()) <= 3.0 / np.sqrt(n)
        assert abs(vals.var() - 1.0) <= 3.0 * np.sqrt(2.0 / n)

    def test_matrix_rows_normalized(self):
        mat = tk.gen_gaussian_matrix((20, 15), 5, normalize_rows=True)
        assert np.allclose(np.linalg.norm(mat, axis=1), 1.0, atol=1e-12)

    def test_stream_seed_distinct(self):
        seeds = {tk.stream_seed(3, 1, t, j) for t in range(10)
                 for j in range(3)}
        assert len(seeds) == 30


class TestExperimentSpec:
    def test_default_dimensions(self):
        spec = tk.default_spec("fig2", out="x.csv")
        assert (spec.m, spec.ell, spec.n, spec.p) == (500, 20, 10, 10)
        spec = tk.default_spec("fig3", out="x.csv")
        assert (spec.m, spec.ell, spec.n, spec.p) == (100, 15, 10, 30)
        spec = tk.default_spec("fig4", out="x.csv")
        assert (spec.m, spec.ell, spec.n, spec.p) == (100, 30, 5, 15)
        spec = tk.default_spec("fig1", out="x.csv")
        assert (spec.ell, spec.n, spec.trials) == (20, 10, 50)

    def test_validation(self):
        with pytest.raises(ValueError):
            tk.ExperimentSpec(experiment="fig9")
        with pytest.raises(ValueError):
            tk.ExperimentSpec(experiment="fig1", trials=0)
        with pytest.raises(ValueError):
            tk.ExperimentSpec(experiment="fig1", m=0)


class TestFig1:
    def test_small_sweep(self, tmp_path):
        out = tmp_path / "fig1.csv"
        spec = tk.default_spec("fig1", trials=3, m_sweep=(40, 80),
                               seed=5, out=out)
        tk.run_fig1(spec)
        rows = read_rows(out)
        assert len(rows) == 2
        assert [r["m"] for r in rows] == ["40", "80"]
        assert all(r["experiment"] == "fig1" for r in rows)
        for r in rows:
            assert 0.0 < float(r["rho_trk"]) < 1.0
            assert 0.0 < float(r["rho_mrk"]) < 1.0
        meta = read_meta(tmp_path / "fig1.meta")
        assert meta["seed"] == "5"
        assert meta["m_sweep"] == "40,80"


class TestFig2:
    def test_schema_and_monotonicity(self, tmp_path):
        out = tmp_path / "fig2.csv"
        spec = tk.default_spec("fig2", m=60, ell=8, n=4, p=3, trials=3,
                               iterations=150, log_stride=25, seed=9,
                               out=out)
        tk.run_fig2(spec)
        rows = read_rows(out)
        assert set(rows[0].keys()) == {"experiment", "trial", "method",
                                       "iteration", "rel_error", "residual",
                                       "cum_time_ns"}
        trials = {r["trial"] for r in rows}
        assert trials == {"0", "1", "2"}
        methods = {r["method"] for r in rows}
        assert methods == {"trk", "mrk"}
        for trial in trials:
            errs = [float(r["rel_error"]) for r in rows
                    if r["trial"] == trial and r["method"] == "trk"]
            assert np.all(np.diff(errs) <= 1e-12)
            assert errs[0] == 1.0


class TestFig3:
    def test_matricized_baseline(self, tmp_path):
        out = tmp_path / "fig3.csv"
        spec = tk.default_spec("fig3", m=20, ell=5, n=4, p=3, trials=2,
                               iterations=200, log_stride=50, seed=3,
                               out=out)
        tk.run_fig3(spec)
        meta = read_meta(tmp_path / "fig3.meta")
        assert meta["matrix_shape"] == "80x20"
        rows = read_rows(out)
        assert {r["method"] for r in rows} == {"trk", "mrk"}
        # both solvers chase the same truth from the same zero start
        for trial in ("0", "1"):
            first = [r for r in rows if r["trial"] == trial
                     and r["iteration"] == "0"]
            assert all(float(r["rel_error"]) == 1.0 for r in first)

    def test_full_dims_matrix_shape(self):
        spec = tk.default_spec("fig3", out="unused.csv")
        assert spec.m * spec.n == 1000
        assert spec.ell * spec.n == 150


class TestFig4:
    def test_methods_and_bounds(self, tmp_path):
        out = tmp_path / "fig4.csv"
        spec = tk.default_spec("fig4", m=25, ell=6, n=3, p=4, trials=3,
                               iterations=120, log_stride=30, seed=7,
                               out=out)
        tk.run_fig4(spec)
        rows = read_rows(out)
        methods = {r["method"] for r in rows}
        assert methods == {"trk", "brk", "trk_ub", "brk_ub"}

        # the two solver trajectories coincide per trial
        for trial in ("0", "1", "2"):
            trk = [float(r["rel_error"]) for r in rows
                   if r["trial"] == trial and r["method"] == "trk"]
            brk = [float(r["rel_error"]) for r in rows
                   if r["trial"] == trial and r["method"] == "brk"]
            dev = np.abs(np.array(trk) - np.array(brk))
            assert np.all(dev <= 1e-9 * np.maximum(trk, 1e-30))

        # bound curves decay geometrically with the reported rates
        meta = read_meta(tmp_path / "fig4.meta")
        rho_trk, rho_brk = float(meta["rho_trk"]), float(meta["rho_brk"])
        trk_ub = {int(r["iteration"]): float(r["rel_error"]) for r in rows
                  if r["method"] == "trk_ub"}
        brk_ub = {int(r["iteration"]): float(r["rel_error"]) for r in rows
                  if r["method"] == "brk_ub"}
        for t, v in trk_ub.items():
            assert v == pytest.approx(rho_trk ** (t / 2))
        # the TRK bound is at least as strong as the block bound
        assert all(trk_ub[t] <= brk_ub[t] + 1e-12 for t in trk_ub)

        # the median trajectory stays below the TRK bound curve
        by_iteration = {}
        for r in rows:
            if r["method"] == "trk":
                by_iteration.setdefault(int(r["iteration"]), []).append(
                    float(r["rel_error"]))
        for t, values in by_iteration.items():
            assert np.median(values) <= trk_ub[t] * 1.1

    def test_determinism_modulo_time(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            spec = tk.default_spec("fig4", m=15, ell=4, n=3, p=2, trials=2,
                                   iterations=60, log_stride=20, seed=21,
                                   out=out)
            tk.run_fig4(spec)
            outs.append(out)

        def strip_time(path):
            lines = path.read_text().splitlines()
            return [",".join(line.split(",")[:-1]) for line in lines]

        assert strip_time(outs[0]) == strip_time(outs[1])


class TestCli:
    def test_run_and_files(self, tmp_path):
        out = tmp_path / "fig1.csv"
        code = cli_main(["run", "--experiment", "fig1", "--trials", "2",
                         "--m-sweep", "30,60", "--seed", "4",
                         "--out", str(out)])
        assert code == 0
        assert out.exists() and (tmp_path / "fig1.meta").exists()

    def test_unknown_flag_exits_2(self):
        assert cli_main(["run", "--nonsense"]) == 2
        assert cli_main(["frobnicate"]) == 2

    def test_runtime_error_exits_1(self, tmp_path):
        code = cli_main(["solve", "--a", str(tmp_path / "missing.tns"),
                         "--b", str(tmp_path / "missing.tns"),
                         "--method", "trk", "--out",
                         str(tmp_path / "x.tns")])
        assert code == 1

    def test_gen_solve_round_trip(self, tmp_path):
        prefix = tmp_path / "sys"
        assert cli_main(["gen", "--m", "18", "--ell", "4", "--n", "3",
                         "--p", "2", "--seed", "11", "--out",
                         str(prefix)]) == 0
        out = tmp_path / "x.tns"
        assert cli_main(["solve", "--a", str(prefix) + "_a.tns",
                         "--b", str(prefix) + "_b.tns",
                         "--method", "trk-fourier", "--iters", "1500",
                         "--seed", "1", "--out", str(out)]) == 0
        a = tk.read_tns(str(prefix) + "_a.tns")
        b = tk.read_tns(str(prefix) + "_b.tns")
        x = tk.read_tns(out)
        assert tk.residual(a, x, b) <= 1e-6 * tk.frobenius_norm(b)
        meta = read_meta(tmp_path / "x.meta")
        assert meta["method"] == "trk-fourier"
        assert meta["seed"] == "1"

    @pytest.mark.parametrize("method", ["mrk", "trk", "brk"])
    def test_solve_methods(self, tmp_path, method):
        prefix = tmp_path / "sys"
        cli_main(["gen", "--m", "12", "--ell", "3", "--n", "2", "--p", "2",
                  "--seed", "2", "--out", str(prefix)])
        out = tmp_path / f"x_{method}.tns"
        assert cli_main(["solve", "--a", str(prefix) + "_a.tns",
                         "--b", str(prefix) + "_b.tns", "--method", method,
                         "--iters", "2000", "--seed", "3",
                         "--out", str(out)]) == 0
        a = tk.read_tns(str(prefix) + "_a.tns")
        b = tk.read_tns(str(prefix) + "_b.tns")
        assert tk.residual(a, tk.read_tns(out), b) <= 1e-5 \
            * tk.frobenius_norm(b)

    def test_rates_prints_report(self, tmp_path, capsys):
        prefix = tmp_path / "sys"
        cli_main(["gen", "--m", "10", "--ell", "3", "--n", "2", "--p", "1",
                  "--seed", "6", "--out", str(prefix)])
        assert cli_main(["rates", "--a", str(prefix) + "_a.tns"]) == 0
        captured = capsys.readouterr().out
        assert "method=trk rho=" in captured
        assert "method=brk rho=" in captured
        assert "method=exact rho=" in captured
        assert "slice=0" in captured

    def test_console_entry_point(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "tensor_kaczmarz", "gen", "--m", "4",
             "--ell", "2", "--n", "2", "--seed", "1",
             "--out", str(tmp_path / "t")],
            capture_output=True, text=True)
        assert result.returncode == 0
        assert (tmp_path / "t_a.tns").exists()
