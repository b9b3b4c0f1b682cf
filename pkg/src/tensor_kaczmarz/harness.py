"""Experiment generation and figure-reproduction runs.

Each ``run_figN`` builds random systems at the dimensions used in the
corresponding experiment, runs the relevant solvers or rate calculators
over independent trials, and writes a CSV plus a ``.meta`` sidecar
recording the full configuration.  Trials draw their random streams from
the master seed through named SeedSequence keys, so reruns are bitwise
reproducible and trials are independent of execution order.

CSV schemas
-----------
fig1:            experiment,m,rho_trk,rho_mrk
fig2/fig3/fig4:  experiment,trial,method,iteration,rel_error,residual,cum_time_ns

The wall-time column is the only nondeterministic field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import bound_curve, contraction_brk, contraction_mrk, \
    contraction_trk
from .core import Tensor3, bcirc, read_tns, unfold, write_tns, zeros
from .fourier import tprod_fft
from .solvers import (
    IterateLog,
    SolverConfig,
    block_mrk_fourier_solve,
    mrk_solve,
    residual,
    trk_fourier_solve,
    trk_solve,
)

_EXPERIMENTS = ("fig1", "fig2", "fig3", "fig4", "custom")
_NORMALIZATIONS = ("row-slice", "matrix-row", "none")

TRAJECTORY_HEADER = ("experiment,trial,method,iteration,rel_error,"
                     "residual,cum_time_ns")
FIG1_HEADER = "experiment,m,rho_trk,rho_mrk"


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to rerun one experiment deterministically."""

    experiment: str
    m: int = 100
    ell: int = 10
    n: int = 5
    p: int = 5
    mu: int | None = None
    trials: int = 20
    iterations: int = 1000
    seed: int = 0
    sampling: str = "uniform"
    normalization: str = "row-slice"
    log_stride: int = 10
    out: str | Path | None = None
    m_sweep: tuple[int, ...] = field(default=(50, 100, 200, 300, 400, 500))

    def __post_init__(self):
        if self.experiment not in _EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if min(self.m, self.ell, self.n, self.p) < 1:
            raise ValueError("dimensions must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.normalization not in _NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")

    @property
    def matrix_rows(self) -> int:
        """Row count of the matrix baseline (defaults to m)."""
        return self.m if self.mu is None else self.mu


_DEFAULTS = {
    "fig1": dict(ell=20, n=10, p=1, trials=50,
                 m_sweep=(50, 100, 200, 300, 400, 500),
                 normalization="row-slice"),
    "fig2": dict(m=500, ell=20, n=10, p=10, trials=20, iterations=3000,
                 log_stride=25, normalization="row-slice"),
    "fig3": dict(m=100, ell=15, n=10, p=30, trials=20, iterations=4000,
                 log_stride=25, normalization="none"),
    "fig4": dict(m=100, ell=30, n=5, p=15, trials=20, iterations=1500,
                 log_stride=10, normalization="none"),
}


def default_spec(experiment: str, **overrides) -> ExperimentSpec:
    """Spec preloaded with the named experiment's standard dimensions."""
    base = dict(_DEFAULTS.get(experiment, {}))
    base.update(overrides)
    return ExperimentSpec(experiment=experiment, **base)


def stream_seed(master: int, *key: int) -> int:
    """64-bit seed for the sub-stream addressed by ``key``.

    Derived through SeedSequence so distinct keys give independent streams
    and the mapping is platform-stable.
    """
    ss = np.random.SeedSequence([int(master), *(int(k) for k in key)])
    return int(ss.generate_state(1, np.uint64)[0])


def gen_gaussian_tensor(dims: tuple[int, int, int], seed: int,
                        normalization: str = "none") -> Tensor3:
    """Real standard-normal tensor (stored complex), deterministic per seed.

    With ``normalization="row-slice"`` every 1 x l x n row slice is scaled
    to unit Frobenius norm.
    """
    if normalization not in _NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    rng = np.random.default_rng(seed)
    data = rng.standard_normal(dims)
    if normalization == "row-slice":
        scale = np.sqrt(np.einsum("ilk,ilk->i", data, data))
        data = data / scale[:, None, None]
    return Tensor3(data.astype(np.complex128))


def gen_gaussian_matrix(shape: tuple[int, int], seed: int,
                        normalize_rows: bool = False) -> np.ndarray:
    """Real standard-normal matrix (stored complex); optional unit rows."""
    rng = np.random.default_rng(seed)
    data = rng.standard_normal(shape)
    if normalize_rows:
        data = data / np.linalg.norm(data, axis=1)[:, None]
    return data.astype(np.complex128)


def _fmt(value) -> str:
    return repr(float(value))


def _write_meta(path: Path, entries: dict) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for key, value in entries.items():
            fh.write(f"{key}={value}\n")


def _meta_path(out: Path) -> Path:
    return out.with_suffix(".meta")


def _base_meta(spec: ExperimentSpec) -> dict:
    return {
        "experiment": spec.experiment,
        "m": spec.m, "ell": spec.ell, "n": spec.n, "p": spec.p,
        "mu": spec.matrix_rows,
        "trials": spec.trials,
        "iterations": spec.iterations,
        "seed": spec.seed,
        "sampling": spec.sampling,
        "normalization": spec.normalization,
        "log_stride": spec.log_stride,
        "generator": "numpy-pcg64-standard-normal",
        "version": __version__,
    }


def _trajectory_rows(spec: ExperimentSpec, trial: int, method: str,
                     log: IterateLog) -> list[str]:
    rel = log.rel_error
    rows = []
    for j, it in enumerate(log.iterations):
        rows.append(f"{spec.experiment},{trial},{method},{it},"
                    f"{_fmt(rel[j])},{_fmt(log.residual[j])},"
                    f"{log.time_ns[j]}")
    return rows


def _bound_rows(spec: ExperimentSpec, method: str, rho: float,
                iterations: list[int]) -> list[str]:
    curve = bound_curve(rho, 1.0, iterations[-1] + 1)
    rows = []
    for it in iterations:
        rows.append(f"{spec.experiment},0,{method},{it},"
                    f"{_fmt(curve[it])},nan,0")
    return rows


def _finish(out, header: str, rows: list[str], meta: dict,
            started_ns: int) -> Path:
    if out is None:
        raise ValueError("spec.out is required to run an experiment")
    out = Path(out)
    with open(out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")
    meta = dict(meta)
    meta["rows"] = len(rows)
    meta["out"] = out.name
    meta["elapsed_ns"] = time.perf_counter_ns() - started_ns
    _write_meta(_meta_path(out), meta)
    return out


def run_fig1(spec: ExperimentSpec) -> Path:
    """Mean contraction coefficients of TRK and MRK over a sweep of m.

    Tensor realizations are row-slice normalized, matrix realizations
    row normalized; both carry the same element count m * ell * n.
    """
    started = time.perf_counter_ns()
    rows = []
    for m in spec.m_sweep:
        trk_vals = np.empty(spec.trials)
        mrk_vals = np.empty(spec.trials)
        for trial in range(spec.trials):
            a = gen_gaussian_tensor(
                (m, spec.ell, spec.n), stream_seed(spec.seed, 1, m, trial, 0),
                "row-slice")
            trk_vals[trial] = contraction_trk(a).rho
            mat = gen_gaussian_matrix(
                (m, spec.ell * spec.n), stream_seed(spec.seed, 1, m, trial, 1),
                normalize_rows=True)
            mrk_vals[trial] = contraction_mrk(mat)
        rows.append(f"{spec.experiment},{m},{_fmt(trk_vals.mean())},"
                    f"{_fmt(mrk_vals.mean())}")
    meta = _base_meta(spec)
    meta["m_sweep"] = ",".join(str(m) for m in spec.m_sweep)
    return _finish(spec.out, FIG1_HEADER, rows, meta, started)


def _consistent_tensor_system(spec: ExperimentSpec, trial: int,
                              normalization: str):
    a = gen_gaussian_tensor((spec.m, spec.ell, spec.n),
                            stream_seed(spec.seed, 10, trial, 0),
                            normalization)
    x_star = gen_gaussian_tensor((spec.ell, spec.p, spec.n),
                                 stream_seed(spec.seed, 10, trial, 1), "none")
    return a, x_star, tprod_fft(a, x_star)


def run_fig2(spec: ExperimentSpec) -> Path:
    """TRK versus MRK at equal measurement memory.

    The tensor system is m x ell x n with row-slice normalization; the
    matrix baseline is an independent mu x (ell n) system with unit rows,
    the same element count when mu = m.
    """
    started = time.perf_counter_ns()
    rows = []
    for trial in range(spec.trials):
        a, x_star, b = _consistent_tensor_system(spec, trial, "row-slice")
        cfg = SolverConfig(iterations=spec.iterations,
                           seed=stream_seed(spec.seed, 10, trial, 2),
                           sampling=spec.sampling,
                           log_stride=spec.log_stride)
        _, log = trk_fourier_solve(a, b, zeros(spec.ell, spec.p, spec.n),
                                   cfg, x_star=x_star)
        rows.extend(_trajectory_rows(spec, trial, "trk", log))

        mat = gen_gaussian_matrix((spec.matrix_rows, spec.ell * spec.n),
                                  stream_seed(spec.seed, 11, trial, 0),
                                  normalize_rows=True)
        xm_star = gen_gaussian_matrix((spec.ell * spec.n, spec.p),
                                      stream_seed(spec.seed, 11, trial, 1))
        bm = mat @ xm_star
        _, mlog = mrk_solve(mat, bm, np.zeros_like(xm_star), cfg,
                            x_star=xm_star)
        rows.extend(_trajectory_rows(spec, trial, "mrk", mlog))
    return _finish(spec.out, TRAJECTORY_HEADER, rows,
                   _base_meta(spec), started)


def run_fig3(spec: ExperimentSpec) -> Path:
    """TRK on the tensor system versus MRK on its block-circulant unfolding.

    Both solvers chase the same solution: the MRK baseline runs on
    bcirc(A) unfold(X) = unfold(B).
    """
    started = time.perf_counter_ns()
    rows = []
    meta = _base_meta(spec)
    meta["matrix_shape"] = (f"{spec.m * spec.n}x{spec.ell * spec.n}")
    for trial in range(spec.trials):
        a, x_star, b = _consistent_tensor_system(spec, trial,
                                                 spec.normalization)
        cfg = SolverConfig(iterations=spec.iterations,
                           seed=stream_seed(spec.seed, 10, trial, 2),
                           sampling=spec.sampling,
                           log_stride=spec.log_stride)
        _, log = trk_fourier_solve(a, b, zeros(spec.ell, spec.p, spec.n),
                                   cfg, x_star=x_star)
        rows.extend(_trajectory_rows(spec, trial, "trk", log))

        mat = bcirc(a)
        xm_star = unfold(x_star)
        _, mlog = mrk_solve(mat, unfold(b), np.zeros_like(xm_star), cfg,
                            x_star=xm_star)
        rows.extend(_trajectory_rows(spec, trial, "mrk", mlog))
    return _finish(spec.out, TRAJECTORY_HEADER, rows, meta, started)


def run_fig4(spec: ExperimentSpec) -> Path:
    """TRK versus block MRK on one fixed system, plus both decay bounds.

    The problem is fixed by the master seed; trials vary only the solver's
    sampling stream, matching the bounds' expectation over row choices.
    Bound rows carry the method tags ``trk_ub`` and ``brk_ub``.
    """
    started = time.perf_counter_ns()
    a = gen_gaussian_tensor((spec.m, spec.ell, spec.n),
                            stream_seed(spec.seed, 40, 0), spec.normalization)
    x_star = gen_gaussian_tensor((spec.ell, spec.p, spec.n),
                                 stream_seed(spec.seed, 40, 1), "none")
    b = tprod_fft(a, x_star)
    x0 = zeros(spec.ell, spec.p, spec.n)
    rows = []
    logged_iterations: list[int] = []
    for trial in range(spec.trials):
        cfg = SolverConfig(iterations=spec.iterations,
                           seed=stream_seed(spec.seed, 40, 2, trial),
                           sampling=spec.sampling,
                           log_stride=spec.log_stride)
        _, tlog = trk_fourier_solve(a, b, x0, cfg, x_star=x_star)
        rows.extend(_trajectory_rows(spec, trial, "trk", tlog))
        _, blog = block_mrk_fourier_solve(a, b, x0, cfg, x_star=x_star)
        rows.extend(_trajectory_rows(spec, trial, "brk", blog))
        logged_iterations = tlog.iterations
    rho_trk = contraction_trk(a).rho
    rho_brk = contraction_brk(a)
    rows.extend(_bound_rows(spec, "trk_ub", rho_trk, logged_iterations))
    rows.extend(_bound_rows(spec, "brk_ub", rho_brk, logged_iterations))
    meta = _base_meta(spec)
    meta["rho_trk"] = _fmt(rho_trk)
    meta["rho_brk"] = _fmt(rho_brk)
    return _finish(spec.out, TRAJECTORY_HEADER, rows, meta, started)


_RUNNERS = {"fig1": run_fig1, "fig2": run_fig2, "fig3": run_fig3,
            "fig4": run_fig4}


def run_experiment(spec: ExperimentSpec) -> Path:
    """Dispatch to the figure runner named by ``spec.experiment``."""
    try:
        runner = _RUNNERS[spec.experiment]
    except KeyError:
        raise ValueError(f"no runner for experiment {spec.experiment!r}")
    return runner(spec)


_SOLVE_METHODS = ("mrk", "trk", "trk-fourier", "brk")


def solve_files(a_path, b_path, method: str, cfg: SolverConfig, out_path
                ) -> tuple[Tensor3, IterateLog]:
    """Solve a serialized tensor system and write the solution tensor.

    ``mrk`` runs matrix RK on the block-circulant unfolding and folds the
    result back; the other methods are the tensor solvers.
    """
    if method not in _SOLVE_METHODS:
        raise ValueError(f"unknown method {method!r}")
    a = read_tns(a_path)
    b = read_tns(b_path)
    x0 = zeros(a.l, b.l, a.n)
    if method == "mrk":
        from .core import fold
        xm, log = mrk_solve(bcirc(a), unfold(b), unfold(x0), cfg)
        x = fold(xm, a.n)
    elif method == "trk":
        x, log = trk_solve(a, b, x0, cfg)
    elif method == "trk-fourier":
        x, log = trk_fourier_solve(a, b, x0, cfg)
    else:
        x, log = block_mrk_fourier_solve(a, b, x0, cfg)
    out_path = Path(out_path)
    write_tns(x, out_path)
    _write_meta(_meta_path(out_path), {
        "method": method,
        "a": Path(a_path).name, "b": Path(b_path).name,
        "iterations": cfg.iterations, "seed": cfg.seed,
        "sampling": cfg.sampling, "log_stride": cfg.log_stride,
        "final_residual": _fmt(residual(a, x, b)),
        "version": __version__,
    })
    return x, log


def generate_system(m: int, ell: int, n: int, p: int, seed: int,
                    normalization: str, prefix) -> tuple[Path, Path, Path]:
    """Write a consistent random system as <prefix>_{a,x,b}.tns files."""
    a = gen_gaussian_tensor((m, ell, n), stream_seed(seed, 90, 0),
                            normalization)
    x = gen_gaussian_tensor((ell, p, n), stream_seed(seed, 90, 1), "none")
    b = tprod_fft(a, x)
    prefix = Path(prefix)
    paths = (prefix.parent / f"{prefix.name}_a.tns",
             prefix.parent / f"{prefix.name}_x.tns",
             prefix.parent / f"{prefix.name}_b.tns")
    for tensor, path in zip((a, x, b), paths):
        write_tns(tensor, path)
    _write_meta(prefix.parent / f"{prefix.name}.meta", {
        "m": m, "ell": ell, "n": n, "p": p, "seed": seed,
        "normalization": normalization,
        "generator": "numpy-pcg64-standard-normal",
        "version": __version__,
    })
    return paths
