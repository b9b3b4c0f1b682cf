"""Randomized Kaczmarz solvers for matrix and t-product tensor systems.

Four iterative methods share one sampling and logging harness:

* ``mrk_solve``       -- classical matrix randomized Kaczmarz, applied to
                         all right-hand-side columns simultaneously.
* ``trk_solve``       -- tensor randomized Kaczmarz in the spatial domain:
                         each step projects the iterate onto the solution
                         set of one sampled row slice.
* ``trk_fourier_solve`` -- the same iteration carried out on the mode-3
                         transformed system, one rank-1 pseudoinverse
                         update per frontal slice.
* ``block_mrk_fourier_solve`` -- block matrix RK on the block-diagonal
                         transformed system with index blocks
                         tau_i = { k m + i }, which reproduces the TRK
                         iterates exactly.

Under a shared seed the three tensor paths generate identical row-index
streams and therefore identical iterate sequences up to rounding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DimensionMismatchError,
    NotInvertibleError,
    Tensor3,
    frobenius_norm,
    row_slice,
    transpose,
    tube_inverse,
)
from .fourier import tprod_fft

_SAMPLING_VARIANTS = ("uniform", "sqnorm")


class ZeroRowError(ArithmeticError):
    """A matrix row has norm too small for the Kaczmarz update."""

    def __init__(self, message: str, row: int):
        super().__init__(message)
        self.row = row


@dataclass(frozen=True)
class SamplingStrategy:
    """Row-sampling distribution: uniform or proportional to squared norms."""

    variant: str
    probabilities: np.ndarray
    _cumulative: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.variant not in _SAMPLING_VARIANTS:
            raise ValueError(f"unknown sampling variant {self.variant!r}")
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("probabilities must be a non-empty vector")
        if np.any(p < 0) or not np.any(p > 0):
            raise ValueError("weights must be nonnegative with at least one "
                             "positive entry")
        if abs(p.sum() - 1.0) > 1e-8:
            raise ValueError(f"probabilities sum to {p.sum()}, expected 1")
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "_cumulative", np.cumsum(p))

    @property
    def size(self) -> int:
        return self.probabilities.size

    @classmethod
    def uniform(cls, m: int) -> "SamplingStrategy":
        return cls("uniform", np.full(m, 1.0 / m))

    @classmethod
    def from_weights(cls, weights) -> "SamplingStrategy":
        w = np.asarray(weights, dtype=float)
        total = w.sum()
        if np.any(w < 0) or total <= 0:
            raise ValueError("weights must be nonnegative with at least one "
                             "positive entry")
        return cls("sqnorm", w / total)

    @classmethod
    def for_tensor_rows(cls, a: Tensor3) -> "SamplingStrategy":
        """Weights are the squared Frobenius norms of the row slices."""
        w = np.einsum("ilk,ilk->i", a.data, np.conj(a.data)).real
        return cls.from_weights(w)

    @classmethod
    def for_matrix_rows(cls, a: np.ndarray) -> "SamplingStrategy":
        """Weights are the squared Euclidean norms of the matrix rows."""
        mat = np.asarray(a)
        w = np.einsum("ij,ij->i", mat, np.conj(mat)).real
        return cls.from_weights(w)


def sample_row(strategy: SamplingStrategy, rng: np.random.Generator) -> int:
    """Draw one row index; with replacement, independent across calls."""
    if strategy.variant == "uniform":
        return int(rng.integers(strategy.size))
    u = rng.random()
    idx = int(np.searchsorted(strategy._cumulative, u, side="right"))
    return min(idx, strategy.size - 1)


@dataclass(frozen=True)
class SolverConfig:
    """Iteration budget, seed, sampling variant and logging cadence."""

    iterations: int
    seed: int
    sampling: str = "uniform"
    residual_tol: float | None = None
    log_stride: int = 1

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.log_stride < 1:
            raise ValueError("log_stride must be >= 1")
        if self.sampling not in _SAMPLING_VARIANTS:
            raise ValueError(f"unknown sampling variant {self.sampling!r}")


@dataclass
class IterateLog:
    """Per-logged-iteration trajectory of one solver run.

    ``error[j]`` is the Frobenius distance to the supplied true solution
    (NaN when no truth was given), ``residual[j]`` the Frobenius residual,
    and ``time_ns[j]`` the cumulative wall time spent inside update steps.
    """

    iterations: list[int] = field(default_factory=list)
    error: list[float] = field(default_factory=list)
    residual: list[float] = field(default_factory=list)
    time_ns: list[int] = field(default_factory=list)

    def append(self, iteration: int, error: float, residual: float,
               time_ns: int) -> None:
        if self.iterations and iteration <= self.iterations[-1]:
            raise ValueError("iteration numbers must be strictly increasing")
        self.iterations.append(int(iteration))
        self.error.append(float(error))
        self.residual.append(float(residual))
        self.time_ns.append(int(time_ns))

    @property
    def rel_error(self) -> np.ndarray:
        """Error normalized by its initial value; falls back to the relative
        residual when no truth was supplied."""
        err = np.asarray(self.error)
        if err.size and np.isfinite(err[0]):
            return err / (err[0] if err[0] > 0 else 1.0)
        res = np.asarray(self.residual)
        return res / (res[0] if res.size and res[0] > 0 else 1.0)


@dataclass(frozen=True)
class BlockIndexSet:
    """Rows { k m + i : k in 0..n-1 } of the stacked transformed system,
    i.e. row i of every diagonal block."""

    row: int
    members: tuple[int, ...]

    @classmethod
    def for_row(cls, i: int, m: int, n: int) -> "BlockIndexSet":
        if not 0 <= i < m:
            raise IndexError(f"row index {i} out of range for m={m}")
        return cls(row=i, members=tuple(k * m + i for k in range(n)))


def residual(a: Tensor3, x: Tensor3, b: Tensor3) -> float:
    """Frobenius norm of a*x - b under the t-product."""
    _check_tensor_system(a, b, x)
    return frobenius_norm(tprod_fft(a, x) - b)


def _check_tensor_system(a: Tensor3, b: Tensor3, x: Tensor3,
                         x_star: Tensor3 | None = None) -> None:
    if b.m != a.m or b.n != a.n:
        raise DimensionMismatchError(
            f"right-hand side {b.shape} does not conform to {a.shape}")
    if x.m != a.l or x.n != a.n or x.l != b.l:
        raise DimensionMismatchError(
            f"iterate {x.shape} does not conform to {a.shape} and {b.shape}")
    if x_star is not None and x_star.shape != x.shape:
        raise DimensionMismatchError(
            f"true solution {x_star.shape} does not match iterate {x.shape}")


def _normal_coefficients(a: Tensor3) -> np.ndarray:
    """Per-row, per-slice transformed normal coefficients (m, n), i.e. the
    squared norms of the transformed row slices."""
    ahat = np.fft.fft(a.data, axis=2)
    return np.einsum("ilk,ilk->ik", ahat, np.conj(ahat)).real


def _strategy(cfg: SolverConfig, *, tensor: Tensor3 | None = None,
              matrix: np.ndarray | None = None) -> SamplingStrategy:
    if cfg.sampling == "uniform":
        m = tensor.m if tensor is not None else matrix.shape[0]
        return SamplingStrategy.uniform(m)
    if tensor is not None:
        return SamplingStrategy.for_tensor_rows(tensor)
    return SamplingStrategy.for_matrix_rows(matrix)


def _run(cfg: SolverConfig, strategy: SamplingStrategy,
         rng: np.random.Generator, update, snapshot) -> IterateLog:
    """Drive the sample/update loop with logging at every ``log_stride``-th
    iteration (plus iterations 0 and T); only update work is timed."""
    log = IterateLog()
    err, res = snapshot()
    log.append(0, err, res, 0)
    if cfg.residual_tol is not None and res <= cfg.residual_tol:
        return log
    elapsed = 0
    for t in range(1, cfg.iterations + 1):
        tic = time.perf_counter_ns()
        update(sample_row(strategy, rng))
        elapsed += time.perf_counter_ns() - tic
        if t % cfg.log_stride == 0 or t == cfg.iterations:
            err, res = snapshot()
            log.append(t, err, res, elapsed)
            if cfg.residual_tol is not None and res <= cfg.residual_tol:
                break
    return log


def mrk_solve(a: np.ndarray, b: np.ndarray, x0: np.ndarray,
              cfg: SolverConfig, x_star: np.ndarray | None = None,
              zero_tol: float = 1e-12) -> tuple[np.ndarray, IterateLog]:
    """Matrix randomized Kaczmarz applied column-simultaneously.

    Each step projects the iterate onto the solution space of one sampled
    row: ``x <- x - a_i* (a_i x - b_i) / ||a_i||^2``.

    Raises
    ------
    ZeroRowError
        When some row of ``a`` has norm below ``zero_tol``.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.atleast_2d(np.asarray(b, dtype=np.complex128))
    x = np.array(np.atleast_2d(np.asarray(x0, dtype=np.complex128)))
    if a.ndim != 2 or b.shape[0] != a.shape[0] or x.shape != (a.shape[1],
                                                              b.shape[1]):
        raise DimensionMismatchError(
            f"shapes do not conform: a {a.shape}, b {b.shape}, x0 {x.shape}")
    w = np.einsum("ij,ij->i", a, np.conj(a)).real
    weakest = int(np.argmin(w))
    if np.sqrt(w[weakest]) <= zero_tol:
        raise ZeroRowError(
            f"row {weakest} has norm {np.sqrt(w[weakest]):.3e} <= "
            f"tol {zero_tol:.3e}", row=weakest)
    conj_a = np.conj(a)

    def update(i: int) -> None:
        r = a[i] @ x - b[i]
        x[...] -= conj_a[i][:, None] * (r / w[i])[None, :]

    def snapshot() -> tuple[float, float]:
        err = (float(np.linalg.norm(x - x_star))
               if x_star is not None else float("nan"))
        return err, float(np.linalg.norm(a @ x - b))

    rng = np.random.default_rng(cfg.seed)
    log = _run(cfg, _strategy(cfg, matrix=a), rng, update, snapshot)
    return x, log


def trk_step(a: Tensor3, b: Tensor3, x: Tensor3, i: int,
             tol: float | None = None) -> Tensor3:
    """One tensor Kaczmarz update on row slice ``i``.

    Returns ``x - a_i* (a_i a_i*)^{-1} (a_i x - b_i)``; the result satisfies
    the row-i constraint to rounding.
    """
    _check_tensor_system(a, b, x)
    row = row_slice(a, i)
    try:
        w = tube_inverse(tprod_fft(row, transpose(row)), tol)
    except NotInvertibleError as exc:
        raise NotInvertibleError(
            f"row slice {i}: {exc}", coefficient_index=exc.coefficient_index,
            magnitude=exc.magnitude, row=i) from None
    r = tprod_fft(row, x) - row_slice(b, i)
    return x - tprod_fft(tprod_fft(transpose(row), w), r)


def trk_solve(a: Tensor3, b: Tensor3, x0: Tensor3, cfg: SolverConfig,
              x_star: Tensor3 | None = None, invert_tol: float = 1e-12
              ) -> tuple[Tensor3, IterateLog]:
    """Tensor randomized Kaczmarz, spatial-domain implementation.

    Samples a row slice per iteration and applies the :func:`trk_step`
    projection.  All row slices must pass the invertibility screen, which
    is checked up front.
    """
    _check_tensor_system(a, b, x0, x_star)
    _screen_fourier_rows(_normal_coefficients(a), invert_tol)
    rows = [row_slice(a, i) for i in range(a.m)]
    rows_t = [transpose(r) for r in rows]
    inv_tubes = [tube_inverse(tprod_fft(rows[i], rows_t[i]))
                 for i in range(a.m)]
    b_rows = [row_slice(b, i) for i in range(a.m)]
    state = {"x": x0}

    def update(i: int) -> None:
        x = state["x"]
        r = tprod_fft(rows[i], x) - b_rows[i]
        state["x"] = x - tprod_fft(tprod_fft(rows_t[i], inv_tubes[i]), r)

    def snapshot() -> tuple[float, float]:
        x = state["x"]
        err = (frobenius_norm(x - x_star)
               if x_star is not None else float("nan"))
        return err, residual(a, x, b)

    rng = np.random.default_rng(cfg.seed)
    log = _run(cfg, _strategy(cfg, tensor=a), rng, update, snapshot)
    return state["x"], log


# Above this many cached scalars the per-row conjugates and reciprocal
# normal coefficients are recomputed each step instead of stored.
_CACHE_LIMIT = 10_000_000


def trk_fourier_solve(a: Tensor3, b: Tensor3, x0: Tensor3, cfg: SolverConfig,
                      x_star: Tensor3 | None = None,
                      invert_tol: float = 1e-12
                      ) -> tuple[Tensor3, IterateLog]:
    """Tensor randomized Kaczmarz carried out in the Fourier domain.

    The system is transformed once; every iteration updates all n frontal
    slices of the transformed iterate with a rank-1 pseudoinverse step, and
    the result is transformed back at the end.  Iterates match
    :func:`trk_solve` under the same seed to rounding.
    """
    _check_tensor_system(a, b, x0, x_star)
    ahat = np.fft.fft(a.data, axis=2)                         # (m, l, n)
    d = np.einsum("ilk,ilk->ik", ahat, np.conj(ahat)).real    # (m, n)
    _screen_fourier_rows(d, invert_tol)
    bhat = np.fft.fft(b.data, axis=2)                         # (m, p, n)
    xhat = np.fft.fft(x0.data, axis=2)                        # (l, p, n)
    cache = a.m * a.n < _CACHE_LIMIT
    conj_rows = np.conj(ahat) if cache else None
    dinv = 1.0 / d if cache else None

    def update(i: int) -> None:
        row = ahat[i]
        y = np.einsum("lk,lpk->pk", row, xhat) - bhat[i]      # (p, n)
        scale = y * (dinv[i] if cache else 1.0 / d[i])
        cr = conj_rows[i] if cache else np.conj(row)
        xhat[...] -= cr[:, None, :] * scale[None, :, :]

    def snapshot() -> tuple[float, float]:
        x = Tensor3(np.fft.ifft(xhat, axis=2))
        err = (frobenius_norm(x - x_star)
               if x_star is not None else float("nan"))
        return err, residual(a, x, b)

    rng = np.random.default_rng(cfg.seed)
    log = _run(cfg, _strategy(cfg, tensor=a), rng, update, snapshot)
    return Tensor3(np.fft.ifft(xhat, axis=2)), log


def block_mrk_fourier_solve(a: Tensor3, b: Tensor3, x0: Tensor3,
                            cfg: SolverConfig,
                            x_star: Tensor3 | None = None,
                            invert_tol: float = 1e-12
                            ) -> tuple[Tensor3, IterateLog]:
    """Block matrix RK on the block-diagonal transformed system.

    The transformed system stacks the n frontal-slice systems into one
    (mn) x (ln) block-diagonal matrix acting on the vertically stacked
    transformed iterate.  Each iteration samples a row index i, selects the
    index block tau_i = { k m + i } (row i of every diagonal block), and
    applies the block pseudoinverse update.  Because the selected block is
    itself block-diagonal with 1 x l rows, the Gram matrix of the block is
    diagonal and the update decouples per slice, reproducing the Fourier
    TRK iterates exactly.
    """
    _check_tensor_system(a, b, x0, x_star)
    m, l, n = a.shape
    p = b.l
    ahat = np.fft.fft(a.data, axis=2)
    d = np.einsum("ilk,ilk->ik", ahat, np.conj(ahat)).real
    _screen_fourier_rows(d, invert_tol)
    bhat = np.fft.fft(b.data, axis=2)
    # Stacked right-hand side: row k*m + i holds slice k of row i.
    b_stacked = np.ascontiguousarray(bhat.transpose(2, 0, 1).reshape(m * n, p))
    # Stacked iterate unfold(xhat); x_view[k] is the k-th slice block.
    x_stacked = np.ascontiguousarray(
        np.fft.fft(x0.data, axis=2).transpose(2, 0, 1).reshape(l * n, p))
    x_view = x_stacked.reshape(n, l, p)
    blocks = [BlockIndexSet.for_row(i, m, n) for i in range(m)]
    members = np.asarray([blk.members for blk in blocks])     # (m, n)

    def update(i: int) -> None:
        rows_k = ahat[i]                                      # (l, n)
        y = np.einsum("lk,klp->kp", rows_k, x_view) - b_stacked[members[i]]
        z = y / d[i][:, None]
        x_view[...] -= np.conj(rows_k).T[:, :, None] * z[:, None, :]

    def snapshot() -> tuple[float, float]:
        x = Tensor3(np.fft.ifft(x_view.transpose(1, 2, 0), axis=2))
        err = (frobenius_norm(x - x_star)
               if x_star is not None else float("nan"))
        return err, residual(a, x, b)

    rng = np.random.default_rng(cfg.seed)
    log = _run(cfg, _strategy(cfg, tensor=a), rng, update, snapshot)
    return Tensor3(np.fft.ifft(x_view.transpose(1, 2, 0), axis=2)), log


def _screen_fourier_rows(d: np.ndarray, tol: float) -> None:
    """Raise NotInvertibleError for the first row whose smallest transformed
    normal coefficient is at or below ``tol``."""
    min_per_row = d.min(axis=1)
    failing = np.nonzero(min_per_row <= tol)[0]
    if failing.size:
        i = int(failing[0])
        k = int(np.argmin(d[i]))
        raise NotInvertibleError(
            f"row slice {i} fails the invertibility requirement in "
            f"transformed slice {k}: coefficient {d[i, k]:.3e} <= "
            f"tol {tol:.3e}", coefficient_index=k,
            magnitude=float(d[i, k]), row=i)
