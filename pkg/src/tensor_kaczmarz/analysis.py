"""Contraction-coefficient calculators and theoretical decay curves.

Every randomized Kaczmarz variant here contracts the expected squared
error geometrically; the per-iteration factor rho depends on the method
and on how much structure the analysis exploits:

* ``contraction_exact`` -- 1 minus the smallest eigenvalue of the expected
  block-circulant projector, assembled densely.  The tightest rate, valid
  for any sampling distribution.
* ``contraction_trk``   -- the closed-form Fourier-domain rate for uniform
  sampling: 1 - min_k sigma_min(Ahat_k)^2 / (m ||Ahat_k||_{inf,2}^2).
* ``contraction_mrk``   -- the matrix RK rate 1 - sigma_min(A)^2 / ||A||_F^2.
* ``contraction_brk``   -- the generic block RK guarantee applied to the
  block-diagonal transformed system; weaker than the TRK rate because it
  ignores the block-diagonal structure.

The exact rate never exceeds the TRK bound, which never exceeds the block
RK bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Tensor3, bcirc
from .projections import row_projection
from .solvers import _normal_coefficients, _screen_fourier_rows

# Largest l*n for which the expected projector is assembled densely.
DENSE_CAP = 2000


class SizeLimitError(RuntimeError):
    """The dense expected-projector assembly would exceed the size cap."""


@dataclass(frozen=True)
class RateReport:
    """Contraction coefficient with its per-slice ingredients."""

    rho: float
    sigma_min: tuple[float, ...]
    inf2: tuple[float, ...]
    method: str


def _clip_rate(rho: float) -> float:
    return float(min(1.0, max(0.0, rho)))


def contraction_exact(a: Tensor3, probabilities=None,
                      invert_tol: float = 1e-12) -> float:
    """Exact contraction coefficient 1 - sigma_min(E[bcirc(P_i)]).

    Assembles the probability-weighted sum of the block-circulant row
    projectors densely, symmetrizes it, and takes the smallest eigenvalue.

    Parameters
    ----------
    a:
        Measurement tensor, all of whose rows must pass the invertibility
        screen.
    probabilities:
        Row-sampling distribution; ``None`` means uniform.

    Raises
    ------
    SizeLimitError
        When l * n exceeds the dense assembly cap.
    NotInvertibleError
        When some row fails the invertibility screen.
    """
    m, l, n = a.shape
    if l * n > DENSE_CAP:
        raise SizeLimitError(
            f"l*n = {l * n} exceeds the dense cap {DENSE_CAP}")
    if probabilities is None:
        probs = np.full(m, 1.0 / m)
    else:
        probs = np.asarray(probabilities, dtype=float)
        if probs.shape != (m,) or np.any(probs < 0):
            raise ValueError("probabilities must be m nonnegative reals")
        if abs(probs.sum() - 1.0) > 1e-8:
            raise ValueError(f"probabilities sum to {probs.sum()}, "
                             "expected 1")
    _screen_fourier_rows(_normal_coefficients(a), invert_tol)
    expected = np.zeros((l * n, l * n), dtype=np.complex128)
    for i in range(m):
        if probs[i] == 0.0:
            continue
        expected += probs[i] * bcirc(row_projection(a, i).projector)
    expected = 0.5 * (expected + expected.conj().T)
    smallest = float(np.linalg.eigvalsh(expected)[0])
    return _clip_rate(1.0 - smallest)


def inf2_norm(a: Tensor3, k: int) -> float:
    """Largest squared row norm of the k-th transformed frontal slice."""
    if not 0 <= k < a.n:
        raise IndexError(f"slice index {k} out of range for n={a.n}")
    return float(_normal_coefficients(a)[:, k].max())


def contraction_trk(a: Tensor3, invert_tol: float = 1e-12) -> RateReport:
    """Fourier-domain TRK rate under uniform row sampling.

    rho = 1 - min_k sigma_min(Ahat_k)^2 / (m * max_i ||Ahat_{i,:,k}||^2),
    reported with the per-slice smallest singular values and largest
    squared row norms.
    """
    d = _normal_coefficients(a)
    _screen_fourier_rows(d, invert_tol)
    ahat = np.fft.fft(a.data, axis=2)
    sigma = tuple(
        float(np.linalg.svd(ahat[:, :, k], compute_uv=False)[-1])
        for k in range(a.n))
    inf2 = tuple(float(v) for v in d.max(axis=0))
    ratios = [s * s / (a.m * w) for s, w in zip(sigma, inf2)]
    return RateReport(rho=_clip_rate(1.0 - min(ratios)), sigma_min=sigma,
                      inf2=inf2, method="trk")


def contraction_mrk(a: np.ndarray) -> float:
    """Matrix RK rate 1 - sigma_min(A)^2 / ||A||_F^2.

    Reduces to 1 - sigma_min(A)^2 / m when the rows have unit norm.
    """
    mat = np.asarray(a, dtype=np.complex128)
    sigma = float(np.linalg.svd(mat, compute_uv=False)[-1])
    total = float(np.linalg.norm(mat) ** 2)
    return _clip_rate(1.0 - sigma * sigma / total)


def contraction_brk(a: Tensor3, invert_tol: float = 1e-12) -> float:
    """Generic block RK rate for the block-diagonal transformed system.

    rho = 1 - min_k sigma_min(Ahat_k)^2 / (m n max_k ||Ahat_k||_{inf,2}^2),
    using that the stacked system's smallest singular value is the minimum
    over slices and its largest block row norm the maximum over slices.
    """
    d = _normal_coefficients(a)
    _screen_fourier_rows(d, invert_tol)
    ahat = np.fft.fft(a.data, axis=2)
    sigma_sq = min(
        float(np.linalg.svd(ahat[:, :, k], compute_uv=False)[-1]) ** 2
        for k in range(a.n))
    worst_row = float(d.max())
    return _clip_rate(1.0 - sigma_sq / (a.m * a.n * worst_row))


def bound_curve(rho: float, initial_error: float, count: int) -> np.ndarray:
    """Per-iteration error bound initial_error * rho^(t/2), t = 0..count-1.

    The squared error contracts by rho per iteration in expectation, so the
    error itself decays with rho^(1/2).
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    if count < 1:
        raise ValueError("count must be >= 1")
    t = np.arange(count, dtype=float)
    return initial_error * np.power(rho, t / 2.0)
