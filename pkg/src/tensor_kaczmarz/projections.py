"""Orthogonal projections onto single row slices of a tensor system.

For a row slice R (1 x l x n) with invertible normal tube R R*, the tensor
P = R* (R R*)^{-1} R is an orthogonal projection: idempotent, symmetric,
and its block-circulant embedding is a matrix orthogonal projection.  In
the Fourier domain P splits into per-slice rank-1 projectors

    Phat_k = rhat_k* rhat_k / ||rhat_k||^2

which is how projections are applied here; the l x l x n tensor form is
materialized only on request.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DimensionMismatchError,
    NotInvertibleError,
    Tensor3,
    TubeFiber,
    frobenius_norm,
    row_slice,
)


class RowProjection:
    """Orthogonal projection onto the range of one row slice.

    Parameters
    ----------
    row:
        The source row slice, a 1 x l x n tensor.
    row_index:
        Position of the slice in its parent tensor (bookkeeping only).
    tol:
        Invertibility threshold on the DFT coefficients of the normal tube
        row * row-transpose; defaults to 1e-12 times their largest modulus.
    """

    __slots__ = ("_row", "_row_index", "_rhat", "_d", "_inverse_tube",
                 "_projector")

    def __init__(self, row: Tensor3, row_index: int = 0,
                 tol: float | None = None):
        if row.m != 1:
            raise DimensionMismatchError(
                f"expected a 1 x l x n row slice, got {row.shape}")
        self._row = row
        self._row_index = int(row_index)
        rhat = np.fft.fft(row.data[0], axis=1)        # (l, n)
        d = np.einsum("lk,lk->k", rhat, np.conj(rhat)).real
        if tol is None:
            tol = 1e-12 * float(d.max(initial=0.0))
        worst = int(np.argmin(d))
        if d[worst] <= tol:
            raise NotInvertibleError(
                f"row {row_index}: normal tube DFT coefficient {worst} has "
                f"modulus {d[worst]:.3e} <= tol {tol:.3e}",
                coefficient_index=worst, magnitude=float(d[worst]),
                row=self._row_index)
        self._rhat = rhat
        self._d = d
        self._inverse_tube = TubeFiber(np.fft.ifft(1.0 / d))
        self._projector: Tensor3 | None = None

    @property
    def row(self) -> Tensor3:
        """The source row slice."""
        return self._row

    @property
    def row_index(self) -> int:
        return self._row_index

    @property
    def inverse_normal_tube(self) -> TubeFiber:
        """(row * row-transpose)^{-1} as a tube fiber."""
        return self._inverse_tube

    @property
    def projector(self) -> Tensor3:
        """The l x l x n projection tensor, materialized lazily."""
        if self._projector is None:
            phat = (np.conj(self._rhat)[:, None, :] * self._rhat[None, :, :]
                    / self._d[None, None, :])
            self._projector = Tensor3(np.fft.ifft(phat, axis=2))
        return self._projector

    def apply(self, t: Tensor3) -> Tensor3:
        """P * t through the per-slice rank-1 form."""
        if t.m != self._row.l or t.n != self._row.n:
            raise DimensionMismatchError(
                f"cannot project {t.shape} with an l={self._row.l}, "
                f"n={self._row.n} row projection")
        that = np.fft.fft(t.data, axis=2)                     # (l, p, n)
        y = np.einsum("lk,lpk->pk", self._rhat, that)         # (p, n)
        phat = (np.conj(self._rhat)[:, None, :]
                * (y / self._d[None, :])[None, :, :])
        return Tensor3(np.fft.ifft(phat, axis=2))

    def complement(self, t: Tensor3) -> Tensor3:
        """(I - P) * t."""
        return t - self.apply(t)


def row_projection(a: Tensor3, i: int, tol: float | None = None
                   ) -> RowProjection:
    """Build the orthogonal projection onto row slice i of ``a``.

    Raises
    ------
    NotInvertibleError
        When a DFT coefficient of the row's normal tube falls below ``tol``.
    IndexError
        When ``i`` is out of range.
    """
    return RowProjection(row_slice(a, i), row_index=i, tol=tol)


@dataclass(frozen=True)
class InvertibilityReport:
    """Per-row invertibility screening of a tensor's row slices.

    ``min_modulus[i]`` is the smallest modulus over k of the k-th DFT
    coefficient of row i's normal tube; rows at or below ``tol`` are listed
    in ``failing``.
    """

    min_modulus: np.ndarray
    failing: tuple[int, ...]
    tol: float

    @property
    def ok(self) -> bool:
        return not self.failing


def check_row_invertibility(a: Tensor3, tol: float = 1e-12
                            ) -> InvertibilityReport:
    """Screen every row slice of ``a`` for normal-tube invertibility."""
    ahat = np.fft.fft(a.data, axis=2)
    d = np.einsum("ilk,ilk->ik", ahat, np.conj(ahat)).real   # (m, n)
    min_modulus = d.min(axis=1)
    failing = tuple(int(i) for i in np.nonzero(min_modulus <= tol)[0])
    return InvertibilityReport(min_modulus=min_modulus, failing=failing,
                               tol=tol)


def pythagorean_split(p: RowProjection, t: Tensor3) -> tuple[float, float]:
    """Norms of the two orthogonal components of ``t`` under ``p``.

    Returns ``(|| (I - P) t ||_F, || P t ||_F)``; the squares sum to
    ``|| t ||_F ** 2``.
    """
    projected = p.apply(t)
    return frobenius_norm(t - projected), frobenius_norm(projected)
