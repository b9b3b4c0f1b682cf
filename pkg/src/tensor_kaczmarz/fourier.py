"""Mode-3 DFT machinery: the hat operator, block diagonalization and the
fast t-product.

Applying the unnormalized length-n DFT to every tube of a tensor turns the
block-circulant embedding into a block-diagonal matrix: with F_n the unitary
DFT matrix,

    (F_n kron I_m)  bcirc(T)  (F_n* kron I_l)  =  blkdiag(That_0, ..., That_{n-1})

where That_k are the frontal slices of the transformed tensor.  The fast
t-product multiplies those slices pairwise and transforms back.
"""

from __future__ import annotations

import numpy as np

from .core import DimensionMismatchError, Tensor3


def mode3_dft(t: Tensor3) -> Tensor3:
    """Unnormalized forward DFT of length n applied to every tube."""
    return Tensor3(np.fft.fft(t.data, axis=2))


def mode3_idft(t: Tensor3) -> Tensor3:
    """Inverse of :func:`mode3_dft` (carries the 1/n factor)."""
    return Tensor3(np.fft.ifft(t.data, axis=2))


class FourierBlocks:
    """The n frontal slices of a mode-3-transformed tensor.

    Assembled into a block-diagonal matrix these slices are the unitary
    similarity transform of the source tensor's block-circulant embedding.
    """

    __slots__ = ("_stack",)

    def __init__(self, blocks):
        stack = np.ascontiguousarray(blocks, dtype=np.complex128)
        if stack.ndim != 3:
            raise DimensionMismatchError(
                f"expected n stacked matrices, got ndim={stack.ndim}")
        if stack.base is not None or stack.flags.writeable:
            stack = stack.copy()
        stack.flags.writeable = False
        self._stack = stack

    @property
    def m(self) -> int:
        return self._stack.shape[1]

    @property
    def l(self) -> int:
        return self._stack.shape[2]

    @property
    def n(self) -> int:
        return self._stack.shape[0]

    @property
    def blocks(self) -> tuple[np.ndarray, ...]:
        return tuple(self._stack[k] for k in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, k: int) -> np.ndarray:
        return self._stack[k]

    def __iter__(self):
        return iter(self.blocks)

    def assemble(self) -> np.ndarray:
        """Dense (mn) x (ln) block-diagonal matrix of the slices."""
        m, l, n = self.m, self.l, self.n
        out = np.zeros((m * n, l * n), dtype=np.complex128)
        for k in range(n):
            out[k * m:(k + 1) * m, k * l:(k + 1) * l] = self._stack[k]
        return out


def bdiag(t: Tensor3) -> FourierBlocks:
    """Mode-3 DFT, split into the n frontal-slice matrices."""
    return FourierBlocks(np.fft.fft(t.data, axis=2).transpose(2, 0, 1))


def tprod_fft(a: Tensor3, b: Tensor3) -> Tensor3:
    """t-product through the Fourier domain (fast path).

    Transforms both operands, multiplies frontal slices pairwise, and
    transforms back.  Agrees with :func:`tensor_kaczmarz.core.tprod` to
    rounding.
    """
    if a.l != b.m or a.n != b.n:
        raise DimensionMismatchError(
            f"cannot t-multiply {a.shape} by {b.shape}")
    ahat = np.fft.fft(a.data, axis=2).transpose(2, 0, 1)   # (n, m, l)
    bhat = np.fft.fft(b.data, axis=2).transpose(2, 0, 1)   # (n, l, p)
    chat = np.matmul(ahat, bhat)                           # (n, m, p)
    return Tensor3(np.fft.ifft(chat.transpose(1, 2, 0), axis=2))
