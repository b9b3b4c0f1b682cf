"""Dense third-order tensors and the t-product algebra.

The t-product multiplies an m x l x n tensor with an l x p x n tensor by
embedding the left factor into an (mn) x (ln) block-circulant matrix and
acting on the vertically unfolded right factor.  Everything in this module
is the plain spatial-domain algebra: folding, block-circulant embeddings,
the reference (slow) product, transposes, tube inversion, norms and slicing.
The FFT fast path lives in :mod:`tensor_kaczmarz.fourier`.

All tensors are immutable complex double-precision arrays of shape
(m, l, n) where ``m`` counts rows, ``l`` columns and ``n`` frontal slices.
Tubes (fixed row and column, running frontal index) are contiguous in
memory so mode-3 transforms touch sequential addresses.
"""

from __future__ import annotations

import numpy as np

# Equality contract for chained-FFT results: relative Frobenius tolerance
# with an absolute floor for near-zero comparisons.
REL_TOL = 1e-10
ABS_TOL = 1e-14


class DimensionMismatchError(ValueError):
    """Operand shapes do not conform for the requested operation."""


class NotInvertibleError(ArithmeticError):
    """A tube fiber has a DFT coefficient too close to zero to invert.

    Attributes
    ----------
    coefficient_index:
        Index k of the smallest offending DFT coefficient.
    magnitude:
        Modulus of that coefficient.
    row:
        Row index of the originating row slice, when applicable.
    """

    def __init__(self, message: str, coefficient_index: int, magnitude: float,
                 row: int | None = None):
        super().__init__(message)
        self.coefficient_index = coefficient_index
        self.magnitude = magnitude
        self.row = row


class Tensor3:
    """Immutable dense third-order complex tensor.

    Parameters
    ----------
    data:
        Array-like of shape (m, l, n).  Cast to complex128 and copied;
        every entry must be finite.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.ascontiguousarray(data, dtype=np.complex128)
        if arr.ndim != 3:
            raise DimensionMismatchError(
                f"expected a third-order array, got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise DimensionMismatchError(
                f"all dimensions must be >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        if arr.base is not None or arr.flags.writeable:
            arr = arr.copy()
        arr.flags.writeable = False
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        """Read-only (m, l, n) complex array."""
        return self._data

    @property
    def m(self) -> int:
        return self._data.shape[0]

    @property
    def l(self) -> int:
        return self._data.shape[1]

    @property
    def n(self) -> int:
        return self._data.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self._data.shape

    def __repr__(self) -> str:
        m, l, n = self.shape
        return f"{type(self).__name__}(shape=({m}, {l}, {n}))"

    def _match(self, other: "Tensor3") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Tensor3") -> "Tensor3":
        self._match(other)
        return Tensor3(self._data + other._data)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        self._match(other)
        return Tensor3(self._data - other._data)

    def __neg__(self) -> "Tensor3":
        return Tensor3(-self._data)

    def __mul__(self, scalar) -> "Tensor3":
        return Tensor3(self._data * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Tensor3":
        return Tensor3(self._data / complex(scalar))


class TubeFiber(Tensor3):
    """A 1 x 1 x n tensor, the scalar-like element of the t-product algebra.

    Invertible exactly when its (unnormalized) DFT has no zero coefficient.
    """

    def __init__(self, coefficients):
        coeffs = np.asarray(coefficients, dtype=np.complex128).reshape(-1)
        if coeffs.size < 1:
            raise DimensionMismatchError("a tube needs at least one entry")
        super().__init__(coeffs.reshape(1, 1, -1))

    @classmethod
    def from_tensor(cls, t: Tensor3) -> "TubeFiber":
        if t.m != 1 or t.l != 1:
            raise DimensionMismatchError(
                f"expected a 1x1xn tensor, got {t.shape}")
        return cls(t.data[0, 0, :])

    @property
    def coefficients(self) -> np.ndarray:
        """The n tube entries as a read-only 1-D array."""
        return self._data[0, 0, :]


def zeros(m: int, l: int, n: int) -> Tensor3:
    """All-zero m x l x n tensor."""
    return Tensor3(np.zeros((m, l, n), dtype=np.complex128))


def identity(m: int, n: int) -> Tensor3:
    """m x m x n identity tensor: slice 0 is I_m, remaining slices zero."""
    data = np.zeros((m, m, n), dtype=np.complex128)
    data[:, :, 0] = np.eye(m)
    return Tensor3(data)


def unfold(t: Tensor3) -> np.ndarray:
    """Stack the frontal slices vertically into an (mn) x l matrix."""
    m, l, n = t.shape
    return np.ascontiguousarray(t.data.transpose(2, 0, 1).reshape(m * n, l))


def fold(mat, n: int) -> Tensor3:
    """Invert :func:`unfold`: reshape an (mn) x l matrix into m x l x n.

    Raises
    ------
    DimensionMismatchError
        If the row count is not divisible by ``n``.
    """
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got ndim={arr.ndim}")
    rows, l = arr.shape
    if n < 1 or rows % n != 0:
        raise DimensionMismatchError(
            f"cannot fold {rows} rows into {n} frontal slices")
    m = rows // n
    return Tensor3(arr.reshape(n, m, l).transpose(1, 2, 0))


def bcirc(t: Tensor3) -> np.ndarray:
    """Block-circulant embedding of a tensor.

    Returns the (mn) x (ln) matrix whose block at block-row r, block-column c
    is the frontal slice with index (r - c) mod n; the first block column is
    ``unfold(t)``.
    """
    m, l, n = t.shape
    slices = t.data.transpose(2, 0, 1)          # (n, m, l)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    blocks = slices[idx]                        # (n, n, m, l)
    return np.ascontiguousarray(
        blocks.transpose(0, 2, 1, 3).reshape(m * n, l * n))


def _circ_of_basis_vector(i: int, n: int) -> np.ndarray:
    """Circulant matrix of the i-th standard basis vector of C^n."""
    mat = np.zeros((n, n))
    rows = (np.arange(n) + i) % n
    mat[rows, np.arange(n)] = 1.0
    return mat


def bcirc_kron(t: Tensor3) -> np.ndarray:
    """Block-circulant embedding built from the circulant/Kronecker
    decomposition: the sum over i of circ(e_i) kron (slice i).

    Slow reference construction; agrees with :func:`bcirc` exactly (both
    place the same floats, no arithmetic mixes entries).
    """
    m, l, n = t.shape
    out = np.zeros((m * n, l * n), dtype=np.complex128)
    for i in range(n):
        out += np.kron(_circ_of_basis_vector(i, n), t.data[:, :, i])
    return out


def tprod(a: Tensor3, b: Tensor3) -> Tensor3:
    """t-product via the block-circulant embedding (reference slow path).

    ``fold(bcirc(a) @ unfold(b))`` with result shape (a.m, b.l, n).
    """
    if a.l != b.m or a.n != b.n:
        raise DimensionMismatchError(
            f"cannot t-multiply {a.shape} by {b.shape}")
    return fold(bcirc(a) @ unfold(b), a.n)


def transpose(t: Tensor3) -> Tensor3:
    """Tensor conjugate transpose.

    Conjugate-transposes every frontal slice and reverses the order of
    slices 1..n-1; slice 0 stays first.  Result shape is (l, m, n).
    """
    m, l, n = t.shape
    swapped = np.conj(t.data.transpose(1, 0, 2))
    out = np.empty_like(swapped)
    out[:, :, 0] = swapped[:, :, 0]
    if n > 1:
        out[:, :, 1:] = swapped[:, :, :0:-1]
    return Tensor3(out)


def tube_inverse(t: Tensor3, tol: float | None = None) -> TubeFiber:
    """Inverse of a tube fiber under the t-product.

    Computed as the inverse DFT of the elementwise reciprocals of the tube's
    DFT coefficients.  With ``w = tube_inverse(t)``, both ``tprod(t, w)`` and
    ``tprod(w, t)`` equal the 1 x 1 x n identity tube to rounding.

    Parameters
    ----------
    t:
        A 1 x 1 x n tensor (or :class:`TubeFiber`).
    tol:
        Smallest admissible DFT coefficient modulus.  Defaults to
        ``1e-12 * max |DFT coefficient|`` so the test is scale-free.

    Raises
    ------
    NotInvertibleError
        When some DFT coefficient has modulus <= tol; carries the index and
        magnitude of the smallest offending coefficient.
    """
    tube = TubeFiber.from_tensor(t) if not isinstance(t, TubeFiber) else t
    spectrum = np.fft.fft(tube.coefficients)
    moduli = np.abs(spectrum)
    if tol is None:
        tol = 1e-12 * float(moduli.max(initial=0.0))
    worst = int(np.argmin(moduli))
    if moduli[worst] <= tol:
        raise NotInvertibleError(
            f"tube is not invertible: DFT coefficient {worst} has modulus "
            f"{moduli[worst]:.3e} <= tol {tol:.3e}",
            coefficient_index=worst, magnitude=float(moduli[worst]))
    return TubeFiber(np.fft.ifft(1.0 / spectrum))


def frobenius_norm(t: Tensor3) -> float:
    """Square root of the sum of squared moduli of all entries."""
    return float(np.linalg.norm(t.data.ravel()))


def row_slice(t: Tensor3, i: int) -> Tensor3:
    """The i-th row slice as a fresh 1 x l x n tensor (a copy)."""
    if not 0 <= i < t.m:
        raise IndexError(f"row index {i} out of range for m={t.m}")
    return Tensor3(t.data[i:i + 1, :, :].copy())


def frontal_slice(t: Tensor3, k: int) -> np.ndarray:
    """The k-th frontal slice as a fresh m x l matrix (a copy)."""
    if not 0 <= k < t.n:
        raise IndexError(f"frontal index {k} out of range for n={t.n}")
    return t.data[:, :, k].copy()


def allclose(a: Tensor3, b: Tensor3, rel: float = REL_TOL,
             abs_floor: float = ABS_TOL) -> bool:
    """Frobenius-relative equality with an absolute floor."""
    if a.shape != b.shape:
        return False
    diff = float(np.linalg.norm((a.data - b.data).ravel()))
    scale = max(frobenius_norm(a), frobenius_norm(b))
    return diff <= max(rel * scale, abs_floor)


def write_tns(t: Tensor3, path) -> None:
    """Write the debug text format: header "m l n", then one "re im" line
    per entry in k-major, then i, then j order."""
    m, l, n = t.shape
    entries = t.data.transpose(2, 0, 1).ravel()
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{m} {l} {n}\n")
        for z in entries:
            fh.write(f"{float(z.real)!r} {float(z.imag)!r}\n")


def read_tns(path) -> Tensor3:
    """Read a tensor written by :func:`write_tns`."""
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if len(tokens) < 3:
        raise ValueError(f"{path}: truncated header")
    m, l, n = (int(v) for v in tokens[:3])
    values = np.asarray([float(v) for v in tokens[3:]])
    if values.size != 2 * m * l * n:
        raise ValueError(
            f"{path}: expected {2 * m * l * n} scalars, found {values.size}")
    entries = values[0::2] + 1j * values[1::2]
    return Tensor3(entries.reshape(n, m, l).transpose(1, 2, 0))
