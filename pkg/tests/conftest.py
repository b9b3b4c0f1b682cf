import numpy as np

from tensor_kaczmarz import Tensor3


def make_tensor(rng, m, l, n, complex_entries=True):
    """Random dense tensor with standard-normal entries."""
    data = rng.standard_normal((m, l, n))
    if complex_entries:
        data = data + 1j * rng.standard_normal((m, l, n))
    return Tensor3(data)


def random_dims(rng, cap=5):
    return (int(rng.integers(1, cap + 1)), int(rng.integers(1, cap + 1)),
            int(rng.integers(1, cap + 1)))


def unitary_dft(n):
    return np.fft.fft(np.eye(n), axis=0) / np.sqrt(n)
