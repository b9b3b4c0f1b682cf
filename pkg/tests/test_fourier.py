"""Mode-3 transforms, the block-diagonalization identity and the fast
t-product, pinned against dense similarity-transform oracles."""

import numpy as np
import pytest

from conftest import make_tensor, random_dims, unitary_dft

import tensor_kaczmarz as tk


class TestMode3Transforms:
    def test_impulse_tube(self):
        t = tk.TubeFiber([1.0, 0.0])
        assert np.allclose(tk.mode3_dft(t).data.ravel(), [1, 1])

    def test_constant_tube(self):
        t = tk.TubeFiber([3.0, 3.0])
        assert np.allclose(tk.mode3_dft(t).data.ravel(), [6, 0])

    def test_idft_of_constant_spectrum(self):
        t = tk.TubeFiber([1.0, 1.0])
        assert np.allclose(tk.mode3_idft(t).data.ravel(), [1, 0])

    def test_zero_tensor(self):
        z = tk.zeros(2, 3, 4)
        assert np.all(tk.mode3_idft(z).data == 0)
        assert np.all(tk.mode3_dft(z).data == 0)

    def test_round_trip(self):
        t = make_tensor(np.random.default_rng(0), 3, 2, 8)
        back = tk.mode3_idft(tk.mode3_dft(t))
        assert np.linalg.norm((back - t).data) <= 1e-12 * tk.frobenius_norm(t)


class TestBdiag:
    def test_identity_blocks(self):
        blocks = tk.bdiag(tk.identity(2, 3))
        assert len(blocks) == 3
        for blk in blocks:
            assert np.allclose(blk, np.eye(2))

    def test_pair_tube_blocks(self):
        blocks = tk.bdiag(tk.TubeFiber([2.0, 5.0]))
        assert np.allclose(blocks[0], [[7.0]])
        assert np.allclose(blocks[1], [[-3.0]])

    def test_similarity_transform_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(12):
            m, l, n = random_dims(rng, cap=4)
            t = make_tensor(rng, m, l, n)
            f = unitary_dft(n)
            sim = (np.kron(f, np.eye(m)) @ tk.bcirc(t)
                   @ np.kron(f.conj().T, np.eye(l)))
            assert np.allclose(sim, tk.bdiag(t).assemble(), atol=1e-10)

    def test_block_container(self):
        blocks = tk.bdiag(make_tensor(np.random.default_rng(2), 3, 2, 4))
        assert (blocks.m, blocks.l, blocks.n) == (3, 2, 4)
        assert blocks[1].shape == (3, 2)
        assert len(list(blocks)) == 4


class TestTprodFft:
    def test_identity_is_neutral(self):
        a = make_tensor(np.random.default_rng(3), 3, 2, 4)
        assert tk.allclose(tk.tprod_fft(a, tk.identity(2, 4)), a)

    def test_hand_computed_tubes(self):
        got = tk.tprod_fft(tk.TubeFiber([1, 2]), tk.TubeFiber([3, 4]))
        assert np.allclose(got.data.ravel(), [11, 10])

    def test_matches_reference_path(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            m, l, n = (int(rng.integers(1, 7)) for _ in range(3))
            p = int(rng.integers(1, 7))
            a, b = make_tensor(rng, m, l, n), make_tensor(rng, l, p, n)
            fast = tk.tprod_fft(a, b)
            slow = tk.tprod(a, b)
            scale = max(tk.frobenius_norm(slow), 1e-30)
            assert tk.frobenius_norm(fast - slow) <= 1e-10 * scale

    def test_dimension_mismatch(self):
        rng = np.random.default_rng(5)
        with pytest.raises(tk.DimensionMismatchError):
            tk.tprod_fft(make_tensor(rng, 2, 3, 4), make_tensor(rng, 2, 3, 4))


class TestTransformIdentities:
    def test_product_becomes_blockwise_product(self):
        rng = np.random.default_rng(6)
        a, b = make_tensor(rng, 3, 2, 4), make_tensor(rng, 2, 5, 4)
        prod_blocks = tk.bdiag(tk.tprod_fft(a, b))
        ha, hb = tk.bdiag(a), tk.bdiag(b)
        for k in range(4):
            assert np.allclose(prod_blocks[k], ha[k] @ hb[k], atol=1e-10)

    def test_addition_commutes_with_hat(self):
        rng = np.random.default_rng(7)
        a, b = make_tensor(rng, 3, 2, 4), make_tensor(rng, 3, 2, 4)
        lhs = tk.mode3_dft(a + b)
        rhs = tk.mode3_dft(a) + tk.mode3_dft(b)
        assert tk.allclose(lhs, rhs)

    def test_conjugate_transpose_commutes(self):
        t = make_tensor(np.random.default_rng(8), 3, 2, 5)
        transposed = tk.bdiag(tk.transpose(t))
        straight = tk.bdiag(t)
        for k in range(5):
            assert np.allclose(transposed[k], straight[k].conj().T,
                               atol=1e-10)

    def test_inverse_commutes(self):
        rng = np.random.default_rng(9)
        l, n = 3, 4
        # Build an invertible tensor from well-conditioned transform blocks.
        blocks = (rng.standard_normal((n, l, l))
                  + 1j * rng.standard_normal((n, l, l))
                  + 4.0 * np.eye(l))
        t = tk.Tensor3(np.fft.ifft(blocks.transpose(1, 2, 0), axis=2))
        inv_blocks = np.linalg.inv(blocks)
        t_inv = tk.Tensor3(np.fft.ifft(inv_blocks.transpose(1, 2, 0), axis=2))
        assert tk.allclose(tk.tprod_fft(t, t_inv), tk.identity(l, n))
        hat_inv = tk.bdiag(t_inv)
        hat = tk.bdiag(t)
        for k in range(n):
            assert np.allclose(hat_inv[k], np.linalg.inv(hat[k]), atol=1e-10)

    def test_tube_inverse_spectrum_is_reciprocal(self):
        rng = np.random.default_rng(10)
        t = tk.TubeFiber(rng.standard_normal(5) + 1j * rng.standard_normal(5))
        w = tk.tube_inverse(t)
        assert np.allclose(np.fft.fft(w.coefficients),
                           1.0 / np.fft.fft(t.coefficients))

    def test_parseval_identity(self):
        rng = np.random.default_rng(11)
        e = make_tensor(rng, 4, 3, 5)
        f = unitary_dft(5)
        transformed = np.kron(f, np.eye(4)) @ tk.unfold(e)
        assert np.linalg.norm(transformed) == pytest.approx(
            tk.frobenius_norm(e))
