"""Contraction-rate calculators: closed forms, dense oracles, the
exact <= TRK <= block ordering and the decay curves."""

import numpy as np
import pytest

from conftest import make_tensor, unitary_dft

import tensor_kaczmarz as tk


def dense_expected_projector(a, probs):
    """Oracle assembly of the expected projector from dense pseudoinverses."""
    m, l, n = a.shape
    out = np.zeros((l * n, l * n), dtype=complex)
    for i in range(m):
        bc = tk.bcirc(tk.row_slice(a, i))
        out += probs[i] * (np.linalg.pinv(bc) @ bc)
    return out


class TestContractionExact:
    def test_identity_closed_form(self):
        for m, n in [(4, 3), (6, 4)]:
            got = tk.contraction_exact(tk.identity(m, n))
            assert got == pytest.approx(1 - 1 / m, abs=1e-12)

    def test_scalar_tensor(self):
        assert tk.contraction_exact(tk.Tensor3([[[2.0]]])) == pytest.approx(
            0.0, abs=1e-12)

    def test_matches_dense_pinv_oracle(self):
        rng = np.random.default_rng(0)
        a = make_tensor(rng, 8, 3, 4)
        probs = np.full(8, 1 / 8)
        expected = dense_expected_projector(a, probs)
        smallest = np.linalg.eigvalsh(
            0.5 * (expected + expected.conj().T))[0]
        assert tk.contraction_exact(a) == pytest.approx(1 - smallest,
                                                        abs=1e-8)

    def test_explicit_probabilities(self):
        rng = np.random.default_rng(1)
        a = make_tensor(rng, 5, 3, 3)
        w = np.arange(1.0, 6.0)
        probs = w / w.sum()
        expected = dense_expected_projector(a, probs)
        smallest = np.linalg.eigvalsh(
            0.5 * (expected + expected.conj().T))[0]
        assert tk.contraction_exact(a, probs) == pytest.approx(1 - smallest,
                                                               abs=1e-8)

    def test_probability_validation(self):
        a = tk.identity(3, 2)
        with pytest.raises(ValueError):
            tk.contraction_exact(a, [0.5, 0.5])
        with pytest.raises(ValueError):
            tk.contraction_exact(a, [0.5, 0.6, 0.2])

    def test_size_cap(self):
        a = tk.gen_gaussian_tensor((2, 3, 700), 0)
        with pytest.raises(tk.SizeLimitError):
            tk.contraction_exact(a)

    def test_not_invertible(self):
        data = np.random.default_rng(2).standard_normal((3, 2, 2))
        data[1] = 0.0
        with pytest.raises(tk.NotInvertibleError):
            tk.contraction_exact(tk.Tensor3(data))


class TestInf2Norm:
    def test_identity(self):
        eye = tk.identity(4, 3)
        assert all(tk.inf2_norm(eye, k) == pytest.approx(1.0)
                   for k in range(3))

    def test_unit_single_row_single_slice(self):
        v = np.random.default_rng(3).standard_normal(5)
        v /= np.linalg.norm(v)
        a = tk.Tensor3(v.reshape(1, 5, 1))
        assert tk.inf2_norm(a, 0) == pytest.approx(1.0)

    def test_dense_oracle(self):
        rng = np.random.default_rng(4)
        a = make_tensor(rng, 4, 3, 5)
        f = unitary_dft(5)
        for k in range(5):
            dense = max(
                np.linalg.norm(tk.bcirc(tk.row_slice(a, i)).conj().T
                               @ f[k].conj()) ** 2
                for i in range(4))
            assert tk.inf2_norm(a, k) == pytest.approx(dense, rel=1e-10)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            tk.inf2_norm(tk.identity(2, 3), 3)


class TestContractionTrk:
    def test_identity_closed_form(self):
        report = tk.contraction_trk(tk.identity(5, 4))
        assert report.rho == pytest.approx(1 - 1 / 5, abs=1e-12)
        assert report.sigma_min == pytest.approx((1.0,) * 4)
        assert report.inf2 == pytest.approx((1.0,) * 4)

    def test_orthogonal_slices_with_unit_rows(self):
        rng = np.random.default_rng(5)
        m, n = 6, 3
        blocks = np.stack([np.linalg.qr(rng.standard_normal((m, m))
                                        + 1j * rng.standard_normal((m, m)))[0]
                           for _ in range(n)])
        a = tk.Tensor3(np.fft.ifft(blocks.transpose(1, 2, 0), axis=2))
        report = tk.contraction_trk(a)
        assert report.rho == pytest.approx(1 - 1 / m, rel=1e-10)

    def test_report_fields(self):
        a = tk.gen_gaussian_tensor((10, 4, 3), 6, "row-slice")
        report = tk.contraction_trk(a)
        assert report.method == "trk"
        assert len(report.sigma_min) == 3 and len(report.inf2) == 3
        assert 0.0 <= report.rho <= 1.0
        assert all(s >= 0 for s in report.sigma_min)
        assert all(w >= 0 for w in report.inf2)


class TestContractionMrk:
    def test_identity(self):
        assert tk.contraction_mrk(np.eye(7)) == pytest.approx(1 - 1 / 7)

    def test_rank_deficient(self):
        a = np.ones((4, 3))
        assert tk.contraction_mrk(a) == pytest.approx(1.0)

    def test_unit_rows_reduce_to_sigma_over_m(self):
        a = tk.gen_gaussian_matrix((30, 8), 9, normalize_rows=True)
        sigma = np.linalg.svd(a, compute_uv=False)[-1]
        assert tk.contraction_mrk(a) == pytest.approx(1 - sigma ** 2 / 30)

    def test_decreasing_in_row_count(self):
        means = []
        for m in (100, 300, 500):
            vals = [tk.contraction_mrk(tk.gen_gaussian_matrix(
                (m, 40), 100 * m + r, normalize_rows=True))
                for r in range(10)]
            means.append(np.mean(vals))
        assert means[0] > means[1] > means[2]


class TestContractionBrk:
    def test_identity_closed_form(self):
        assert tk.contraction_brk(tk.identity(5, 4)) == pytest.approx(
            1 - 1 / 20, abs=1e-12)

    def test_weaker_than_trk(self):
        rng = np.random.default_rng(7)
        for trial in range(30):
            dims = (int(rng.integers(8, 30)), int(rng.integers(3, 8)),
                    int(rng.integers(2, 6)))
            a = tk.gen_gaussian_tensor(dims, 500 + trial, "row-slice")
            assert tk.contraction_brk(a) >= tk.contraction_trk(a).rho - 1e-12

    def test_large_system_sits_between_trk_and_one(self):
        a = tk.gen_gaussian_tensor((100, 30, 5), 8)
        rho_trk = tk.contraction_trk(a).rho
        rho_brk = tk.contraction_brk(a)
        assert rho_trk < rho_brk < 1.0


class TestOrdering:
    def test_exact_below_trk_bound(self):
        rng = np.random.default_rng(9)
        for trial in range(10):
            dims = (int(rng.integers(10, 25)), int(rng.integers(3, 7)),
                    int(rng.integers(2, 5)))
            a = tk.gen_gaussian_tensor(dims, 900 + trial, "row-slice")
            assert tk.contraction_exact(a) <= tk.contraction_trk(a).rho \
                + 1e-12


class TestBoundCurve:
    def test_rho_zero_drops_immediately(self):
        curve = tk.bound_curve(0.0, 2.0, 4)
        assert curve[0] == 2.0
        assert np.all(curve[1:] == 0.0)

    def test_rho_one_is_constant(self):
        assert np.all(tk.bound_curve(1.0, 3.0, 5) == 3.0)

    def test_geometric_decay(self):
        curve = tk.bound_curve(0.25, 1.0, 5)
        assert np.allclose(curve, [1.0, 0.5, 0.25, 0.125, 0.0625])

    def test_validation(self):
        with pytest.raises(ValueError):
            tk.bound_curve(1.5, 1.0, 3)
        with pytest.raises(ValueError):
            tk.bound_curve(0.5, 1.0, 0)

    def test_median_error_below_curve(self):
        a = tk.gen_gaussian_tensor((40, 8, 4), 11, "row-slice")
        x_star = tk.gen_gaussian_tensor((8, 3, 4), 12)
        b = tk.tprod_fft(a, x_star)
        rho = tk.contraction_trk(a).rho
        runs = []
        for seed in range(9):
            cfg = tk.SolverConfig(iterations=300, seed=seed, log_stride=20)
            _, log = tk.trk_fourier_solve(a, b, tk.zeros(8, 3, 4), cfg,
                                          x_star=x_star)
            runs.append(log.rel_error)
        median = np.median(np.vstack(runs), axis=0)
        curve = tk.bound_curve(rho, 1.0, 301)
        logged = np.asarray(log.iterations)
        assert np.all(median <= curve[logged] + 1e-12)
