import numpy as np
import pytest

from flagparam import (
    NotPSDError,
    SingularInputError,
    expm_reference,
    haar_unitary,
    hermitian_sqrt,
    lower_triangularize,
    polar_unitary,
)
from flagparam.linalg import frobenius, unitarity_defect


def random_complex(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


class TestHermitianSqrt:
    def test_identity(self):
        np.testing.assert_allclose(hermitian_sqrt(np.eye(3)), np.eye(3), atol=1e-14)

    def test_diagonal(self):
        np.testing.assert_allclose(
            hermitian_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]), atol=1e-14
        )

    def test_conjugated_diagonal(self):
        # A = Q diag(0.25, 0.09) Q*; the square of the result must return A
        q = haar_unitary(2, 123)
        a = q @ np.diag([0.25, 0.09]) @ q.conj().T
        s = hermitian_sqrt(a)
        assert frobenius(s @ s - a) <= 1e-12
        assert np.linalg.eigvalsh(s)[0] >= -1e-14

    def test_square_recovers_input_up_to_dim_16(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(1, 17))
            b = random_complex(rng, n, n)
            a = b @ b.conj().T
            s = hermitian_sqrt(a)
            assert frobenius(s @ s - a) <= 1e-10 * max(1.0, frobenius(a))

    def test_clamps_grazing_eigenvalues(self):
        a = np.diag([1.0, -5e-11])
        s = hermitian_sqrt(a, psd_tol=1e-10)
        assert np.linalg.eigvalsh(s)[0] >= 0.0

    def test_rejects_negative(self):
        with pytest.raises(NotPSDError):
            hermitian_sqrt(np.diag([1.0, -1e-6]))


class TestPolarUnitary:
    def test_identity(self):
        u, p = polar_unitary(np.eye(2))
        np.testing.assert_allclose(u, np.eye(2), atol=1e-14)
        np.testing.assert_allclose(p, np.eye(2), atol=1e-14)

    def test_scalar_phase(self):
        # Y = e^{i phi}: the adjoint factors as e^{-i phi} * 1
        phi = 0.7
        u, p = polar_unitary(np.array([[np.exp(1j * phi)]]))
        assert abs(u[0, 0] - np.exp(-1j * phi)) <= 1e-14
        assert abs(p[0, 0] - 1.0) <= 1e-14

    def test_random_residuals(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            y = random_complex(rng, 3, 3)
            u, p = polar_unitary(y)
            assert frobenius(y.conj().T - u @ p) <= 1e-11 * max(1.0, frobenius(y))
            assert unitarity_defect(u) <= 1e-12
            assert np.linalg.eigvalsh(p)[0] >= -1e-10

    def test_reversed_convention(self):
        # Y = P U*, the normalization used when polar-normalizing chart blocks
        rng = np.random.default_rng(12)
        y = random_complex(rng, 4, 4)
        u, p = polar_unitary(y)
        assert frobenius(y - p @ u.conj().T) <= 1e-11

    def test_singular_input(self):
        with pytest.raises(SingularInputError):
            polar_unitary(np.diag([1.0, 0.0]))


class TestLowerTriangularize:
    def test_identity(self):
        u, t = lower_triangularize(np.eye(2))
        np.testing.assert_allclose(u, np.eye(2), atol=1e-14)
        np.testing.assert_allclose(t, np.eye(2), atol=1e-14)

    def test_swap_example(self):
        y = np.array([[0.0, 2.0], [1.0, 0.0]])
        u, t = lower_triangularize(y)
        np.testing.assert_allclose(u, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-14)
        np.testing.assert_allclose(t, np.diag([2.0, 1.0]), atol=1e-14)

    def test_random(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            y = random_complex(rng, 4, 4)
            u, t = lower_triangularize(y)
            assert frobenius(y @ u - t) <= 1e-11
            assert unitarity_defect(u) <= 1e-12
            assert frobenius(np.triu(t, 1)) <= 1e-11
            diag = np.diagonal(t)
            assert np.all(diag.real > 0)
            assert np.max(np.abs(diag.imag)) <= 1e-11

    def test_uniqueness_fixed_point(self):
        # a positive-diagonal lower-triangular input is already normalized
        rng = np.random.default_rng(22)
        y = random_complex(rng, 4, 4)
        _, t = lower_triangularize(y)
        u2, t2 = lower_triangularize(t)
        assert frobenius(u2 - np.eye(4)) <= 1e-11
        assert frobenius(t2 - t) <= 1e-11

    def test_singular_input(self):
        with pytest.raises(SingularInputError):
            lower_triangularize(np.array([[1.0, 1.0], [1.0, 1.0]]))


class TestExpmReference:
    def test_zero(self):
        np.testing.assert_allclose(expm_reference(np.zeros((3, 3))), np.eye(3), atol=1e-14)

    def test_scalar_i_pi(self):
        assert abs(expm_reference(np.array([[1j * np.pi]]))[0, 0] + 1.0) <= 1e-13

    def test_skew_hermitian_gives_unitary(self):
        rng = np.random.default_rng(31)
        b = random_complex(rng, 3, 3)
        a = b - b.conj().T
        assert unitarity_defect(expm_reference(a)) <= 1e-12

    def test_inverse_pairing(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            a = random_complex(rng, 4, 4)
            a *= 5.0 / max(1.0, frobenius(a))
            prod = expm_reference(a) @ expm_reference(-a)
            assert frobenius(prod - np.eye(4)) <= 1e-11


class TestHaarUnitary:
    def test_scalar_modulus(self):
        u = haar_unitary(1, 5)
        assert abs(abs(u[0, 0]) - 1.0) <= 1e-14

    def test_deterministic(self):
        np.testing.assert_array_equal(haar_unitary(4, 7), haar_unitary(4, 7))

    def test_unitary(self):
        for seed in range(10):
            assert unitarity_defect(haar_unitary(6, seed)) <= 1e-13

    def test_first_entry_moment(self):
        # |u_11|^2 is Beta(1, n-1) under Haar: mean 1/5, var 4/150 at n=5.
        # Three sigma of the 1000-sample mean is ~0.0155.
        rng = np.random.default_rng(99)
        samples = [abs(haar_unitary(5, rng)[0, 0]) ** 2 for _ in range(1000)]
        assert abs(np.mean(samples) - 0.2) <= 3 * np.sqrt((4.0 / 150.0) / 1000.0)

    def test_trace_moments(self):
        # E[tr U] = 0 and E|tr U|^2 = 1 under Haar; skipping the R-diagonal
        # phase fix shifts these to about -1.2 and 2.1 at n=5, so this guards
        # the distribution itself, not just unitarity
        rng = np.random.default_rng(100)
        traces = np.array([np.trace(haar_unitary(5, rng)) for _ in range(2000)])
        assert abs(np.mean(traces)) <= 0.08
        assert abs(np.mean(np.abs(traces) ** 2) - 1.0) <= 0.12
