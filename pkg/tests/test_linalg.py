"""Tests for the dense linear-algebra core."""

import numpy as np
import pytest

from mubeve.errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    InvalidStateError,
    NotADistributionError,
    NotHermitianError,
    OutOfRangeError,
)
from mubeve.linalg import (
    BitString,
    DensityMatrix,
    bit_dot,
    bit_parity,
    hermitian_eigendecomposition,
    hermitian_eigenvalues,
    mub_transform,
    partial_trace,
    shannon_entropy,
    tensor_product,
    von_neumann_entropy,
)
from mubeve.rng import random_unitary


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return a + a.conj().T


def random_density(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return m / np.trace(m).real


class TestBitOps:
    def test_parity(self):
        assert [bit_parity(x) for x in (0, 1, 2, 3, 7)] == [0, 1, 1, 0, 1]

    def test_dot(self):
        assert bit_dot(3, 3) == 0  # 1*1 + 1*1 = 0 mod 2
        assert bit_dot(1, 3) == 1
        assert bit_dot(5, 2) == 0

    def test_bitstring(self):
        b = BitString(3, 5)
        assert int(b) == 5
        assert b.xor(BitString(3, 6)).value == 3
        assert b.dot(BitString(3, 5)) == 0  # two set bits
        with pytest.raises(OutOfRangeError):
            BitString(2, 4)
        with pytest.raises(DimensionMismatchError):
            b.xor(BitString(2, 1))


class TestTensorProduct:
    def test_identity_case(self):
        assert np.array_equal(
            tensor_product(np.eye(2), np.eye(2)), np.eye(4)
        )

    def test_basis_projector_case(self):
        p0 = np.diag([1.0, 0.0])
        p1 = np.diag([0.0, 1.0])
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0  # left factor owns the most significant bit
        assert np.array_equal(tensor_product(p0, p1), expected)

    def test_left_factor_most_significant(self):
        out = tensor_product(np.diag([0.0, 1.0]), np.eye(2))
        assert np.array_equal(out, np.diag([0.0, 0.0, 1.0, 1.0]))

    def test_mixed_product_identity(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            a, b, c, d = (
                rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                for _ in range(4)
            )
            lhs = tensor_product(a, b) @ tensor_product(c, d)
            rhs = tensor_product(a @ c, b @ d)
            assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestEigendecomposition:
    def test_already_diagonal(self):
        spec = hermitian_eigendecomposition(np.diag([3.0, 1.0]))
        assert np.allclose(spec.eigenvalues, [3.0, 1.0])

    def test_pauli_x_spectrum(self):
        spec = hermitian_eigendecomposition(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(spec.eigenvalues, [1.0, -1.0])

    def test_not_hermitian_raises(self):
        with pytest.raises(NotHermitianError):
            hermitian_eigendecomposition(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_trace_identity(self):
        rng = np.random.default_rng(0)
        a = random_hermitian(rng, 8)
        w = hermitian_eigenvalues(a)
        assert abs(w.sum() - np.trace(a).real) < 1e-10

    def test_reconstruction_and_orthonormality_ensemble(self):
        # at least 100 seeded matrices across all supported test sizes
        sizes = {2: 30, 4: 30, 8: 20, 16: 16, 64: 8}
        assert sum(sizes.values()) >= 100
        rng = np.random.default_rng(2024)
        for d, count in sizes.items():
            for _ in range(count):
                a = random_hermitian(rng, d)
                spec = hermitian_eigendecomposition(a)
                v, w = spec.eigenvectors, spec.eigenvalues
                assert np.all(np.diff(w) <= 0)
                rec = v @ np.diag(w) @ v.conj().T
                assert np.max(np.abs(rec - a)) <= 1e-10
                assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10

    def test_deterministic_for_identical_bits(self):
        rng = np.random.default_rng(5)
        a = random_hermitian(rng, 6)
        s1 = hermitian_eigendecomposition(a.copy())
        s2 = hermitian_eigendecomposition(a.copy())
        assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
        assert np.array_equal(s1.eigenvectors, s2.eigenvectors)

    def test_one_by_one(self):
        spec = hermitian_eigendecomposition(np.array([[2.5]]))
        assert spec.eigenvalues[0] == 2.5


class TestDensityMatrix:
    def test_valid(self):
        dm = DensityMatrix(np.eye(2) / 2)
        assert dm.dim == 2
        assert not dm.matrix.flags.writeable

    def test_pure(self):
        dm = DensityMatrix.pure(np.array([1.0, 1.0]) / np.sqrt(2))
        assert abs(np.trace(dm.matrix) - 1.0) < 1e-12

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_bad_trace(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.eye(2))

    def test_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.diag([1.5, -0.5]))


class TestPartialTrace:
    def test_product_state_recovery(self):
        rng = np.random.default_rng(1)
        for dl, dr in ((2, 2), (2, 4), (4, 2)):
            ra = random_density(rng, dl)
            rb = random_density(rng, dr)
            joint = tensor_product(ra, rb)
            left = partial_trace(joint, dl, dr, keep="left")
            right = partial_trace(joint, dl, dr, keep="right")
            assert np.max(np.abs(left.matrix - ra)) <= 1e-12
            assert np.max(np.abs(right.matrix - rb)) <= 1e-12

    def test_bell_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1.0 / np.sqrt(2.0)
        reduced = partial_trace(DensityMatrix.pure(bell), 2, 2, keep="left")
        assert np.max(np.abs(reduced.matrix - np.eye(2) / 2)) < 1e-12

    def test_trace_preserved(self):
        rng = np.random.default_rng(2)
        rho = random_density(rng, 8)
        out = partial_trace(rho, 2, 4, keep="right")
        assert abs(np.trace(out.matrix).real - 1.0) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace(np.eye(6) / 6, 2, 4, keep="left")

    def test_bad_keep(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, 2, 2, keep="middle")


class TestEntropies:
    def test_pure_state_zero(self):
        assert von_neumann_entropy(DensityMatrix.pure([1.0, 0.0])) == 0.0

    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(3)
        rho = random_density(rng, 8)
        for seed in (0, 1, 2):
            u = random_unitary(8, seed)
            rotated = u @ rho @ u.conj().T
            assert abs(
                von_neumann_entropy(rho) - von_neumann_entropy(rotated)
            ) <= 1e-9

    def test_shannon_basics(self):
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
        assert shannon_entropy([1.0, 0.0]) == 0.0
        assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)

    def test_shannon_clips_tiny_negatives(self):
        assert shannon_entropy([1.0, -1e-11, 1e-11]) == pytest.approx(0.0, abs=1e-9)

    def test_shannon_rejects_bad_sum(self):
        with pytest.raises(NotADistributionError):
            shannon_entropy([0.5, 0.6])

    def test_shannon_rejects_big_negative(self):
        with pytest.raises(NotADistributionError):
            shannon_entropy([1.1, -0.1])

    def test_von_neumann_propagates_hermitian_check(self):
        with pytest.raises(NotHermitianError):
            von_neumann_entropy(np.array([[0.5, 1.0], [0.0, 0.5]]))


class TestMubTransform:
    def test_single_qubit_matrix(self):
        expected = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
        assert np.max(np.abs(mub_transform(1) - expected)) < 1e-15

    def test_involution(self):
        for n in range(1, 5):
            m = mub_transform(n)
            assert np.max(np.abs(m @ m - np.eye(1 << n))) <= 1e-12

    def test_entry_three_three(self):
        # i = k = 3 at n = 2: bit dot 1*1 + 1*1 = 0 mod 2, so +1/2
        assert mub_transform(2)[3, 3] == pytest.approx(0.5, abs=1e-16)

    def test_unbiasedness(self):
        for n in range(1, 5):
            m = mub_transform(n)
            assert np.max(np.abs(np.abs(m) ** 2 - 2.0 ** (-n))) < 1e-15

    def test_too_large(self):
        with pytest.raises(DimensionTooLargeError):
            mub_transform(5)

    def test_too_small(self):
        with pytest.raises(OutOfRangeError):
            mub_transform(0)
