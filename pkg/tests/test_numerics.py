"""Kernel checks: eigendecomposition ordering, rank cutoffs, expm, vectorization."""

import numpy as np
import pytest

from ptlab.errors import ContractError, DimensionError
from ptlab.numerics import (
    DEFAULT_TOL,
    ToleranceConfig,
    devectorize,
    eigen_decompose,
    matrix_exponential,
    rank_and_nullspace,
    vectorize,
)


class TestEigenDecompose:
    def test_diagonal(self):
        values, vectors = eigen_decompose(np.diag([1.0, 2.0]))
        np.testing.assert_allclose(values, [1.0, 2.0])
        np.testing.assert_allclose(np.abs(vectors), np.eye(2), atol=1e-14)

    def test_pauli3(self):
        values, _ = eigen_decompose(np.array([[1, 0], [0, -1]], dtype=complex))
        np.testing.assert_allclose(values, [-1.0, 1.0])

    def test_broken_2x2_catalog_point(self):
        # e=0, gamma=1, rho=2: eigenvalues +-i sqrt(3)
        H = np.array([[1.0, 2j], [2j, -1.0]])
        values, _ = eigen_decompose(H)
        np.testing.assert_allclose(sorted(values, key=lambda y: y.imag),
                                   [-1j * np.sqrt(3), 1j * np.sqrt(3)], atol=1e-12)

    def test_ordering_is_lexicographic(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            M = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            values, _ = eigen_decompose(M)
            keys = [(v.real, v.imag) for v in values]
            assert keys == sorted(keys)

    def test_eigenpair_residual(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            M = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
            values, vectors = eigen_decompose(M)
            res = np.linalg.norm(M @ vectors - vectors * values, axis=0)
            assert res.max() <= 1e-9 * np.linalg.norm(M)

    def test_trace_equals_eigenvalue_sum(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            values, _ = eigen_decompose(M)
            assert abs(values.sum() - np.trace(M)) <= 1e-9 * np.linalg.norm(M)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            eigen_decompose(np.ones((2, 3)))

    def test_non_finite_rejected(self):
        with pytest.raises(ContractError):
            eigen_decompose(np.array([[np.nan, 0], [0, 1]]))


class TestRankAndNullspace:
    def test_zero_matrix(self):
        rank, null = rank_and_nullspace(np.zeros((3, 3)))
        assert rank == 0 and null.shape == (3, 3)

    def test_identity(self):
        rank, null = rank_and_nullspace(np.eye(4))
        assert rank == 4 and null.shape == (4, 0)

    def test_rank_plus_nullity(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            L = rng.normal(size=(7, 5)) @ rng.normal(size=(5, 9))
            rank, null = rank_and_nullspace(L)
            assert rank + null.shape[1] == 9
            if null.shape[1]:
                assert np.abs(L @ null).max() < 1e-10 * max(1.0, np.abs(L).max())
                np.testing.assert_allclose(null.T @ null, np.eye(null.shape[1]), atol=1e-12)

    def test_scale_invariance(self):
        rng = np.random.default_rng(9)
        L = rng.normal(size=(6, 8))
        base, _ = rank_and_nullspace(L)
        for c in (1e-3, 1e-1, 1.0, 1e2, 1e3):
            rank, _ = rank_and_nullspace(c * L)
            assert rank == base

    def test_pt_constraint_operator_nullity(self):
        # symmetry condition at the diagonal parity over 2x2 complex matrices:
        # 8 real unknowns, 4 survive
        P = np.diag([1.0, -1.0]).astype(complex)
        cols = []
        for k in range(8):
            e = np.zeros(8)
            e[k] = 1.0
            H = devectorize(e, 2, 2)
            cols.append(vectorize(P @ H - H.conj() @ P))
        _, null = rank_and_nullspace(np.column_stack(cols))
        assert null.shape[1] == 4


class TestMatrixExponential:
    def test_zero_is_exact_identity(self):
        out = matrix_exponential(np.zeros((2, 2)))
        assert np.array_equal(out, np.eye(2))

    def test_quarter_turn_generator(self):
        # exp(g pi/4) with g = [[0,-1],[1,0]] is the 45-degree rotation
        g = np.array([[0.0, -1.0], [1.0, 0.0]])
        expected = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)
        np.testing.assert_allclose(matrix_exponential(g * np.pi / 4), expected, atol=1e-14)

    def test_euler_identity_1x1(self):
        for x in (0.3, 1.0, -2.2):
            out = matrix_exponential(np.array([[1j * x]]))
            np.testing.assert_allclose(out[0, 0], np.cos(x) + 1j * np.sin(x), atol=1e-14)

    def test_against_series_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            A = 0.5 * (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
            series = np.eye(4, dtype=complex)
            term = np.eye(4, dtype=complex)
            for k in range(1, 40):
                term = term @ A / k
                series = series + term
            np.testing.assert_allclose(matrix_exponential(A), series, atol=1e-12)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            matrix_exponential(np.ones((2, 3)))


class TestVectorization:
    def test_round_trip_bit_exact(self):
        rng = np.random.default_rng(17)
        for rows, cols in ((1, 1), (2, 3), (4, 4), (5, 2)):
            M = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
            v = vectorize(M)
            assert v.size == 2 * rows * cols
            assert np.array_equal(devectorize(v, rows, cols), M)

    def test_interleaving_convention(self):
        M = np.array([[1 + 2j, 3 + 4j]])
        np.testing.assert_array_equal(vectorize(M), [1.0, 2.0, 3.0, 4.0])

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            devectorize(np.zeros(5), 1, 2)


class TestToleranceConfig:
    def test_defaults(self):
        assert DEFAULT_TOL.abs_tol == 1e-10
        assert DEFAULT_TOL.rel_tol == 1e-9
        assert DEFAULT_TOL.rank_tol_factor == 64.0

    def test_rejects_negative(self):
        with pytest.raises(ContractError):
            ToleranceConfig(abs_tol=-1.0)
