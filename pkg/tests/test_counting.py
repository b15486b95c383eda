"""Parameter counts: nullspace dimensions, orbit ranks, variety dimension."""

import numpy as np
import pytest

from ptlab.counting import (
    FamilyKind,
    TableRow,
    count_matrix_family,
    count_operator_orbit,
    count_real_charpoly_variety,
    table1_report,
    table_columns,
)
from ptlab.symmetry import DiagMetricSelfAdjointParams, construct_self_adjoint_from_diag_metric


class TestMatrixFamily:
    def test_pt_1_1(self):
        assert count_matrix_family(FamilyKind.PT, 1, 1) == 4

    def test_pseudo_2_1(self):
        assert count_matrix_family(FamilyKind.PSEUDO, 2, 1) == 9

    def test_hermitian_3(self):
        assert count_matrix_family(FamilyKind.HERMITIAN, 3, 0) == 9

    def test_real_symmetric_closed_form(self):
        for N in (2, 3, 4):
            assert count_matrix_family(FamilyKind.REAL_SYMMETRIC, N, 0) == N * (N + 1) // 2

    def test_family_dimension_is_square_of_size(self):
        for N in range(1, 7):
            for n in range(0, N // 2 + 1):
                m = N - n
                assert count_matrix_family(FamilyKind.PT, m, n) == N * N
                assert count_matrix_family(FamilyKind.PSEUDO, m, n) == N * N


class TestOperatorOrbit:
    def test_pt_1_1(self):
        assert count_operator_orbit(FamilyKind.PT, 1, 1) == 2

    def test_pseudo_2_1(self):
        assert count_operator_orbit(FamilyKind.PSEUDO, 2, 1) == 4

    @pytest.mark.parametrize("kind", [FamilyKind.PT, FamilyKind.PSEUDO])
    def test_definite_signature_is_rigid(self, kind):
        for m in (1, 2, 3):
            assert count_operator_orbit(kind, m, 0) == 0

    @pytest.mark.parametrize("kind", [FamilyKind.PT, FamilyKind.PSEUDO])
    def test_orbit_is_2mn(self, kind):
        for N in range(1, 7):
            for n in range(0, N // 2 + 1):
                m = N - n
                assert count_operator_orbit(kind, m, n) == 2 * m * n


class TestCharpolyVariety:
    def test_n2_at_pauli_base(self):
        assert count_real_charpoly_variety(2, base_point=np.diag([1.0, -1.0])) == 6

    def test_n2_at_self_adjoint_base(self):
        rng = np.random.default_rng(3)
        p = DiagMetricSelfAdjointParams(omegas=[1.0, 2.5], a=rng.normal(size=(2, 2)), b=rng.normal(size=(2, 2)))
        assert count_real_charpoly_variety(2, base_point=construct_self_adjoint_from_diag_metric(p)) == 6

    def test_n3(self):
        assert count_real_charpoly_variety(3) == 15

    def test_multiple_random_bases(self):
        rng = np.random.default_rng(5)
        for N in (2, 3, 4, 5, 6):
            for k in range(5):
                p = DiagMetricSelfAdjointParams(omegas=rng.uniform(0.5, 2.0, N),
                                                a=rng.normal(size=(N, N)), b=rng.normal(size=(N, N)))
                base = construct_self_adjoint_from_diag_metric(p)
                assert count_real_charpoly_variety(N, base_point=base) == 2 * N * N - N

    def test_degenerate_base_is_retried(self):
        # identity has a maximally degenerate spectrum; retries must kick in
        assert count_real_charpoly_variety(3, base_point=np.eye(3)) == 15


class TestTableReport:
    def test_columns_dim2(self):
        reports = table1_report(2)
        assert table_columns(reports)[2] == (3, 4, 6, 6)
        assert all(r.match for r in reports)

    def test_columns_dim3(self):
        reports = table1_report(3)
        columns = table_columns(reports)
        assert columns[3] == (6, 9, 13, 15)
        assert all(r.match for r in reports)

    def test_pt_and_pseudo_routes_agree(self):
        reports = table1_report(4)
        merged = [r for r in reports if r.kind is TableRow.PT_OR_PSEUDO]
        assert merged and all(r.match for r in merged)
        # orbit term present only on the merged family row
        for r in reports:
            if r.kind is not TableRow.PT_OR_PSEUDO:
                assert r.measured_operator_orbit_dim == 0

    def test_partitions_covered(self):
        reports = table1_report(4)
        splits = {(r.m, r.n) for r in reports if r.kind is TableRow.PT_OR_PSEUDO}
        assert splits == {(2, 0), (1, 1), (3, 0), (2, 1), (4, 0), (3, 1), (2, 2)}
