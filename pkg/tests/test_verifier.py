import numpy as np
import pytest

from core.errors import PreconditionError, StructuralError
from core.models import Axis, HeffterArray, SumViolation, Transversal
from core.verifier import is_cyclically_tridiagonal, is_primary_transversal, is_shiftable, is_strippable, verify
from constructions.literals import LITERALS
from tests.conftest import GOLDEN_FILES, golden


@pytest.mark.parametrize("n,k", sorted(GOLDEN_FILES))
def test_golden_arrays_are_valid(n, k):
    report = verify(golden(n, k))
    assert report.valid
    assert report.n == n and report.k == k


@pytest.mark.parametrize("n,k", sorted(LITERALS))
def test_literal_arrays_are_valid(n, k):
    assert verify(HeffterArray(n=n, k=k, grid=LITERALS[(n, k)])).valid


def test_single_cell_perturbation(h_4_3):
    rows = h_4_3.rows_as_lists()
    rows[0][0] = 5
    report = verify(HeffterArray.from_rows(rows, k=3))

    assert not report.valid
    assert not report.fill_violations
    assert SumViolation(axis=Axis.ROW, index=0, actual_sum=1) in report.sum_violations
    assert SumViolation(axis=Axis.COLUMN, index=0, actual_sum=1) in report.sum_violations
    assert len(report.sum_violations) == 2
    (support,) = report.support_violations
    assert support.missing == {4}
    assert support.duplicated == {5}
    assert not support.out_of_range


def test_empty_grid_reports_every_line():
    report = verify(HeffterArray.from_rows([[None] * 4 for _ in range(4)], k=3))

    assert not report.valid
    assert len(report.fill_violations) == 8
    assert all(v.count == 0 for v in report.fill_violations)
    assert {v.axis for v in report.fill_violations} == {Axis.ROW, Axis.COLUMN}
    assert report.support_violations[0].missing == frozenset(range(1, 13))


def test_opposite_signs_count_as_duplicates():
    rows = [[1, -1], [-2, 2]]
    report = verify(HeffterArray.from_rows(rows, k=2))
    assert report.support_violations[0].duplicated == {1, 2}
    assert report.support_violations[0].missing == {3, 4}


def test_out_of_range_values():
    rows = [[9, -9], [-2, 2]]
    report = verify(HeffterArray.from_rows(rows, k=2))
    assert 9 in report.support_violations[0].out_of_range


def test_verify_is_pure(h_4_3):
    before = h_4_3.grid
    assert verify(h_4_3) == verify(h_4_3)
    assert h_4_3.grid == before


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 2], [3]],
        [[1, 2]],
        [[1, 0], [2, 3]],
        [[1, "2"], [3, 4]],
        [[True, 2], [3, 4]],
    ],
)
def test_structural_errors(rows):
    with pytest.raises(StructuralError):
        HeffterArray(n=2, k=2, grid=rows)


def test_matrix_view_marks_empty_cells_with_zero(h_4_3):
    matrix = h_4_3.matrix
    assert matrix.dtype == np.int64
    assert matrix.shape == (4, 4)
    assert (np.count_nonzero(matrix, axis=1) == 3).all()
    assert not matrix.sum(axis=0).any()
    matrix[0, 0] = 99
    assert h_4_3.matrix[0, 0] != 99
    rebuilt = HeffterArray.from_matrix(h_4_3.matrix, k=3, provenance="copy")
    assert rebuilt.same_cells(h_4_3)
    assert rebuilt.provenance == "copy"


@pytest.mark.parametrize("n,k,expected", [(6, 4, True), (7, 4, True), (5, 4, True), (8, 6, True), (4, 3, False)])
def test_is_shiftable(n, k, expected):
    assert is_shiftable(golden(n, k)) is expected


def test_is_shiftable_requires_valid_array(h_4_3):
    rows = h_4_3.rows_as_lists()
    rows[0][0] = 5
    with pytest.raises(PreconditionError):
        is_shiftable(HeffterArray.from_rows(rows, k=3))


@pytest.mark.parametrize("n,k", [(4, 3), (12, 3), (13, 3)])
def test_ladder_arrays_strip_on_main_diagonal(n, k):
    array = golden(n, k)
    result = is_strippable(array)

    assert result.found
    assert result.transversal.is_main_diagonal
    assert not result.searched
    assert is_primary_transversal(array, result.transversal.cells)


def test_strippable_remainder_is_balanced(h_13_3):
    result = is_strippable(h_13_3)
    removed = set(result.transversal.cells)
    for r in range(h_13_3.n):
        signs = [v > 0 for c, v in enumerate(h_13_3.grid[r]) if v is not None and (r, c) not in removed]
        assert signs.count(True) == signs.count(False) == 1


def test_is_strippable_rejects_even_k(hs_7_4):
    with pytest.raises(PreconditionError):
        is_strippable(hs_7_4)


def test_is_strippable_search_finds_off_diagonal_transversal(h_4_3):
    # Moving row r to row r + 1 takes the primary transversal off the main diagonal.
    rows = h_4_3.rows_as_lists()
    moved = HeffterArray.from_rows(rows[-1:] + rows[:-1], k=3)

    assert not is_strippable(moved)
    result = is_strippable(moved, search=True)
    assert result.found
    assert result.searched
    assert not result.transversal.is_main_diagonal
    assert is_primary_transversal(moved, result.transversal.cells)


def test_is_strippable_budget_is_not_a_proof(h_4_3):
    rows = h_4_3.rows_as_lists()
    moved = HeffterArray.from_rows(rows[-1:] + rows[:-1], k=3)
    result = is_strippable(moved, search=True, node_budget=1)
    if not result.found:
        assert not result.exhausted


def test_is_primary_transversal_rejects_bad_cells(h_4_3):
    assert not is_primary_transversal(h_4_3, [(0, 0), (1, 1), (2, 2)])
    assert not is_primary_transversal(h_4_3, [(0, 1), (1, 0), (2, 2), (3, 3)])  # values 8 and 9
    assert not is_primary_transversal(h_4_3, [(0, 2), (1, 1), (2, 0), (3, 3)])  # empty cells


def test_transversal_needs_distinct_lines():
    with pytest.raises(StructuralError):
        Transversal(cells=((0, 0), (0, 1)))


def test_cyclically_tridiagonal(h_13_3, hs_7_4):
    assert is_cyclically_tridiagonal(h_13_3)
    assert not is_cyclically_tridiagonal(hs_7_4)
