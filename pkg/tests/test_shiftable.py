import pytest

from constructions.ladder import build_h3
from constructions.shiftable import (
    TileKind,
    augment4,
    build_even_even,
    build_hs4,
    build_hs_4k,
    stack_diagonals,
    tile,
)
from core.errors import OccupancyError, ParameterError, PreconditionError
from core.models import DiagonalRun, HeffterArray
from core.transforms import empty_diagonal_runs, filled_diagonals
from core.verifier import is_shiftable, verify
from tests.conftest import golden


def test_tile_formulas():
    assert tile(TileKind.A, 0).cells == ((-1, 2), (3, -4))
    assert tile(TileKind.C, 1).cells == ((5, -7), (-6, 8))
    assert tile(TileKind.B, 2).cells == ((9, -10), (-11, 12))


@pytest.mark.parametrize(
    "kind,rows,columns",
    [(TileKind.A, (1, -1), (2, -2)), (TileKind.B, (-1, 1), (-2, 2)), (TileKind.C, (-2, 2), (-1, 1))],
)
def test_tile_sum_signatures(kind, rows, columns):
    for index in range(5):
        t = tile(kind, index)
        assert t.row_sums == rows
        assert t.column_sums == columns
        assert sorted(abs(v) for row in t.cells for v in row) == list(range(4 * index + 1, 4 * index + 5))


def test_tile_rejects_negative_index():
    with pytest.raises(ParameterError):
        tile(TileKind.A, -1)


@pytest.mark.parametrize("n,k", [(4, 4), (6, 4), (6, 6), (8, 6), (10, 6), (12, 6), (12, 8), (14, 10), (16, 12), (18, 18)])
def test_build_even_even(n, k):
    array = build_even_even(n, k)
    assert verify(array).valid
    assert is_shiftable(array)
    assert array.provenance == "even-blocks"


@pytest.mark.parametrize("n,k", [(5, 4), (6, 3), (6, 8), (4, 2), (4, 6)])
def test_build_even_even_rejects_bad_parameters(n, k):
    with pytest.raises(ParameterError):
        build_even_even(n, k)


def test_build_hs4_matches_worked_array():
    assert build_hs4(7).grid == golden(7, 4).grid
    assert build_hs4(7).column(0)[:4] == (1, -8, -15, 22)


@pytest.mark.parametrize("n", range(4, 21))
def test_build_hs4(n):
    array = build_hs4(n)
    assert verify(array).valid
    assert is_shiftable(array)
    assert filled_diagonals(array) == {(n - 3) % n, (n - 2) % n, (n - 1) % n, 0}
    if n > 4:
        assert empty_diagonal_runs(array) == [DiagonalRun(start=1, length=n - 4)]


def test_build_hs4_rejects_small_side():
    with pytest.raises(ParameterError):
        build_hs4(3)


def test_augment4_on_shiftable_host():
    result = augment4(build_hs4(12), 4)
    assert (result.n, result.k) == (12, 8)
    assert verify(result).valid
    assert is_shiftable(result)


def test_augment4_on_ladder_host():
    result = augment4(golden(13, 3), 2)
    assert (result.n, result.k) == (13, 7)
    assert verify(result).valid


def test_augment4_adds_four_cells_per_line():
    host = build_h3(16)
    result = augment4(host, 2)
    for r in range(16):
        assert sum(v is not None for v in result.grid[r]) == 7
        assert sum(v is not None for v in result.column(r)) == 7
    assert sorted(abs(v) for _, _, v in result.filled()) == list(range(1, 16 * 7 + 1))


@pytest.mark.parametrize("n", [9, 17, 24, 33, 40])
def test_augment4_closure_over_every_offset(n):
    for host in (build_hs4(n), build_h3(n)):
        run = empty_diagonal_runs(host)[0]
        for start in range(run.start, run.start + run.length - 3):
            result = augment4(host, start)
            assert verify(result).valid
            assert result.k == host.k + 4


def test_augment4_rejects_occupied_diagonals():
    with pytest.raises(OccupancyError):
        augment4(build_hs4(6), 1)


def test_augment4_rejects_invalid_host():
    rows = build_hs4(9).rows_as_lists()
    rows[0][0] = -rows[0][0]
    with pytest.raises(PreconditionError):
        augment4(HeffterArray.from_rows(rows, k=4), 2)


@pytest.mark.parametrize("n,k", [(9, 8), (16, 16), (20, 12), (4, 4)])
def test_build_hs_4k(n, k):
    array = build_hs_4k(n, k)
    assert verify(array).valid
    assert is_shiftable(array)


def test_build_hs_4k_with_four_is_the_base():
    assert build_hs_4k(11, 4) == build_hs4(11)


def test_stack_diagonals_needs_room():
    with pytest.raises(ParameterError):
        stack_diagonals(build_hs4(10), 12)
    with pytest.raises(ParameterError):
        stack_diagonals(build_hs4(10), 6)
