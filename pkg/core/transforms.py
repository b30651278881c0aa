"""Elementary array transforms and cyclic diagonal bookkeeping."""

from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import OccupancyError, ParameterError, StructuralError
from core.models import Cell, DiagonalRun, Grid, HeffterArray, grid_to_matrix, matrix_to_grid


def shift_grid(grid: Sequence[Sequence[Cell]], x: int) -> Grid:
    """Add x to positive entries and subtract it from negative ones."""
    if x < 0:
        raise ParameterError(f"shift amount must be nonnegative, got {x}")
    matrix = grid_to_matrix(grid)
    return matrix_to_grid(matrix + x * np.sign(matrix))


def negate_grid(grid: Sequence[Sequence[Cell]]) -> Grid:
    return matrix_to_grid(-grid_to_matrix(grid))


def transpose_grid(grid: Sequence[Sequence[Cell]]) -> Grid:
    return matrix_to_grid(grid_to_matrix(grid).T)


def shift(array: HeffterArray, x: int) -> HeffterArray:
    return array.model_copy(update={"grid": shift_grid(array.grid, x)})


def negate(array: HeffterArray) -> HeffterArray:
    return array.model_copy(update={"grid": negate_grid(array.grid)})


def transpose(array: HeffterArray) -> HeffterArray:
    return array.model_copy(update={"grid": transpose_grid(array.grid)})


def permute_rows_cyclic(array: HeffterArray, offset: int) -> HeffterArray:
    """Move row r to row (r + offset) mod n."""
    return array.model_copy(update={"grid": matrix_to_grid(np.roll(array.matrix, offset, axis=0))})


def diagonal_index(n: int, row: int, column: int) -> int:
    """Index i of the diagonal D_i = {(r, r + i mod n)} containing the cell."""
    return (column - row) % n


def diagonal_cells(n: int, i: int) -> List[Tuple[int, int]]:
    return [(r, (r + i) % n) for r in range(n)]


def filled_diagonals(array: HeffterArray) -> set:
    rows, cols = np.nonzero(array.matrix)
    return set(((cols - rows) % array.n).tolist())


def empty_diagonal_runs(array: HeffterArray) -> List[DiagonalRun]:
    """All maximal cyclic runs of completely empty diagonals, ordered by start index."""
    n = array.n
    filled = filled_diagonals(array)
    if not filled:
        return [DiagonalRun(start=0, length=n)]

    runs = []
    anchor = min(filled)
    start: Optional[int] = None
    for step in range(1, n + 1):
        i = (anchor + step) % n
        if i in filled:
            if start is not None:
                runs.append(DiagonalRun(start=start, length=(i - start) % n))
                start = None
        elif start is None:
            start = i
    return sorted(runs, key=lambda run: run.start)


def longest_empty_run(array: HeffterArray) -> Optional[DiagonalRun]:
    runs = empty_diagonal_runs(array)
    if not runs:
        return None
    return max(runs, key=lambda run: (run.length, -run.start))


def overlay(base: HeffterArray, extra: HeffterArray, provenance: Optional[str] = None) -> HeffterArray:
    """Union of two arrays with disjoint filled cells; the declared k values add up."""
    if base.n != extra.n:
        raise StructuralError(f"cannot overlay arrays of sides {base.n} and {extra.n}")
    a, b = base.matrix, extra.matrix
    clashes = np.argwhere((a != 0) & (b != 0))
    if len(clashes):
        r, c = clashes[0].tolist()
        raise OccupancyError(f"cell ({r}, {c}) is filled in both arrays")
    return HeffterArray.from_matrix(
        a + b,
        k=base.k + extra.k,
        provenance=provenance if provenance is not None else base.provenance,
    )


def assemble_blocks(
    size: int,
    block_size: int,
    blocks: Mapping[Tuple[int, int], Sequence[Sequence[Cell]]],
    k: int,
    provenance: Optional[str] = None,
) -> HeffterArray:
    """Place block_size x block_size grids at block coordinates of a size x size array."""
    if size % block_size:
        raise ParameterError(f"side {size} is not a multiple of block size {block_size}")
    count = size // block_size
    matrix = np.zeros((size, size), dtype=np.int64)
    for (bi, bj), block in blocks.items():
        if not (0 <= bi < count and 0 <= bj < count):
            raise ParameterError(f"block ({bi}, {bj}) lies outside a {count}x{count} block grid")
        cells = grid_to_matrix(block)
        if cells.shape != (block_size, block_size):
            raise StructuralError(f"block ({bi}, {bj}) has shape {cells.shape}, expected {block_size}x{block_size}")
        top, left = bi * block_size, bj * block_size
        matrix[top:top + block_size, left:left + block_size] = cells
    return HeffterArray.from_matrix(matrix, k=k, provenance=provenance)
