from enum import Enum
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from core.errors import StructuralError

Cell = Optional[int]
Grid = Tuple[Tuple[Cell, ...], ...]
Coordinate = Tuple[int, int]


def freeze_grid(rows: Sequence[Sequence[Cell]]) -> Grid:
    """Turn any nested sequence of cells into the immutable grid representation."""
    return tuple(tuple(row) for row in rows)


def grid_to_matrix(rows: Sequence[Sequence[Cell]]) -> np.ndarray:
    """Integer matrix of a rectangular grid; 0 marks an empty cell."""
    if len(rows) == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array([[0 if v is None else v for v in row] for row in rows], dtype=np.int64)


def matrix_to_grid(matrix: np.ndarray) -> Grid:
    return tuple(tuple(v if v else None for v in row) for row in np.asarray(matrix).tolist())


class Axis(str, Enum):
    ROW = "row"
    COLUMN = "column"


class HeffterArray(BaseModel):
    """An n x n partial array of nonzero integers with k declared filled cells per line.

    Empty cells are ``None``. The model only enforces the structural shape;
    whether the array satisfies the Heffter axioms is decided by ``core.verifier.verify``.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    k: int = Field(ge=0)
    grid: Grid
    provenance: Optional[str] = None

    @field_validator("grid", mode="before")
    @classmethod
    def _check_cells(cls, value):
        if not isinstance(value, (list, tuple)):
            raise StructuralError("grid must be a sequence of rows")
        rows = []
        for r, row in enumerate(value):
            if not isinstance(row, (list, tuple)):
                raise StructuralError(f"row {r} is not a sequence")
            for c, cell in enumerate(row):
                if cell is None:
                    continue
                if isinstance(cell, bool) or not isinstance(cell, int):
                    raise StructuralError(f"cell ({r}, {c}) holds {cell!r}, expected an integer or empty")
                if cell == 0:
                    raise StructuralError(f"cell ({r}, {c}) holds 0, which is not a valid entry")
            rows.append(tuple(row))
        return tuple(rows)

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.grid) != self.n:
            raise StructuralError(f"grid has {len(self.grid)} rows, expected {self.n}")
        for r, row in enumerate(self.grid):
            if len(row) != self.n:
                raise StructuralError(f"row {r} has {len(row)} cells, expected {self.n}")
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Cell]], k: int, provenance: Optional[str] = None) -> "HeffterArray":
        return cls(n=len(rows), k=k, grid=freeze_grid(rows), provenance=provenance)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, k: int, provenance: Optional[str] = None) -> "HeffterArray":
        return cls(n=matrix.shape[0], k=k, grid=matrix_to_grid(matrix), provenance=provenance)

    @property
    def matrix(self) -> np.ndarray:
        """A fresh int64 copy of the grid, 0 for empty cells."""
        return grid_to_matrix(self.grid)

    def __getitem__(self, position: Coordinate) -> Cell:
        r, c = position
        return self.grid[r][c]

    def filled(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (row, column, value) for every filled cell in row-major order."""
        for r, row in enumerate(self.grid):
            for c, value in enumerate(row):
                if value is not None:
                    yield r, c, value

    def column(self, c: int) -> Tuple[Cell, ...]:
        return tuple(row[c] for row in self.grid)

    def rows_as_lists(self) -> List[List[Cell]]:
        return [list(row) for row in self.grid]

    def with_provenance(self, provenance: Optional[str]) -> "HeffterArray":
        return self.model_copy(update={"provenance": provenance})

    def same_cells(self, other: "HeffterArray") -> bool:
        return self.n == other.n and self.k == other.k and self.grid == other.grid


class FillViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    axis: Axis
    index: int
    count: int


class SumViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    axis: Axis
    index: int
    actual_sum: int


class SupportViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    missing: FrozenSet[int] = frozenset()
    duplicated: FrozenSet[int] = frozenset()
    out_of_range: FrozenSet[int] = frozenset()


class VerificationReport(BaseModel):
    """Every axiom violation found in an array, located by axis and index or by value set."""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    fill_violations: Tuple[FillViolation, ...] = ()
    sum_violations: Tuple[SumViolation, ...] = ()
    support_violations: Tuple[SupportViolation, ...] = ()

    @computed_field  # type: ignore[misc]
    @property
    def valid(self) -> bool:
        return not (self.fill_violations or self.sum_violations or self.support_violations)


class Transversal(BaseModel):
    model_config = ConfigDict(frozen=True)

    cells: Tuple[Coordinate, ...]

    @model_validator(mode="after")
    def _check_distinct_lines(self):
        rows = {r for r, _ in self.cells}
        columns = {c for _, c in self.cells}
        if len(rows) != len(self.cells) or len(columns) != len(self.cells):
            raise StructuralError("transversal cells must use distinct rows and distinct columns")
        return self

    @property
    def is_main_diagonal(self) -> bool:
        return all(r == c for r, c in self.cells)


class StripResult(BaseModel):
    """Outcome of a strippability check.

    ``transversal`` is None when no candidate passed. ``exhausted`` tells whether
    that absence is a proof (the whole search space was covered) or only means the
    configured effort ran out.
    """

    model_config = ConfigDict(frozen=True)

    transversal: Optional[Transversal] = None
    searched: bool = False
    exhausted: bool = False
    nodes_explored: int = 0

    @property
    def found(self) -> bool:
        return self.transversal is not None

    def __bool__(self) -> bool:
        return self.found


class DiagonalRun(BaseModel):
    """A maximal run of cyclically consecutive empty diagonals D_start, ..., D_{start+length-1}."""

    model_config = ConfigDict(frozen=True)

    start: int
    length: int


class Route(str, Enum):
    """Construction routes; the value doubles as the provenance string of generated arrays."""

    EVEN_BLOCKS = "even-blocks"
    DIAGONAL_4 = "diagonal-4"
    DIAGONAL_4K = "diagonal-4k"
    LADDER_3 = "ladder-3"
    LADDER_3_STACKED = "ladder-3-stacked"
    STRIP_12M = "strip-12m"
    STRIP_16M = "strip-16m"
    STRIP_12M_3 = "strip-12m+3"
    BOOSTERS = "boosters"
    LITERAL = "literal"


class Verdict(str, Enum):
    EXISTS = "Exists"
    DOES_NOT_EXIST = "DoesNotExist"
    UNKNOWN = "Unknown"
    OUT_OF_SCOPE = "OutOfScope"
