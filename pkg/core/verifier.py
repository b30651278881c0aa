"""Independent checks of the Heffter axioms and of the derived properties used by the constructions."""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config import settings
from core.errors import PreconditionError
from core.models import (
    Axis,
    Coordinate,
    FillViolation,
    HeffterArray,
    StripResult,
    SumViolation,
    SupportViolation,
    Transversal,
    VerificationReport,
)


def verify(array: HeffterArray) -> VerificationReport:
    """Check fill counts, zero line sums and the support {1, ..., nk}; report every violation."""
    n, k = array.n, array.k
    matrix = array.matrix
    row_counts = np.count_nonzero(matrix, axis=1).tolist()
    col_counts = np.count_nonzero(matrix, axis=0).tolist()
    row_sums = matrix.sum(axis=1).tolist()
    col_sums = matrix.sum(axis=0).tolist()
    magnitudes, counts = np.unique(np.abs(matrix[matrix != 0]), return_counts=True)

    fill_violations = [FillViolation(axis=Axis.ROW, index=i, count=cnt) for i, cnt in enumerate(row_counts) if cnt != k]
    fill_violations += [FillViolation(axis=Axis.COLUMN, index=i, count=cnt) for i, cnt in enumerate(col_counts) if cnt != k]

    sum_violations = [SumViolation(axis=Axis.ROW, index=i, actual_sum=s) for i, s in enumerate(row_sums) if s != 0]
    sum_violations += [SumViolation(axis=Axis.COLUMN, index=i, actual_sum=s) for i, s in enumerate(col_sums) if s != 0]

    support_violations = []
    limit = n * k
    missing = frozenset(np.setdiff1d(np.arange(1, limit + 1), magnitudes).tolist())
    duplicated = frozenset(magnitudes[counts > 1].tolist())
    out_of_range = frozenset(magnitudes[magnitudes > limit].tolist())
    if missing or duplicated or out_of_range:
        support_violations.append(SupportViolation(missing=missing, duplicated=duplicated, out_of_range=out_of_range))

    return VerificationReport(
        n=n,
        k=k,
        fill_violations=tuple(fill_violations),
        sum_violations=tuple(sum_violations),
        support_violations=tuple(support_violations),
    )


def _require_valid(array: HeffterArray, operation: str) -> None:
    if not verify(array).valid:
        raise PreconditionError(f"{operation} requires a valid H({array.n};{array.k})")


def is_shiftable(array: HeffterArray) -> bool:
    """True iff every row and column holds k/2 positive and k/2 negative entries."""
    _require_valid(array, "is_shiftable")
    if array.k % 2:
        return False
    row_pos, col_pos = _positive_counts(array)
    half = array.k // 2
    return all(p == half for p in row_pos) and all(p == half for p in col_pos)


def is_cyclically_tridiagonal(array: HeffterArray) -> bool:
    n = array.n
    rows, cols = np.nonzero(array.matrix)
    return bool(np.isin((cols - rows) % n, (0, 1, n - 1)).all())


def is_primary_transversal(array: HeffterArray, cells: Sequence[Coordinate]) -> bool:
    """One filled cell per row and column whose absolute values are exactly {1, ..., n}."""
    n = array.n
    if len(cells) != n:
        return False
    if len({r for r, _ in cells}) != n or len({c for _, c in cells}) != n:
        return False
    rows, cols = zip(*cells)
    values = np.abs(array.matrix[list(rows), list(cols)])
    return bool(np.array_equal(np.sort(values), np.arange(1, n + 1)))


def _positive_counts(array: HeffterArray) -> Tuple[List[int], List[int]]:
    positive = array.matrix > 0
    return positive.sum(axis=1).tolist(), positive.sum(axis=0).tolist()


def _strips_evenly(array: HeffterArray, cells: Sequence[Coordinate], row_pos, col_pos) -> bool:
    half = (array.k - 1) // 2
    for r, c in cells:
        removed = 1 if array[r, c] > 0 else 0
        if row_pos[r] - removed != half or col_pos[c] - removed != half:
            return False
    return True


def is_strippable(array: HeffterArray, search: bool = False, node_budget: Optional[int] = None) -> StripResult:
    """Look for a primary transversal whose removal leaves a shiftable array.

    The main diagonal is checked first. With ``search`` set, a backtracking
    matching search over all transversals follows, bounded by ``node_budget``
    (``settings.strip_search_budget`` when omitted).
    """
    if array.k % 2 == 0:
        raise PreconditionError("strippability is only defined for odd k")
    _require_valid(array, "is_strippable")

    n = array.n
    row_pos, col_pos = _positive_counts(array)
    diagonal = [(i, i) for i in range(n)]
    if is_primary_transversal(array, diagonal) and _strips_evenly(array, diagonal, row_pos, col_pos):
        return StripResult(transversal=Transversal(cells=tuple(diagonal)))
    if not search:
        return StripResult()

    budget = node_budget or settings.strip_search_budget
    half = (array.k - 1) // 2
    # Sign each line must give up so that the remainder is balanced.
    need_row = [row_pos[r] - half for r in range(n)]
    need_col = [col_pos[c] - half for c in range(n)]
    candidates: List[List[Coordinate]] = []
    for r in range(n):
        options = []
        for c in range(n):
            value = array[r, c]
            if value is None or abs(value) > n:
                continue
            removed = 1 if value > 0 else 0
            if need_row[r] == removed and need_col[c] == removed:
                options.append((r, c))
        candidates.append(options)

    nodes = 0
    used_cols = [False] * n
    used_vals = [False] * (n + 1)
    chosen: List[Coordinate] = []

    def extend(r: int) -> Optional[bool]:
        nonlocal nodes
        if r == n:
            return True
        for _, c in candidates[r]:
            magnitude = abs(array[r, c])
            if used_cols[c] or used_vals[magnitude]:
                continue
            nodes += 1
            if nodes > budget:
                return None
            used_cols[c] = used_vals[magnitude] = True
            chosen.append((r, c))
            outcome = extend(r + 1)
            if outcome is not False:
                return outcome
            chosen.pop()
            used_cols[c] = used_vals[magnitude] = False
        return False

    outcome = extend(0)
    logger.debug(f"Transversal search on H({n};{array.k}) explored {nodes} nodes")
    if outcome:
        return StripResult(transversal=Transversal(cells=tuple(chosen)), searched=True, exhausted=False, nodes_explored=nodes)
    return StripResult(searched=True, exhausted=outcome is False, nodes_explored=nodes)
