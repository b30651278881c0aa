"""Backtracking search for H(n;k) at desk scale.

An H(n;k) is read as two partitions of the signed entries into n zero-sum
blocks of size k: the rows, and the columns, where a column takes at most one
entry from each row. The search builds the rows first and then carves the
columns out of them. In both stages the next block is the one holding the
largest unused magnitude, so blocks come out ordered by their largest entry,
and nk is kept positive. Every H(n;k) is a row and column permutation, possibly
negated, of exactly one array built this way. Raw counts and listings expand
those representatives.
"""

import time
from concurrent.futures import Future, ProcessPoolExecutor, as_completed
from datetime import timedelta
from enum import Enum
from itertools import accumulate, permutations
from math import factorial
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import InternalConsistencyError, ParameterError, PreconditionError
from core.models import Grid, HeffterArray, Verdict, matrix_to_grid
from core.verifier import verify
from features.dispatch import existence_status

Block = Tuple[int, ...]


class SearchMode(str, Enum):
    FIRST_SOLUTION = "first"
    EXHAUST_ALL = "all"
    COUNT_ONLY = "count"


class SearchOutcome(str, Enum):
    FOUND = "Found"
    NONE_EXISTS = "NoneExists"
    INCONCLUSIVE = "Inconclusive"


class SearchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    k: int = Field(ge=1)
    mode: SearchMode = SearchMode.FIRST_SOLUTION
    node_budget: Optional[int] = Field(None, ge=1)
    symmetry_breaking: Optional[bool] = None
    deterministic_order: bool = True
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_budget_and_workers(self):
        if self.workers > 1 and self.node_budget is not None:
            raise ParameterError("a node budget cannot be combined with parallel workers")
        return self

    @property
    def breaks_symmetry(self) -> bool:
        """Off by default when counting or listing, so totals stay raw."""
        if self.symmetry_breaking is not None:
            return self.symmetry_breaking
        return self.mode is SearchMode.FIRST_SOLUTION


class SearchResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    outcome: SearchOutcome
    array: Optional[HeffterArray] = None
    solutions: Tuple[HeffterArray, ...] = ()
    solution_count: int = 0
    nodes_explored: int = 0
    elapsed: timedelta = timedelta(0)


class _BudgetExhausted(Exception):
    pass


class _FirstFound(Exception):
    pass


class _ChunkResult(BaseModel):
    grids: Tuple[Grid, ...] = ()
    count: int = 0
    nodes: int = 0
    aborted: bool = False


class _Searcher:
    """Depth-first search over zero-sum rows, then over zero-sum columns orthogonal to them.

    Every element tried while completing a block is one node.
    """

    def __init__(self, n: int, k: int, mode: SearchMode, budget: Optional[int]):
        self.n = n
        self.k = k
        self.top = n * k
        self.mode = mode
        self.budget = budget
        self.nodes = 0
        self.count = 0
        self.grids: List[Grid] = []
        # free[m]: magnitude m not yet in a row; open[m]: entry of magnitude m not yet in a column
        self.free = [False] + [True] * self.top
        self.open = [False] * (self.top + 1)
        self.value_of = [0] * (self.top + 1)
        self.row_of = [0] * (self.top + 1)

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted()

    def _largest(self, flags: Sequence[bool]) -> int:
        return next(m for m in range(self.top, 0, -1) if flags[m])

    # Rows

    def first_rows(self) -> List[Block]:
        """Candidate first rows in search order; each holds +nk."""
        return self._row_blocks(self.top, (1,))

    def _row_blocks(self, lead: int, signs: Iterable[int]) -> List[Block]:
        """Zero-sum rows of k signed values whose largest magnitude is ``lead``."""
        pool = [m for m in range(lead - 1, 0, -1) if self.free[m]]
        prefix = list(accumulate(pool, initial=0))
        index = {m: i for i, m in enumerate(pool)}
        blocks: List[Block] = []
        block: List[int] = []

        def extend(need: int, slots: int, start: int) -> None:
            if slots == 1:
                self._tick()
                i = index.get(abs(need))
                if need and i is not None and i >= start:
                    blocks.append(tuple(block) + (need,))
                return
            for i in range(start, len(pool) - slots + 1):
                # magnitudes only shrink from here on
                if abs(need) > prefix[i + slots] - prefix[i]:
                    break
                self._tick()
                for value in (pool[i], -pool[i]):
                    block.append(value)
                    extend(need - value, slots - 1, i + 1)
                    block.pop()

        for sign in signs:
            block[:] = [sign * lead]
            extend(-sign * lead, self.k - 1, 0)
        return blocks

    def _mark_row(self, block: Block, free: bool) -> None:
        for value in block:
            self.free[abs(value)] = free

    def _place_rows(self, rows: List[Block]) -> None:
        if len(rows) == self.n:
            for r, block in enumerate(rows):
                for value in block:
                    self.value_of[abs(value)] = value
                    self.row_of[abs(value)] = r
                    self.open[abs(value)] = True
            self._place_columns([])
            return
        signs = (1, -1) if rows else (1,)
        for block in self._row_blocks(self._largest(self.free), signs):
            self._mark_row(block, False)
            rows.append(block)
            self._place_rows(rows)
            rows.pop()
            self._mark_row(block, True)

    # Columns

    def _column_blocks(self, lead: int) -> List[Block]:
        """Magnitudes of zero-sum columns led by ``lead`` that use each row at most once."""
        pool = [m for m in range(lead - 1, 0, -1) if self.open[m]]
        prefix = list(accumulate(pool, initial=0))
        index = {m: i for i, m in enumerate(pool)}
        blocks: List[Block] = []
        block = [lead]

        def extend(need: int, slots: int, start: int, rows_used: int) -> None:
            if slots == 1:
                self._tick()
                m = abs(need)
                i = index.get(m)
                if i is not None and i >= start and self.value_of[m] == need and not (rows_used >> self.row_of[m]) & 1:
                    blocks.append(tuple(block) + (m,))
                return
            for i in range(start, len(pool) - slots + 1):
                if abs(need) > prefix[i + slots] - prefix[i]:
                    break
                m = pool[i]
                if (rows_used >> self.row_of[m]) & 1:
                    continue
                self._tick()
                block.append(m)
                extend(need - self.value_of[m], slots - 1, i + 1, rows_used | 1 << self.row_of[m])
                block.pop()

        extend(-self.value_of[lead], self.k - 1, 0, 1 << self.row_of[lead])
        return blocks

    def _place_columns(self, columns: List[Block]) -> None:
        if len(columns) == self.n:
            self._record(columns)
            return
        for block in self._column_blocks(self._largest(self.open)):
            for m in block:
                self.open[m] = False
            columns.append(block)
            self._place_columns(columns)
            columns.pop()
            for m in block:
                self.open[m] = True

    def _record(self, columns: Sequence[Block]) -> None:
        self.count += 1
        if self.mode is not SearchMode.COUNT_ONLY:
            matrix = np.zeros((self.n, self.n), dtype=np.int64)
            for c, block in enumerate(columns):
                matrix[[self.row_of[m] for m in block], c] = [self.value_of[m] for m in block]
            self.grids.append(matrix_to_grid(matrix))
        if self.mode is SearchMode.FIRST_SOLUTION:
            raise _FirstFound()

    def run(self, first_row: Optional[Block] = None) -> _ChunkResult:
        aborted = False
        try:
            if first_row is None:
                self._place_rows([])
            else:
                self._mark_row(first_row, False)
                self._place_rows([first_row])
        except _FirstFound:
            pass
        except _BudgetExhausted:
            aborted = True
        return _ChunkResult(grids=tuple(self.grids), count=self.count, nodes=self.nodes, aborted=aborted)


def _run_chunk(n: int, k: int, mode: SearchMode, first_row: Block) -> _ChunkResult:
    return _Searcher(n, k, mode, None).run(first_row)


def _merge(merged: _ChunkResult, chunk: _ChunkResult) -> _ChunkResult:
    return _ChunkResult(
        grids=merged.grids + chunk.grids,
        count=merged.count + chunk.count,
        nodes=merged.nodes + chunk.nodes,
    )


def _solve_parallel(config: SearchConfig) -> _ChunkResult:
    """One chunk per candidate first row.

    With ``deterministic_order`` the chunks are reduced in search order, so the
    result matches a sequential run; otherwise they are merged as they finish.
    """
    first_rows = _Searcher(config.n, config.k, config.mode, None).first_rows()
    first_only = config.mode is SearchMode.FIRST_SOLUTION
    merged = _ChunkResult()
    with ProcessPoolExecutor(max_workers=config.workers) as executor:
        futures: List[Future] = [
            executor.submit(_run_chunk, config.n, config.k, config.mode, row) for row in first_rows
        ]
        finished = futures if config.deterministic_order else as_completed(futures)
        for future in finished:
            chunk = future.result()
            merged = _merge(merged, chunk)
            if first_only and chunk.count:
                merged = _ChunkResult(grids=chunk.grids, count=1, nodes=merged.nodes)
                for pending in futures:
                    pending.cancel()
                break
    return merged


def _orbit(array: HeffterArray) -> Iterator[HeffterArray]:
    """Every row and column permutation of the array and of its negation; all distinct."""
    matrix = array.matrix
    lines = range(array.n)
    for sign in (1, -1):
        for rows in permutations(lines):
            permuted = sign * matrix[list(rows)]
            for columns in permutations(lines):
                yield HeffterArray.from_matrix(permuted[:, list(columns)], k=array.k, provenance=array.provenance)


def solve(config: SearchConfig) -> SearchResult:
    """Find, list or count H(n;k) by exhaustive backtracking."""
    started = time.perf_counter()
    n, k = config.n, config.k
    if k < 3 or k > n:
        return SearchResult(outcome=SearchOutcome.NONE_EXISTS)

    logger.info(
        f"Searching H({n};{k}) mode={config.mode.value} budget={config.node_budget} "
        f"symmetry={config.breaks_symmetry} workers={config.workers} deterministic={config.deterministic_order}"
    )
    if config.workers > 1:
        chunk = _solve_parallel(config)
    else:
        chunk = _Searcher(n, k, config.mode, config.node_budget).run()

    arrays = []
    for grid in chunk.grids:
        array = HeffterArray(n=n, k=k, grid=grid, provenance="search")
        if not verify(array).valid:
            raise InternalConsistencyError(f"search returned an invalid H({n};{k})")
        arrays.append(array)

    count = chunk.count
    if not config.breaks_symmetry and config.mode is not SearchMode.FIRST_SOLUTION:
        count *= 2 * factorial(n) ** 2
        if config.mode is SearchMode.EXHAUST_ALL:
            arrays = [image for array in arrays for image in _orbit(array)]

    if chunk.aborted:
        outcome = SearchOutcome.INCONCLUSIVE
    elif chunk.count:
        outcome = SearchOutcome.FOUND
    else:
        outcome = SearchOutcome.NONE_EXISTS
    elapsed = timedelta(seconds=time.perf_counter() - started)
    logger.info(f"Search H({n};{k}) finished: {outcome.value}, {chunk.nodes} nodes in {elapsed.total_seconds():.3f}s")
    return SearchResult(
        outcome=outcome,
        array=arrays[0] if arrays else None,
        solutions=tuple(arrays) if config.mode is SearchMode.EXHAUST_ALL else (),
        solution_count=count,
        nodes_explored=chunk.nodes,
        elapsed=elapsed,
    )


def crosscheck(
    n: int,
    k: int,
    mode: SearchMode = SearchMode.EXHAUST_ALL,
    node_budget: Optional[int] = None,
) -> Optional[bool]:
    """Whether the search agrees with the dispatcher's verdict; None when the search was inconclusive.

    Runs a complete search with symmetry breaking and, unless one is given, no node budget.
    """
    status = existence_status(n, k)
    if status.verdict not in (Verdict.EXISTS, Verdict.DOES_NOT_EXIST):
        raise PreconditionError(f"crosscheck needs a decided verdict, H({n};{k}) is {status.verdict.value}")
    result = solve(SearchConfig(n=n, k=k, mode=mode, node_budget=node_budget, symmetry_breaking=True))
    if result.outcome is SearchOutcome.INCONCLUSIVE:
        return None
    return (result.outcome is SearchOutcome.FOUND) == (status.verdict is Verdict.EXISTS)
