"""Existence verdicts for (n, k) and routing to the construction that realises them."""

import functools
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict

from config import settings
from constructions.boosters import build_k1mod4, k1mod4_route
from constructions.ladder import build_k3mod4
from constructions.shiftable import build_even_even, build_hs4, build_hs_4k
from core.errors import InternalConsistencyError
from core.models import HeffterArray, Route, Verdict
from core.verifier import verify
from utils.helpers import ValidationHelper

CONJECTURE = "An integer H(n;k) exists if and only if n >= k >= 3 and nk = 0 or 3 (mod 4)."

SHIFTABLE_ROUTES = frozenset({Route.EVEN_BLOCKS, Route.DIAGONAL_4, Route.DIAGONAL_4K})


class ExistenceStatus(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    verdict: Verdict
    route: Optional[Route] = None
    reason: str = ""

    @property
    def promises_shiftable(self) -> bool:
        return self.route in SHIFTABLE_ROUTES


class CoverageEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: ExistenceStatus
    verified: Optional[bool] = None


class CoverageTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_max: int
    entries: Tuple[CoverageEntry, ...]

    def status(self, n: int, k: int) -> ExistenceStatus:
        for entry in self.entries:
            if entry.status.n == n and entry.status.k == k:
                return entry.status
        raise KeyError(f"({n}, {k}) is outside the table")

    @property
    def counts(self) -> Dict[Verdict, int]:
        totals = {verdict: 0 for verdict in Verdict}
        for entry in self.entries:
            totals[entry.status.verdict] += 1
        return totals

    def residue_summary(self) -> Dict[Tuple[int, int], List[str]]:
        """Routes and verdicts seen in each (n mod 4, k mod 4) class among in-scope cells."""
        summary: Dict[Tuple[int, int], List[str]] = {}
        for entry in self.entries:
            status = entry.status
            if status.verdict is Verdict.OUT_OF_SCOPE:
                continue
            label = status.route.value if status.route else status.verdict.value
            seen = summary.setdefault((status.n % 4, status.k % 4), [])
            if label not in seen:
                seen.append(label)
        return dict(sorted(summary.items()))


def shiftable_exists(n: int, k: int) -> bool:
    """A shiftable H_s(n;k) exists exactly when k is even and nk = 0 (mod 4)."""
    return 4 <= k <= n and k % 2 == 0 and (n * k) % 4 == 0


def existence_status(n: int, k: int) -> ExistenceStatus:
    if n < 1 or k < 3 or k > n:
        return ExistenceStatus(
            n=n, k=k, verdict=Verdict.OUT_OF_SCOPE, reason="only 3 <= k <= n is considered"
        )
    nk = n * k
    if not ValidationHelper.is_admissible(n, k):
        return ExistenceStatus(
            n=n, k=k, verdict=Verdict.DOES_NOT_EXIST,
            reason=f"nk = {nk} = {nk % 4} (mod 4); an H(n;k) needs nk = 0 or 3 (mod 4)",
        )

    route: Optional[Route]
    if k % 4 == 0:
        route = Route.DIAGONAL_4 if k == 4 else Route.DIAGONAL_4K
    elif k % 4 == 2:
        route = Route.EVEN_BLOCKS
    elif k % 4 == 3:
        route = Route.LADDER_3 if k == 3 else Route.LADDER_3_STACKED
    else:
        route = k1mod4_route(n, k)

    if route is None:
        return ExistenceStatus(
            n=n, k=k, verdict=Verdict.UNKNOWN,
            reason=f"nk = {nk % 4} (mod 4) is admissible but no construction covers n = {n}, k = {k}",
        )
    return ExistenceStatus(
        n=n, k=k, verdict=Verdict.EXISTS, route=route,
        reason=f"n = {n % 4}, k = {k % 4} (mod 4) via {route.value}",
    )


_BUILDERS: Dict[Route, Callable[[int, int], HeffterArray]] = {
    Route.EVEN_BLOCKS: build_even_even,
    Route.DIAGONAL_4: lambda n, k: build_hs4(n),
    Route.DIAGONAL_4K: build_hs_4k,
    Route.LADDER_3: build_k3mod4,
    Route.LADDER_3_STACKED: build_k3mod4,
    Route.STRIP_12M: build_k1mod4,
    Route.STRIP_16M: build_k1mod4,
    Route.STRIP_12M_3: build_k1mod4,
    Route.BOOSTERS: build_k1mod4,
    Route.LITERAL: build_k1mod4,
}


@functools.lru_cache(maxsize=None)
def construct(n: int, k: int) -> Union[HeffterArray, ExistenceStatus]:
    """The array for (n, k) when one is known, otherwise its status."""
    status = existence_status(n, k)
    if status.verdict is not Verdict.EXISTS:
        return status

    array = _BUILDERS[status.route](n, k).with_provenance(status.route.value)
    report = verify(array)
    if not report.valid:
        logger.error(f"Route {status.route.value} produced an invalid H({n};{k})")
        raise InternalConsistencyError(f"route {status.route.value} produced an invalid H({n};{k})", report=report)
    logger.debug(f"Constructed H({n};{k}) via {status.route.value}")
    return array


def _coverage_row(n: int, n_max: int, build: bool) -> List[CoverageEntry]:
    entries = []
    for k in range(3, n_max + 1):
        status = existence_status(n, k)
        verified = None
        if build and status.verdict is Verdict.EXISTS:
            result = construct(n, k)
            verified = isinstance(result, HeffterArray) and verify(result).valid
        entries.append(CoverageEntry(status=status, verified=verified))
    return entries


def coverage_table(n_max: int, workers: Optional[int] = None, build: bool = False) -> CoverageTable:
    """Statuses of every 3 <= n, k <= n_max; with ``build`` set each Exists cell is also constructed and verified."""
    ValidationHelper.require(n_max >= 3, f"n_max must be at least 3, got {n_max}")
    workers = workers or settings.coverage_workers
    sides = range(3, n_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_coverage_row, sides, [n_max] * len(sides), [build] * len(sides)))
    else:
        rows = [_coverage_row(n, n_max, build) for n in sides]
    entries = tuple(entry for row in rows for entry in row)
    logger.info(f"Coverage up to n={n_max}: {len(entries)} cells")
    return CoverageTable(n_max=n_max, entries=entries)
