"""Shiftable arrays: 2x2 block tiles, the even x even block construction, the
four-diagonal H_s(n;4), and stacking further groups of four diagonals onto a host."""

import functools
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from core.errors import InternalConsistencyError, OccupancyError, ParameterError, PreconditionError
from core.models import HeffterArray, Route
from core.transforms import filled_diagonals, longest_empty_run, overlay, permute_rows_cyclic, shift
from core.verifier import verify
from utils.decorators import verified
from utils.helpers import ValidationHelper


class TileKind(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class BlockTile(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: TileKind
    index: int
    cells: Tuple[Tuple[int, int], Tuple[int, int]]

    @property
    def row_sums(self) -> Tuple[int, ...]:
        return tuple(np.sum(self.cells, axis=1).tolist())

    @property
    def column_sums(self) -> Tuple[int, ...]:
        return tuple(np.sum(self.cells, axis=0).tolist())


def tile(kind: TileKind, index: int) -> BlockTile:
    """Tile of the given kind whose support is {4i+1, ..., 4i+4}."""
    ValidationHelper.require(index >= 0, f"tile index must be nonnegative, got {index}")
    kind = TileKind(kind)
    base = 4 * index
    if kind is TileKind.A:
        cells = ((-1 - base, 2 + base), (3 + base, -4 - base))
    elif kind is TileKind.B:
        cells = ((1 + base, -2 - base), (-3 - base, 4 + base))
    else:
        cells = ((1 + base, -3 - base), (-2 - base, 4 + base))
    return BlockTile(kind=kind, index=index, cells=cells)


def _place_tiles(n: int, placements: Dict[Tuple[int, int], BlockTile]) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=np.int64)
    for (bi, bj), t in placements.items():
        matrix[2 * bi:2 * bi + 2, 2 * bj:2 * bj + 2] = t.cells
    return matrix


@verified
def build_even_even(n: int, k: int) -> HeffterArray:
    """Shiftable H_s(n;k) for n, k even with 4 <= k <= n, assembled from 2x2 tiles on an (n/2) x (n/2) block grid."""
    ValidationHelper.require(n % 2 == 0 and k % 2 == 0, f"n and k must both be even, got n={n}, k={k}")
    ValidationHelper.require(4 <= k <= n, f"need 4 <= k <= n, got n={n}, k={k}")
    m = n // 2
    placements: Dict[Tuple[int, int], BlockTile] = {}

    if k % 4 == 0:
        q = k // 4
        for d in range(q):
            for i in range(m):
                placements[(i, (i + 1 + d) % m)] = tile(TileKind.A, d * m + i)
        for d in range(q):
            for i in range(m):
                placements[(i, (i + 1 + q + d) % m)] = tile(TileKind.B, m * q + d * m + i)
        matrix = _place_tiles(n, placements)
    else:
        r = k // 2
        ValidationHelper.require(m >= 3, f"k = 2 (mod 4) needs at least three block rows, got n={n}")
        for i in range(m):
            placements[(i, i)] = tile(TileKind.A, 3 * i)
            placements[(i, (i + 1) % m)] = tile(TileKind.C, 3 * i + 1)
            placements[(i, (i + 2) % m)] = tile(TileKind.A, 3 * i + 2)
        p = (r - 3) // 2
        for d in range(p):
            for i in range(m):
                placements[(i, (i + 3 + d) % m)] = tile(TileKind.A, 3 * m + d * m + i)
        for d in range(p):
            for i in range(m):
                placements[(i, (i + 3 + p + d) % m)] = tile(TileKind.B, 3 * m + p * m + d * m + i)
        matrix = _place_tiles(n, placements)
        # The A/C/A band leaves column sums (3, -3) in every block column;
        # swapping 2+12i and 5+12i in the top row of each block row cancels them.
        for i in range(m):
            left, right = 2 * i + 1, (2 * i + 2) % n
            matrix[2 * i, [left, right]] = matrix[2 * i, [right, left]]

    logger.debug(f"Assembled H_s({n};{k}) from {len(placements)} tiles")
    return HeffterArray.from_matrix(matrix, k=k, provenance=Route.EVEN_BLOCKS.value)


@functools.lru_cache(maxsize=None)
@verified
def build_hs4(n: int) -> HeffterArray:
    """Shiftable H_s(n;4) whose filled cells occupy the diagonals D_{n-3}, ..., D_0."""
    ValidationHelper.require(n >= 4, f"H_s(n;4) needs n >= 4, got n={n}")
    matrix = np.zeros((n, n), dtype=np.int64)
    matrix[:4, 0] = (1, -(n + 1), -(2 * n + 1), 3 * n + 1)
    # Column c0 in 1..n-2 holds c0+1 and its three partners on rows c0..c0+3.
    middle = np.arange(1, n - 1)
    c = middle + 1
    for d, values in enumerate((c, -(2 * n + c), -(n + c), 3 * n + c)):
        matrix[(middle + d) % n, middle] = values
    matrix[[n - 1, 0, 1, 2], n - 1] = (n, -2 * n, -3 * n, 4 * n)
    return HeffterArray.from_matrix(matrix, k=4, provenance=Route.DIAGONAL_4.value)


def _diagonal_group(n: int, start: int, offset: int) -> HeffterArray:
    """build_hs4(n) moved onto D_start..D_{start+3} and shifted by offset."""
    j = permute_rows_cyclic(build_hs4(n), -(start + 3))
    return shift(j, offset)


def _check_group_empty(host: HeffterArray, start: int) -> None:
    n = host.n
    targets = {(start + d) % n for d in range(4)}
    if targets & filled_diagonals(host):
        raise OccupancyError(f"diagonals D_{start % n}..D_{(start + 3) % n} of H({n};{host.k}) are not all empty")


@verified
def augment4(host: HeffterArray, start: int) -> HeffterArray:
    """Fill four consecutive empty diagonals of a valid host, turning an H(n;k) into an H(n;k+4)."""
    if not verify(host).valid:
        raise PreconditionError(f"augment4 requires a valid host, H({host.n};{host.k}) fails verification")
    _check_group_empty(host, start)
    ValidationHelper.require(host.k + 4 <= host.n, f"cannot add four diagonals to H({host.n};{host.k})")
    return overlay(host, _diagonal_group(host.n, start, host.n * host.k))


def stack_diagonals(host: HeffterArray, target_k: int, provenance: Optional[str] = None) -> HeffterArray:
    """Raise k to target_k by filling consecutive groups of four diagonals from the start
    of the host's longest empty run. The result is verified once, at the end."""
    n, k = host.n, host.k
    ValidationHelper.require(
        target_k >= k and (target_k - k) % 4 == 0,
        f"cannot reach k={target_k} from k={k} in steps of four",
    )
    groups = (target_k - k) // 4
    if groups == 0:
        return host.with_provenance(provenance) if provenance else host

    run = longest_empty_run(host)
    if run is None or run.length < 4 * groups:
        available = 0 if run is None else run.length
        raise ParameterError(f"H({n};{k}) has an empty run of {available} diagonals, {4 * groups} needed")

    matrix = host.matrix
    for g in range(groups):
        matrix += _diagonal_group(n, run.start + 4 * g, n * (k + 4 * g)).matrix
    result = HeffterArray.from_matrix(matrix, k=target_k, provenance=provenance or host.provenance)

    report = verify(result)
    if not report.valid:
        if not verify(host).valid:
            raise PreconditionError(f"host H({n};{k}) fails verification")
        raise InternalConsistencyError(f"stacking H({n};{k}) up to k={target_k} produced an invalid array", report=report)
    logger.debug(f"Stacked {groups} diagonal groups onto H({n};{k}) from D_{run.start}")
    return result


def build_hs_4k(n: int, k: int) -> HeffterArray:
    """Shiftable H_s(n;k) for k = 0 (mod 4), 4 <= k <= n."""
    ValidationHelper.require(k % 4 == 0 and 4 <= k <= n, f"need k = 0 (mod 4) with 4 <= k <= n, got n={n}, k={k}")
    base = build_hs4(n)
    if k == 4:
        return base
    return stack_diagonals(base, k, provenance=Route.DIAGONAL_4K.value)

