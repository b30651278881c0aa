"""Constructions for k = 1 (mod 4): booster blocks, filler families, strip composition,
and the route table that ties them to the ladder arrays and the stored literals."""

import functools
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from constructions.ladder import build_h3
from constructions.literals import LITERALS, literal_array
from constructions.shiftable import stack_diagonals
from core.errors import ParameterError, PreconditionError, UnknownClassError
from core.models import Grid, HeffterArray, Route, Verdict, grid_to_matrix, matrix_to_grid
from core.transforms import assemble_blocks, negate_grid, shift_grid, transpose_grid
from core.verifier import is_strippable
from utils.decorators import verified
from utils.helpers import ValidationHelper

BOOSTER_SUMS = (0, 4, 8, 12)

# Catalog for a <= b; the remaining boosters are transposes.
_BOOSTER_CATALOG: Dict[Tuple[int, int], Grid] = {
    (0, 0): ((1, -2, -3, 4), (-5, 6, 7, -8), (-9, 10, 11, -12), (13, -14, -15, 16)),
    (0, 4): ((-1, 5, 9, -13), (-2, 6, 10, -14), (3, -7, -11, 15), (4, -8, -12, 16)),
    (0, 8): ((-1, 2, 3, -4), (5, -6, -7, 8), (-9, 10, 11, -12), (13, -14, -15, 16)),
    (0, 12): ((-2, 4, 6, -8), (10, -12, -14, 16), (-1, 3, 9, -11), (5, -7, -13, 15)),
    (4, 4): ((9, -1, 2, -6), (-13, 5, -10, 14), (15, -11, 8, -16), (-7, 3, -4, 12)),
    (4, 8): ((-6, 8, 4, -2), (10, -12, -16, 14), (5, -7, 13, -15), (-1, 3, -9, 11)),
    (4, 12): ((-1, 9, 2, -6), (5, -13, -10, 14), (-3, 7, 4, -12), (11, -15, -8, 16)),
    (8, 8): ((-1, 5, -9, 13), (10, -14, 2, -6), (11, -7, 3, -15), (-12, 8, -4, 16)),
    (8, 12): ((-2, 6, 8, -4), (10, -16, -14, 12), (-5, 1, 7, -11), (9, -3, -13, 15)),
    (12, 12): ((13, -5, -10, 14), (-9, 1, 2, -6), (-7, 3, 4, -12), (15, -11, -8, 16)),
}

# Row and column sums (1, -2, -3, 4); links Z_i to the boosters of its block row.
CONNECTOR: Grid = ((-1, 4, -11, 9), (-6, 8, 10, -14), (3, -12, 13, -7), (5, -2, -15, 16))


def _line_sums(cells: Grid) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    matrix = grid_to_matrix(cells)
    return tuple(matrix.sum(axis=1).tolist()), tuple(matrix.sum(axis=0).tolist())


class BoosterArray(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    cells: Grid

    @property
    def row_sums(self) -> Tuple[int, ...]:
        return _line_sums(self.cells)[0]

    @property
    def column_sums(self) -> Tuple[int, ...]:
        return _line_sums(self.cells)[1]


class FillerArray(BaseModel):
    """A u x u block with v filled cells per line, every line summing to t."""

    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    t: int
    cells: Grid

    def negated(self) -> Grid:
        return negate_grid(self.cells)


class FillerFamily(BaseModel):
    """n filler arrays indexed by their line sum t = 1, ..., n."""

    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    arrays: Tuple[FillerArray, ...]

    @property
    def n(self) -> int:
        return len(self.arrays)

    def __getitem__(self, t: int) -> FillerArray:
        if not 1 <= t <= self.n:
            raise IndexError(f"filler index must lie in 1..{self.n}, got {t}")
        return self.arrays[t - 1]

    def __len__(self) -> int:
        return self.n


class DiagonalBlock(BaseModel):
    """u x u block whose only filled cells are (j, j) = base + j * stride + offset."""

    model_config = ConfigDict(frozen=True)

    u: int
    base: int
    stride: int
    offset: int

    @property
    def cells(self) -> Grid:
        return matrix_to_grid(np.diag(self.base + self.stride * np.arange(self.u) + self.offset))


def booster(a: int, b: int) -> BoosterArray:
    if a not in BOOSTER_SUMS or b not in BOOSTER_SUMS:
        raise ParameterError(f"booster sums must lie in {BOOSTER_SUMS}, got ({a}, {b})")
    if a <= b:
        cells = _BOOSTER_CATALOG[(a, b)]
    else:
        cells = transpose_grid(_BOOSTER_CATALOG[(b, a)])
    return BoosterArray(a=a, b=b, cells=cells)


def decompose_sum(target: int, t: int) -> List[int]:
    """Write target as t values from {0, 4, 8, 12}: as many 12s as possible, then the remainder, then 0s."""
    ValidationHelper.require(t >= 1, f"need at least one part, got t={t}")
    if target < 0 or target > 12 * t or target % 4:
        raise ParameterError(f"{target} is not a sum of {t} values from {BOOSTER_SUMS}")
    twelves, remainder = divmod(target, 12)
    parts = [12] * twelves
    if remainder:
        parts.append(remainder)
    return parts + [0] * (t - len(parts))


def z_block(i: int) -> Grid:
    return matrix_to_grid(np.diag([-1 - 4 * i, 2 + 4 * i, 3 + 4 * i, -4 - 4 * i]))


def booster_minimum_k(n: int) -> int:
    return 4 * ValidationHelper.ceil_div(n - 4, 12) + 5


@verified
def build_from_boosters(n: int, k: int) -> HeffterArray:
    """H(n;k) for n = 0 (mod 4), k = 1 (mod 4), 4*ceil((n-4)/12) + 5 <= k < n, on an (n/4) x (n/4) block grid."""
    ValidationHelper.require(n % 4 == 0 and n >= 8, f"n must be a multiple of 4 with n >= 8, got n={n}")
    ValidationHelper.require(k % 4 == 1, f"k must be 1 (mod 4), got k={k}")
    k_min = booster_minimum_k(n)
    ValidationHelper.require(k_min <= k < n, f"need {k_min} <= k < {n}, got k={k}")
    m = n // 4
    t = ValidationHelper.ceil_div(n - 4, 12)
    s = (k - k_min) // 4
    ValidationHelper.require(2 + t + s <= m, f"{2 + t + s} block diagonals do not fit in a {m}x{m} block grid")

    blocks: Dict[Tuple[int, int], Grid] = {}
    window = 0
    for i in range(m):
        blocks[(i, i)] = z_block(i)
        blocks[(i, (i + 1) % m)] = shift_grid(CONNECTOR, n + 16 * i)
        row_parts = decompose_sum(4 * i, t)
        for j in range(1, t + 1):
            c = (i + 1 + j) % m
            b_block = booster(row_parts[j - 1], decompose_sum(4 * c, t)[j - 1])
            blocks[(i, c)] = shift_grid(b_block.cells, 5 * n + 16 * window)
            window += 1
        for j in range(s):
            blocks[(i, (i + t + 2 + j) % m)] = shift_grid(booster(0, 0).cells, 5 * n + 16 * window)
            window += 1

    logger.debug(f"Placed {window} boosters for H({n};{k}) with t={t}, s={s}")
    return assemble_blocks(n, 4, blocks, k, provenance=Route.BOOSTERS.value)


def filler_33(n: int) -> FillerFamily:
    """(3;3)-filler family: fully filled 3x3 blocks with supports partitioning {1, ..., 9n}."""
    ValidationHelper.require(n >= 2, f"filler families need n >= 2, got n={n}")
    arrays = []
    for t in range(1, n):
        cells = (
            (9 * n - t, -8 * n + t, -n + t),
            (-6 * n + t, n + t, 5 * n - t),
            (-3 * n + t, 7 * n - t, -4 * n + t),
        )
        arrays.append(FillerArray(u=3, v=3, t=t, cells=cells))
    last = ((9 * n, -6 * n, -2 * n), (-5 * n, -n, 7 * n), (-3 * n, 8 * n, -4 * n))
    arrays.append(FillerArray(u=3, v=3, t=n, cells=last))
    return FillerFamily(u=3, v=3, arrays=tuple(arrays))


def filler_43(n: int) -> FillerFamily:
    """(4;3)-filler family: 4x4 blocks with an empty main diagonal, supports partitioning {1, ..., 12n}."""
    ValidationHelper.require(n >= 2, f"filler families need n >= 2, got n={n}")
    _ = None
    arrays = []
    for t in range(1, n):
        cells = (
            (_, -11 * n + t, 11 * n + t, -t),
            (7 * n - t, _, -2 * n + t, -5 * n + t),
            (-9 * n + t, 4 * n - t, _, 5 * n + t),
            (2 * n + t, 7 * n + t, -9 * n - t, _),
        )
        arrays.append(FillerArray(u=4, v=3, t=t, cells=cells))
    last = (
        (_, 11 * n, -12 * n, 2 * n),
        (-8 * n, _, 4 * n, 5 * n),
        (10 * n, -3 * n, _, -6 * n),
        (-n, -7 * n, 9 * n, _),
    )
    arrays.append(FillerArray(u=4, v=3, t=n, cells=last))
    return FillerFamily(u=4, v=3, arrays=tuple(arrays))


def filler_family(u: int, n: int) -> FillerFamily:
    if u == 3:
        return filler_33(n)
    if u == 4:
        return filler_43(n)
    raise ParameterError(f"no filler family with block side {u}")


def diagonal_block(u: int, base: int, stride: int, offset: int) -> DiagonalBlock:
    return DiagonalBlock(u=u, base=base, stride=stride, offset=offset)


@verified
def strip_compose(host: HeffterArray, fillers: FillerFamily) -> HeffterArray:
    """Inflate a strippable H(n;2k+1) into an H(nu; v+2k).

    Transversal cells holding +-t become +-A_t; every other cell +-t becomes the
    diagonal block +-D_t with entries x + j * 2nk + (t - n), where x = nuv.
    """
    n = host.n
    if host.k % 2 == 0:
        raise PreconditionError(f"strip composition needs odd k, got H({n};{host.k})")
    if fillers.n != n:
        raise PreconditionError(f"host has side {n} but the filler family has {fillers.n} arrays")
    strip = is_strippable(host)
    if not strip.found or not strip.transversal.is_main_diagonal:
        raise PreconditionError(f"H({n};{host.k}) has no main-diagonal primary transversal")

    u, v = fillers.u, fillers.v
    stride = n * (host.k - 1)
    base = n * u * v
    blocks: Dict[Tuple[int, int], Grid] = {}
    for r, c, value in host.filled():
        magnitude = abs(value)
        if r == c:
            filler = fillers[magnitude]
            blocks[(r, c)] = filler.cells if value > 0 else filler.negated()
        else:
            cells = diagonal_block(u, base, stride, magnitude - n).cells
            blocks[(r, c)] = cells if value > 0 else negate_grid(cells)
    return assemble_blocks(n * u, u, blocks, v + host.k - 1)


def _strip_reach(n: int, u: int) -> int:
    """Largest k reachable by stacking diagonals on a strip-composed H(n;5) with block side u."""
    empty_run = n - 2 * u - 1
    return 5 + 4 * (empty_run // 4)


def _strip_host(route: Route, n: int) -> Tuple[int, int]:
    """(host side, filler block side) for a strip route."""
    if route is Route.STRIP_16M:
        return n // 4, 4
    return n // 3, 3


def k1mod4_route(n: int, k: int) -> Optional[Route]:
    """The first applicable construction for k = 1 (mod 4), or None if the class is unsolved."""
    if k % 4 != 1 or not 5 <= k < n:
        return None
    if (n, k) in LITERALS:
        return Route.LITERAL
    if n % 12 == 0:
        return Route.STRIP_12M
    boosters_apply = n % 4 == 0 and n >= 12 and booster_minimum_k(n) <= k <= n - 3
    if n % 16 == 0 or (n % 16 == 4 and n >= 20):
        if k <= _strip_reach(n, 4):
            return Route.STRIP_16M
        if boosters_apply:
            return Route.BOOSTERS
    if n % 12 == 3 and n >= 15:
        return Route.STRIP_12M_3
    if boosters_apply:
        return Route.BOOSTERS
    return None


@functools.lru_cache(maxsize=None)
def _strip_base(route: Route, n: int) -> HeffterArray:
    host_side, u = _strip_host(route, n)
    return strip_compose(build_h3(host_side), filler_family(u, host_side)).with_provenance(route.value)


def build_k1mod4(n: int, k: int) -> HeffterArray:
    """H(n;k) for k = 1 (mod 4) in every class with a known construction."""
    route = k1mod4_route(n, k)
    if route is None:
        raise UnknownClassError(f"no construction is known for H({n};{k})", status=Verdict.UNKNOWN)
    logger.debug(f"H({n};{k}) routed to {route.value}")
    if route is Route.LITERAL:
        return literal_array(n, k)
    if route is Route.BOOSTERS:
        return build_from_boosters(n, k)
    return stack_diagonals(_strip_base(route, n), k, provenance=route.value)
