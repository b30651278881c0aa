"""Sporadic arrays with no generating procedure, stored cell by cell."""

import functools
from typing import Dict, Tuple

from core.errors import ParameterError
from core.models import Grid, HeffterArray, Route
from utils.decorators import verified

_ = None

_H_8_5: Grid = (
    (13, -20, 19, -11, -1, _, _, _),
    (-14, 16, 18, -22, _, 2, _, _),
    (15, -12, -23, 17, _, _, 3, _),
    (-9, 10, -21, 24, _, _, _, -4),
    (-5, _, _, _, 29, -30, 31, -25),
    (_, 6, _, _, -36, 32, -28, 26),
    (_, _, 7, _, 35, 34, -39, -37),
    (_, _, _, -8, -27, -38, 33, 40),
)

_H_7_5: Grid = (
    (-10, _, 16, -1, -2, -3, _),
    (_, -4, _, -6, -7, -5, 22),
    (-30, 29, -9, -8, _, _, 18),
    (-11, _, -12, 28, -31, 26, _),
    (_, -14, -15, -13, _, 17, 25),
    (27, -34, 20, _, 19, _, -32),
    (24, 23, _, _, 21, -35, -33),
)

_H_11_5: Grid = (
    (-1, -2, -3, _, _, 37, _, _, _, -31, _),
    (-4, -5, _, -6, _, _, -23, 38, _, _, _),
    (-7, -8, _, -18, -10, _, _, _, 43, _, _),
    (_, _, -11, -16, -9, -17, 53, _, _, _, _),
    (_, _, -14, -12, -13, -15, _, _, _, _, 54),
    (_, 40, _, _, -19, -49, -20, _, _, 48, _),
    (_, _, -22, 52, _, _, -55, -21, 46, _, _),
    (39, -25, _, _, _, _, _, -24, _, 42, -32),
    (-27, _, _, _, _, _, 45, 41, -26, _, -33),
    (_, _, _, _, _, 44, _, -34, -28, -29, 47),
    (_, _, 50, _, 51, _, _, _, -35, -30, -36),
)

LITERALS: Dict[Tuple[int, int], Grid] = {
    (8, 5): _H_8_5,
    (7, 5): _H_7_5,
    (11, 5): _H_11_5,
}


@functools.lru_cache(maxsize=None)
@verified
def literal_array(n: int, k: int) -> HeffterArray:
    if (n, k) not in LITERALS:
        raise ParameterError(f"no stored array for H({n};{k})")
    return HeffterArray(n=n, k=k, grid=LITERALS[(n, k)], provenance=Route.LITERAL.value)
