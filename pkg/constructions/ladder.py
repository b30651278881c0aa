"""Integer-current assignments on Moebius and cylindrical ladders, and the H(n;3)
arrays (and their k = 3 (mod 4) extensions) obtained from them."""

import functools
from enum import Enum
from typing import Dict, List, NamedTuple, Tuple

import networkx as nx
import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from constructions.shiftable import stack_diagonals
from core.errors import ConsistencyError, PreconditionError
from core.models import HeffterArray, Route
from core.verifier import is_cyclically_tridiagonal, verify
from utils.decorators import verified
from utils.helpers import ValidationHelper


class Vertex(NamedTuple):
    side: str  # "r" for row vertices, "c" for column vertices
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


Arc = Tuple[Vertex, Vertex]


class LadderFamily(str, Enum):
    MOBIUS = "mobius"
    CYLINDER = "cylinder"
    GENERAL = "general"


class CurrentAssignment(BaseModel):
    """Currents on one orientation of each edge; the reverse arc carries the negated current."""

    model_config = ConfigDict(frozen=True)

    rungs: int
    family: LadderFamily
    currents: Dict[Arc, int]

    def current(self, tail: Vertex, head: Vertex) -> int:
        if (tail, head) in self.currents:
            return self.currents[(tail, head)]
        if (head, tail) in self.currents:
            return -self.currents[(head, tail)]
        raise KeyError(f"no edge between {tail} and {head}")

    @property
    def support(self) -> List[int]:
        return sorted(abs(v) for v in self.currents.values())


class _Table:
    """Collects arcs while a ladder table is being transcribed."""

    def __init__(self, rungs: int):
        self.rungs = rungs
        self.currents: Dict[Arc, int] = {}

    def _vertex(self, side: str, i: int) -> Vertex:
        return Vertex(side, (i - 1) % self.rungs + 1)

    def rc(self, i: int, j: int, value: int) -> None:
        self.currents[(self._vertex("r", i), self._vertex("c", j))] = value

    def cr(self, i: int, j: int, value: int) -> None:
        self.currents[(self._vertex("c", i), self._vertex("r", j))] = value


def mobius_currents(m: int) -> CurrentAssignment:
    """Currents on the Moebius ladder with 4m+1 rungs."""
    ValidationHelper.require(m >= 1, f"m must be positive, got {m}")
    t = _Table(4 * m + 1)
    for i in range(1, m + 1):
        t.rc(2 * i - 1, 2 * i, 8 * m + 3 - i)
        t.cr(2 * i - 1, 2 * i, 8 * m + 2 + i)
        t.rc(2 * i, 2 * i + 1, 12 * m + 3 - i)
        t.cr(2 * i, 2 * i + 1, 4 * m + 2 + i)
        t.rc(2 * m + 2 * i - 1, 2 * m + 2 * i, 9 * m + 2 + i)
        t.cr(2 * m + 2 * i - 1, 2 * m + 2 * i, 7 * m + 3 - i)
        t.rc(2 * m + 2 * i, 2 * m + 2 * i + 1, 5 * m + 2 + i)
        t.cr(2 * m + 2 * i, 2 * m + 2 * i + 1, 11 * m + 3 - i)
    # rungs
    for i in range(1, 2 * m + 1):
        t.cr(i, i, 4 * m + 1 - i)
    for i in range(1, 2 * m):
        t.rc(2 * m + i + 1, 2 * m + i + 1, 2 * m - i)
    t.rc(4 * m + 1, 1, 12 * m + 3)
    t.cr(4 * m + 1, 1, 4 * m + 2)
    t.cr(2 * m + 1, 2 * m + 1, 4 * m + 1)
    t.cr(4 * m + 1, 4 * m + 1, 2 * m)
    return CurrentAssignment(rungs=t.rungs, family=LadderFamily.MOBIUS, currents=t.currents)


def cylinder_currents(m: int) -> CurrentAssignment:
    """Currents on the cylindrical ladder with 4m rungs."""
    ValidationHelper.require(m >= 1, f"m must be positive, got {m}")
    t = _Table(4 * m)
    for i in range(1, m + 1):
        t.rc(2 * i - 1, 2 * i, 8 * m + 1 - i)
        t.cr(2 * i - 1, 2 * i, 8 * m + i)
    for i in range(1, m):
        t.rc(2 * i, 2 * i + 1, 12 * m - i)
        t.cr(2 * i, 2 * i + 1, 4 * m + 1 + i)
    for i in range(1, m + 1):
        t.rc(2 * m - 2 + 2 * i, 2 * m - 1 + 2 * i, 5 * m + i)
        t.cr(2 * m - 2 + 2 * i, 2 * m - 1 + 2 * i, 11 * m + 1 - i)
        t.rc(2 * m - 1 + 2 * i, 2 * m + 2 * i, 9 * m + i)
        t.cr(2 * m - 1 + 2 * i, 2 * m + 2 * i, 7 * m + 1 - i)
    # rungs
    for i in range(1, 2 * m - 1):
        t.cr(i + 1, i + 1, 4 * m - 1 - i)
    for i in range(1, 2 * m):
        t.rc(2 * m + i, 2 * m + i, 2 * m - i)
    t.rc(4 * m, 1, 4 * m + 1)
    t.cr(4 * m, 1, 12 * m)
    t.rc(1, 1, 4 * m)
    t.rc(2 * m, 2 * m, 4 * m - 1)
    t.rc(4 * m, 4 * m, 2 * m)
    return CurrentAssignment(rungs=t.rungs, family=LadderFamily.CYLINDER, currents=t.currents)


def ladder_graph(ca: CurrentAssignment) -> nx.DiGraph:
    """Both orientations of every edge, each arc carrying its current."""
    graph = nx.DiGraph()
    for (tail, head), value in ca.currents.items():
        graph.add_edge(tail, head, current=value)
        graph.add_edge(head, tail, current=-value)
    return graph


def check_kcl(ca: CurrentAssignment) -> Dict[Vertex, int]:
    """Net outgoing current at every vertex; Kirchhoff's law holds iff all are zero."""
    graph = ladder_graph(ca)
    return {v: sum(current for _, _, current in graph.out_edges(v, data="current")) for v in graph.nodes}


def _degree(ca: CurrentAssignment) -> int:
    graph = ladder_graph(ca)
    if any(tail.side == head.side for tail, head in ca.currents):
        raise ConsistencyError("an arc joins two vertices on the same side")
    expected = {Vertex(side, i) for side in ("r", "c") for i in range(1, ca.rungs + 1)}
    if set(graph.nodes) != expected:
        raise ConsistencyError(f"vertex set does not match {ca.rungs} rows and {ca.rungs} columns")
    degrees = {d for _, d in graph.out_degree()}
    if len(degrees) != 1:
        raise ConsistencyError(f"graph is not regular, out-degrees {sorted(degrees)}")
    return degrees.pop()


def currents_to_array(ca: CurrentAssignment) -> HeffterArray:
    """Row i, column j holds the current on (r_i, c_j), or minus the current on (c_j, r_i)."""
    k = _degree(ca)
    n = ca.rungs
    matrix = np.zeros((n, n), dtype=np.int64)
    for (tail, head), value in ca.currents.items():
        if tail.side == "r":
            r, c, cell = tail.index - 1, head.index - 1, value
        else:
            r, c, cell = head.index - 1, tail.index - 1, -value
        if matrix[r, c]:
            raise ConsistencyError(f"edge {tail}-{head} appears twice")
        matrix[r, c] = cell
    return HeffterArray.from_matrix(matrix, k=k)


def array_to_currents(array: HeffterArray) -> CurrentAssignment:
    """Inverse of currents_to_array, storing every arc in its positive orientation."""
    if not verify(array).valid:
        raise PreconditionError(f"array_to_currents requires a valid H({array.n};{array.k})")
    currents: Dict[Arc, int] = {}
    for r, c, value in array.filled():
        row, column = Vertex("r", r + 1), Vertex("c", c + 1)
        if value > 0:
            currents[(row, column)] = value
        else:
            currents[(column, row)] = -value

    family = LadderFamily.GENERAL
    if array.k == 3 and is_cyclically_tridiagonal(array):
        if array.n % 4 == 1:
            family = LadderFamily.MOBIUS
        elif array.n % 4 == 0:
            family = LadderFamily.CYLINDER
    return CurrentAssignment(rungs=array.n, family=family, currents=currents)


@functools.lru_cache(maxsize=None)
@verified
def build_h3(n: int) -> HeffterArray:
    """Cyclically tridiagonal H(n;3) with the main diagonal as primary transversal, n = 0, 1 (mod 4)."""
    ValidationHelper.require(n >= 4, f"H(n;3) from a ladder needs n >= 4, got n={n}")
    ValidationHelper.require(n % 4 in (0, 1), f"no H({n};3) exists: 3n = {3 * n % 4} (mod 4)")
    ca = mobius_currents(n // 4) if n % 4 == 1 else cylinder_currents(n // 4)
    logger.debug(f"Building H({n};3) from the {ca.family.value} ladder")
    return currents_to_array(ca).with_provenance(Route.LADDER_3.value)


def build_k3mod4(n: int, k: int) -> HeffterArray:
    """H(n;k) for k = 3 (mod 4), 3 <= k < n, n = 0, 1 (mod 4): a ladder array plus groups of four diagonals."""
    ValidationHelper.require(n % 4 in (0, 1), f"n must be 0 or 1 (mod 4), got n={n}")
    ValidationHelper.require(k % 4 == 3 and 3 <= k < n, f"need k = 3 (mod 4) with 3 <= k < n, got n={n}, k={k}")
    base = build_h3(n)
    if k == 3:
        return base
    return stack_diagonals(base, k, provenance=Route.LADDER_3_STACKED.value)
