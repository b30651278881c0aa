import pytest

from constructions.ladder import (
    CurrentAssignment,
    LadderFamily,
    Vertex,
    array_to_currents,
    build_h3,
    build_k3mod4,
    check_kcl,
    currents_to_array,
    cylinder_currents,
    ladder_graph,
    mobius_currents,
)
from core.errors import ConsistencyError, ParameterError, PreconditionError
from core.models import HeffterArray
from core.verifier import is_cyclically_tridiagonal, is_strippable, verify
from tests.conftest import golden

r = lambda i: Vertex("r", i)  # noqa: E731
c = lambda i: Vertex("c", i)  # noqa: E731


def test_mobius_table_entries():
    ca = mobius_currents(3)
    assert ca.rungs == 13
    assert ca.current(r(1), c(2)) == 26
    assert ca.current(c(13), r(1)) == 14
    assert ca.current(r(1), c(13)) == -14


def test_cylinder_table_entries():
    ca = cylinder_currents(3)
    assert ca.rungs == 12
    assert ca.current(r(1), c(1)) == 12
    assert ca.current(c(12), r(1)) == 36


def test_unknown_edge():
    with pytest.raises(KeyError):
        mobius_currents(1).current(r(1), c(3))


@pytest.mark.parametrize("m", range(1, 9))
@pytest.mark.parametrize("builder,rungs", [(mobius_currents, lambda m: 4 * m + 1), (cylinder_currents, lambda m: 4 * m)])
def test_assignments_satisfy_kcl_and_bijection(builder, rungs, m):
    ca = builder(m)
    n = rungs(m)
    assert ca.rungs == n
    assert ca.support == list(range(1, 3 * n + 1))
    assert set(check_kcl(ca).values()) == {0}
    assert len(check_kcl(ca)) == 2 * n


def test_ladder_graph_carries_both_orientations():
    graph = ladder_graph(cylinder_currents(1))
    assert graph.number_of_nodes() == 8
    assert graph.number_of_edges() == 24
    assert graph[r(1)][c(1)]["current"] == -graph[c(1)][r(1)]["current"]


def test_currents_to_array_reproduces_worked_arrays():
    assert currents_to_array(mobius_currents(3)).grid == golden(13, 3).grid
    assert currents_to_array(cylinder_currents(3)).grid == golden(12, 3).grid
    assert currents_to_array(cylinder_currents(1)).grid == golden(4, 3).grid


def test_currents_to_array_rejects_non_regular_graph():
    ca = CurrentAssignment(rungs=2, family=LadderFamily.GENERAL, currents={(r(1), c(1)): 1, (c(2), r(1)): 2, (r(2), c(2)): 3})
    with pytest.raises(ConsistencyError):
        currents_to_array(ca)


def test_currents_to_array_rejects_same_side_arcs():
    ca = CurrentAssignment(rungs=1, family=LadderFamily.GENERAL, currents={(r(1), r(1)): 1})
    with pytest.raises(ConsistencyError):
        currents_to_array(ca)


@pytest.mark.parametrize("n,k", [(4, 3), (12, 3), (13, 3), (7, 4), (8, 6)])
def test_array_to_currents_round_trip(n, k):
    array = golden(n, k)
    ca = array_to_currents(array)
    assert len(ca.currents) == n * k
    assert set(check_kcl(ca).values()) == {0}
    assert currents_to_array(ca).grid == array.grid


def test_array_to_currents_infers_family(h_4_3, h_13_3, hs_7_4):
    assert array_to_currents(h_4_3).family is LadderFamily.CYLINDER
    assert array_to_currents(h_13_3).family is LadderFamily.MOBIUS
    assert array_to_currents(hs_7_4).family is LadderFamily.GENERAL


def test_array_to_currents_rejects_invalid_array(h_4_3):
    rows = h_4_3.rows_as_lists()
    rows[1][1] = -rows[1][1]
    with pytest.raises(PreconditionError):
        array_to_currents(HeffterArray.from_rows(rows, k=3))


def test_build_h3_matches_worked_arrays():
    assert build_h3(13).grid == golden(13, 3).grid
    assert build_h3(12).grid == golden(12, 3).grid
    assert build_h3(5).grid[0] == (-4, 10, None, None, -6)


@pytest.mark.parametrize("n", [n for n in range(4, 61) if n % 4 in (0, 1)])
def test_build_h3_properties(n):
    array = build_h3(n)
    assert verify(array).valid
    assert is_cyclically_tridiagonal(array)
    assert is_strippable(array).transversal.is_main_diagonal
    above = {array[i, (i + 1) % n] > 0 for i in range(n)}
    below = {array[(i + 1) % n, i] > 0 for i in range(n)}
    assert len(above) == len(below) == 1
    assert above != below


@pytest.mark.parametrize("n", [6, 7, 3])
def test_build_h3_rejects_bad_sides(n):
    with pytest.raises(ParameterError):
        build_h3(n)


@pytest.mark.parametrize("n,k", [(13, 7), (12, 11), (16, 15), (21, 19), (8, 7)])
def test_build_k3mod4(n, k):
    array = build_k3mod4(n, k)
    assert verify(array).valid
    assert array.provenance == "ladder-3-stacked"


def test_build_k3mod4_with_three_is_the_ladder_array():
    assert build_k3mod4(13, 3) == build_h3(13)


@pytest.mark.parametrize("n,k", [(14, 7), (13, 5), (12, 15), (12, 12)])
def test_build_k3mod4_rejects_bad_parameters(n, k):
    with pytest.raises(ParameterError):
        build_k3mod4(n, k)
