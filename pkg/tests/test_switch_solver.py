from __future__ import annotations

import pytest

from models.clustered_graph import ClusteredGraph, ClusterTree
from models.drawing import CircularOrder, ParityVector
from services.canonical_drawing import dfs_circle_order, initial_parity_vector
from services.switch_solver import (
    DimensionMismatchError,
    SwitchKind,
    UnknownSwitchError,
    allowed_switches,
    apply_switches,
    build_system,
    solve,
    solver_rank,
)

SQUARE = [(1, 2), (2, 3), (3, 4), (4, 1)]


def _system(groups):
    g = ClusteredGraph.build([1, 2, 3, 4], SQUARE, ClusterTree.flat(groups))
    v0 = initial_parity_vector(g, CircularOrder(sequence=(1, 3, 2, 4)))
    return g, v0, build_system(g, v0)


def _alternating():
    return _system({"A": [1, 3], "B": [2, 4]})


def test_allowed_switches_follow_tree_path() -> None:
    g = ClusteredGraph.build([1, 2, 3], [(1, 3), (1, 2)], ClusterTree.flat({"A": [1, 2], "B": [3]}))

    switches = allowed_switches(g)

    assert [switch.label for switch in switches] == ["e0@v2", "e0@A", "e0@B"]
    assert switches[0].kind is SwitchKind.edge_vertex
    assert switches[1].kind is SwitchKind.edge_cluster


def test_intra_cluster_edge_has_no_switches() -> None:
    g = ClusteredGraph.build([1, 2], [(1, 2)], ClusterTree.flat({"A": [1, 2]}))

    assert allowed_switches(g) == []


def test_square_system_shape() -> None:
    _, v0, system = _system({"A": [1, 2], "B": [3, 4]})

    assert system.equations == 2
    assert system.rhs.to_list() == [1, 0]
    assert v0.pairs == ((0, 2), (1, 3))


def test_split_cluster_order_cannot_be_repaired() -> None:
    # every allowed switch toggles only the pair (e1, e3)
    _, _, system = _system({"A": [1, 2], "B": [3, 4]})

    assert solve(system) is None
    assert solver_rank(system) == 1
    assert system.active_equations == 1


def test_solution_cancels_parity_vector() -> None:
    g, v0, system = _alternating()

    witness = solve(system)

    assert dfs_circle_order(g).sequence == (1, 3, 2, 4)
    assert witness is not None
    assert system.labels(witness) == ["e0@v3"]
    assert apply_switches(v0, witness, system).is_zero


def test_repeated_switch_cancels_out() -> None:
    _, v0, system = _alternating()

    assert apply_switches(v0, [0, 0], system) == v0


def test_unknown_switch_is_rejected() -> None:
    _, v0, system = _alternating()

    with pytest.raises(UnknownSwitchError):
        apply_switches(v0, [len(system.variables) + 5], system)


def test_dimension_mismatch_is_rejected() -> None:
    g, _, _ = _alternating()

    with pytest.raises(DimensionMismatchError):
        build_system(g, ParityVector.from_bits([(0, 2)], [1]))


def test_system_without_variables() -> None:
    _, _, system = _alternating()
    empty = type(system)(variables=(), rows=(), rhs=system.rhs)

    assert solve(empty) is None
    assert solver_rank(empty) == 0


def test_variable_order_must_be_a_permutation() -> None:
    _, _, system = _alternating()

    with pytest.raises(ValueError):
        solve(system, [0] * len(system.variables))


def test_any_variable_order_finds_a_solution() -> None:
    _, v0, system = _alternating()
    count = len(system.variables)

    for order in (list(range(count)), list(reversed(range(count)))):
        witness = solve(system, order)
        assert witness is not None
        assert apply_switches(v0, witness, system).is_zero
