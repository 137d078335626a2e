from __future__ import annotations

import pytest

from models.combinatorial_map import CombinatorialMap, EmbeddingError, darts_from_edge_rotations, twin


def _triangle() -> CombinatorialMap:
    # edges 0 = (1, 2), 1 = (2, 3), 2 = (1, 3)
    return CombinatorialMap(rotations={1: (0, 4), 2: (1, 2), 3: (3, 5)}, outer=0)


def test_twin_pairs_darts() -> None:
    assert twin(4) == 5
    assert twin(5) == 4


def test_triangle_has_two_faces() -> None:
    m = _triangle()

    walks = m.face_walks

    assert len(walks) == 2
    assert walks[0].darts == (0, 2, 5)
    assert walks[0].corners == (1, 2, 3)
    assert walks[1].corners == (2, 1, 3)
    assert m.is_planar()
    assert m.outer_face == 0


def test_path_has_one_face_visiting_middle_twice() -> None:
    m = CombinatorialMap(rotations={1: (0,), 2: (1, 2), 3: (3,)}, outer=0)

    (walk,) = m.face_walks

    assert walk.corners == (1, 2, 3, 2)
    assert walk.occurrences(2) == (1, 3)
    assert walk.size == 3
    assert walk.length == 4


def test_single_vertex_has_one_empty_face() -> None:
    m = CombinatorialMap(rotations={7: ()})

    (walk,) = m.face_walks

    assert walk.corners == (7,)
    assert walk.darts == ()


def test_missing_twin_is_rejected() -> None:
    with pytest.raises(EmbeddingError):
        CombinatorialMap(rotations={1: (0,), 2: ()}, outer=0)


def test_repeated_dart_is_rejected() -> None:
    with pytest.raises(EmbeddingError):
        CombinatorialMap(rotations={1: (0, 1), 2: (1,)}, outer=0)


def test_nonplanar_rotation_system_is_rejected() -> None:
    # K4 with every rotation in increasing neighbour order is a torus embedding
    ends = {0: (1, 2), 1: (1, 3), 2: (1, 4), 3: (2, 3), 4: (2, 4), 5: (3, 4)}
    darts = darts_from_edge_rotations({1: [0, 1, 2], 2: [0, 3, 4], 3: [1, 3, 5], 4: [2, 4, 5]}, ends)
    m = CombinatorialMap(rotations=darts, outer=0)

    assert not m.is_planar()
    with pytest.raises(EmbeddingError):
        m.face_walks


def test_disconnected_map_is_rejected() -> None:
    m = CombinatorialMap(rotations={1: (0,), 2: (1,), 3: ()}, outer=0)

    with pytest.raises(EmbeddingError):
        m.face_walks


def test_contract_keeps_smaller_vertex_and_euler_characteristic() -> None:
    m = _triangle()

    contracted = m.contract(0)

    assert contracted.vertices == frozenset({1, 3})
    assert set(contracted.edges) == {1, 2}
    assert len(contracted.face_walks) == 2


def test_contract_rejects_loops() -> None:
    m = CombinatorialMap(rotations={1: (0, 1)}, outer=0)

    with pytest.raises(EmbeddingError):
        m.contract(0)


def test_insert_edge_splits_face() -> None:
    m = CombinatorialMap(rotations={1: (0,), 2: (1, 2), 3: (3,)}, outer=0)
    (walk,) = m.face_walks

    extended, edge = m.insert_edge(walk, 0, 2)

    assert edge == 2
    assert extended.edges[edge] == (1, 3)
    assert len(extended.face_walks) == 2


def test_delete_reanchors_outer_dart() -> None:
    m = _triangle()

    smaller = m.delete([0])

    assert smaller.outer is not None
    assert smaller.outer not in (0, 1)
    assert len(smaller.face_walks) == 1


def test_edge_rotations_round_trip() -> None:
    m = _triangle()
    ends = m.edges

    assert darts_from_edge_rotations(m.edge_rotations(), ends) == dict(m.rotations)
