from __future__ import annotations

import pytest

from models.clustered_graph import ClusteredGraph, ClusterTree
from models.combinatorial_map import CombinatorialMap, EmbeddingError
from services.embedding import (
    NotCPlanar,
    can_embed_noncrossing,
    chord_choices,
    chords_cross,
    faces,
    map_from_graph,
    merge_vertices,
    planar_map,
    preprocess_embedded,
    saturating_pairs,
)
from services.structure import InvalidInstanceError
from tests.builders import Embedded, embedded

TRIANGLE_WITH_SPUR = [(1, 2), (2, 3), (1, 3), (1, 4)]


def _spur_inside_loop(outer) -> Embedded:
    # contracting the triangle turns edge 2 into a loop around vertex 4 or away from it
    return embedded(
        TRIANGLE_WITH_SPUR,
        {1: [0, 3, 2], 2: [0, 1], 3: [1, 2], 4: [3]},
        {"A": [1, 2, 3], "B": [4]},
        outer=outer,
    )


def test_faces_of_alternating_square(alternating_square: Embedded) -> None:
    _, m = alternating_square

    walks = faces(m)

    assert [walk.corners for walk in walks] == [(1, 2, 3, 4), (2, 1, 4, 3)]
    assert [walk.darts for walk in walks] == [(0, 2, 4, 6), (1, 7, 5, 3)]


def test_map_from_graph_rejects_unknown_edge() -> None:
    g = ClusteredGraph.build([1, 2], [(1, 2)], ClusterTree.flat({"A": [1, 2]}))

    with pytest.raises(EmbeddingError):
        map_from_graph(g, {1: [0], 2: [5]})


def test_map_from_graph_rejects_bad_outer_dart() -> None:
    g = ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 3)], ClusterTree.flat({"A": [1, 2, 3]}))

    with pytest.raises(EmbeddingError):
        map_from_graph(g, {1: [0], 2: [0, 1], 3: [1]}, outer=(3, 0))


def test_planar_map_embeds_k4() -> None:
    g = ClusteredGraph.build([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], ClusterTree.flat({"A": [1, 2, 3, 4]}))

    m = planar_map(g)

    assert len(faces(m)) == 4
    assert all(walk.length == 3 for walk in faces(m))


def test_planar_map_rejects_parallel_edges() -> None:
    g = ClusteredGraph.build([1, 2], [(1, 2), (2, 1)], ClusterTree.flat({"A": [1, 2]}))

    with pytest.raises(InvalidInstanceError):
        planar_map(g)


def test_preprocess_contracts_intra_cluster_edges() -> None:
    g, m = embedded(
        [(1, 2), (2, 3), (1, 3)],
        {1: [0, 2], 2: [0, 1], 3: [1, 2]},
        {"A": [1, 2], "B": [3]},
    )

    result = preprocess_embedded(m, g.tree)

    assert isinstance(result, CombinatorialMap)
    assert result.vertices == frozenset({1, 3})
    assert len(result.edges) == 2
    assert len(faces(result)) == 2


def test_loop_around_foreign_vertex_is_rejected() -> None:
    g, m = _spur_inside_loop(outer=(1, 0))

    result = preprocess_embedded(m, g.tree)

    assert isinstance(result, NotCPlanar)
    assert "encloses vertex 4" in result.reason


def test_empty_loop_is_removed() -> None:
    g, m = _spur_inside_loop(outer=(2, 0))

    result = preprocess_embedded(m, g.tree)

    assert isinstance(result, CombinatorialMap)
    assert result.vertices == frozenset({1, 4})
    assert set(result.edges) == {3}


def test_preprocess_rejects_nested_clusters() -> None:
    tree = ClusterTree(root="root", children={"root": ("Outer",), "Outer": ("Inner", 3), "Inner": (1, 2)})
    g = ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 3)], tree)
    m = map_from_graph(g, {1: [0], 2: [0, 1], 3: [1]})

    with pytest.raises(InvalidInstanceError):
        preprocess_embedded(m, tree)


def test_preprocess_rejects_tree_leaf_without_vertex(alternating_square: Embedded) -> None:
    _, m = alternating_square
    tree = ClusterTree.flat({"A": [1, 3, 99], "B": [2, 4]})

    with pytest.raises(InvalidInstanceError, match="orphan leaf 99"):
        preprocess_embedded(m, tree)


def test_saturating_pairs_and_chords(alternating_square: Embedded) -> None:
    g, m = alternating_square
    walk = faces(m)[0]

    assert saturating_pairs(walk, g.tree) == [(1, 3), (2, 4)]
    assert chord_choices(walk, (1, 3)) == [(0, 2)]
    assert chords_cross((0, 2), (1, 3))
    assert not chords_cross((0, 2), (2, 3))
    assert not can_embed_noncrossing(walk, (1, 3), (2, 4))


def test_merge_vertices_keeps_edge_count(alternating_square: Embedded) -> None:
    _, m = alternating_square

    merged = merge_vertices(m, 1, 3)

    assert merged.vertices == frozenset({1, 2, 4})
    assert len(merged.edges) == 4
    assert len(faces(merged)) == 3


def test_merge_vertices_rejects_adjacent_pair(alternating_square: Embedded) -> None:
    _, m = alternating_square

    with pytest.raises(ValueError):
        merge_vertices(m, 1, 2)
