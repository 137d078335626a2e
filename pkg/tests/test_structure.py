from __future__ import annotations

import pytest

from models.clustered_graph import ClusteredGraph, ClusterTree, Edge
from models.schemas import EdgeBoundVerdict, GTShape
from services.structure import (
    InvalidInstanceError,
    classify,
    contract_intra_cluster_edges,
    require_flat,
    simplify,
    validate,
)


def _triangle(groups, loose=()) -> ClusteredGraph:
    return ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 3), (1, 3)], ClusterTree.flat(groups, loose=loose))


def test_validate_accepts_flat_instance(k4: ClusteredGraph) -> None:
    assert validate(k4).valid


def test_validate_reports_orphan_leaf_and_missing_vertex() -> None:
    tree = ClusterTree.flat({"A": [1, 9]})
    g = ClusteredGraph.build([1, 2], [(1, 2)], tree)

    problems = validate(g).problems

    assert "orphan leaf 9 is not a vertex" in problems
    assert "missing vertex 2 is not a leaf of the cluster tree" in problems


def test_validate_reports_duplicate_leaf_and_empty_cluster() -> None:
    tree = ClusterTree(root="root", children={"root": ("A", "B", "E"), "A": (1, 2), "B": (2,), "E": ()})
    g = ClusteredGraph.build([1, 2], [], tree)

    problems = validate(g).problems

    assert "duplicate leaf 2" in problems
    assert "empty cluster 'E'" in problems


def test_validate_reports_dangling_endpoint_and_duplicate_edge_id() -> None:
    tree = ClusterTree.flat({"A": [1, 2]})
    g = ClusteredGraph(vertices=frozenset({1, 2}), edges=(Edge(0, 1, 2), Edge(0, 2, 7)), tree=tree)

    problems = validate(g).problems

    assert "duplicate edge id 0" in problems
    assert "dangling endpoint 7 on edge 0" in problems


def test_validate_reports_cyclic_tree() -> None:
    tree = ClusterTree(root="root", children={"root": ("A",), "A": (1, "B"), "B": ("A", 2)})
    g = ClusteredGraph.build([1, 2], [], tree)

    problems = validate(g).problems

    assert any(problem.startswith("cyclic tree") for problem in problems)


def test_classify_two_clustered(k4: ClusteredGraph) -> None:
    classification = classify(k4)

    assert classification.flat
    assert classification.two_clustered
    assert classification.c_connected
    assert not classification.cyclic_clustered
    assert classification.gt_shape is GTShape.path
    assert classification.cluster_count == 2


def test_classify_cyclic_clustered_triangle() -> None:
    classification = classify(_triangle({"A": [1], "B": [2], "C": [3]}))

    assert classification.cyclic_clustered
    assert classification.gt_shape is GTShape.cycle
    assert not classification.two_clustered


def test_classify_nested_tree_is_not_flat() -> None:
    tree = ClusterTree(root="root", children={"root": ("Outer",), "Outer": ("Inner", 3), "Inner": (1, 2)})
    g = ClusteredGraph.build([1, 2, 3], [(1, 3)], tree)

    classification = classify(g)

    assert not classification.flat
    assert not classification.two_clustered
    assert not classification.c_connected
    assert classification.cluster_count == 2


def test_require_flat_rejects_nested_tree() -> None:
    tree = ClusterTree(root="root", children={"root": ("Outer",), "Outer": ("Inner", 3), "Inner": (1, 2)})
    g = ClusteredGraph.build([1, 2, 3], [], tree)

    with pytest.raises(InvalidInstanceError):
        require_flat(g, "Testing")


def test_simplify_drops_loops_and_keeps_lowest_parallel_id() -> None:
    tree = ClusterTree.flat({"A": [1, 2]})
    g = ClusteredGraph.build([1, 2], [(1, 1), (2, 1), (1, 2)], tree)

    simple, verdict = simplify(g)

    assert [edge.id for edge in simple.edges] == [1]
    assert verdict is EdgeBoundVerdict.passed


def _complete(n: int) -> ClusteredGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return ClusteredGraph.build(range(1, n + 1), edges, ClusterTree.flat({"A": list(range(1, n + 1))}))


def test_simplify_edge_bound_is_strict() -> None:
    assert simplify(_complete(6))[1] is EdgeBoundVerdict.passed
    # K7: 21 edges against 3 * 7
    assert simplify(_complete(7))[1] is EdgeBoundVerdict.failed


def test_contract_path_inside_cluster_leaves_single_vertex() -> None:
    g = ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 3)], ClusterTree.flat({"A": [1, 2, 3]}))

    contracted = contract_intra_cluster_edges(g)

    assert contracted.vertices == frozenset({1})
    assert contracted.edges == ()
    assert contracted.tree.leaves_under("A") == (1,)


def test_contract_triangle_inside_cluster_leaves_loop() -> None:
    contracted = contract_intra_cluster_edges(_triangle({"A": [1, 2, 3]}))

    assert contracted.vertices == frozenset({1})
    assert contracted.edges == (Edge(2, 1, 1),)


def test_contract_keeps_inter_cluster_edges() -> None:
    g = _triangle({"A": [1, 2], "B": [3]})

    contracted = contract_intra_cluster_edges(g)

    assert contracted.vertices == frozenset({1, 3})
    assert sorted(edge.ends for edge in contracted.edges) == [(1, 3), (1, 3)]
