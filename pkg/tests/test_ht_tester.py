from __future__ import annotations

import itertools
import logging

from models.clustered_graph import ClusteredGraph, ClusterTree
from models.schemas import CAVEAT, Method, Outcome, Tier
from services.cycles import generate_counterexample
from services.ht_tester import test_ht


def test_k4_two_clustered_is_c_planar(k4: ClusteredGraph) -> None:
    verdict = test_ht(k4)

    assert verdict.outcome is Outcome.c_planar
    assert verdict.tier is Tier.two_clustered
    assert verdict.method is Method.hanani_tutte
    assert verdict.witness is not None
    assert verdict.diagnostics.vertices == 4
    assert verdict.diagnostics.edges == 6
    assert verdict.diagnostics.independent_pairs == 3
    assert verdict.diagnostics.edge_vertex_bound == 24


def test_k4_with_pendants_is_not_c_planar(k4_pendants: ClusteredGraph) -> None:
    verdict = test_ht(k4_pendants)

    assert verdict.outcome is Outcome.not_c_planar
    assert verdict.tier is Tier.two_clustered
    assert verdict.witness is None
    assert verdict.diagnostics.reason is not None


def test_square_with_nontrivial_witness() -> None:
    g = ClusteredGraph.build([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)], ClusterTree.flat({"A": [1, 3], "B": [2, 4]}))

    verdict = test_ht(g)

    assert verdict.outcome is Outcome.c_planar
    assert verdict.witness == ["e0@v3"]
    assert verdict.diagnostics.equations == 2


def test_dense_graph_fails_edge_bound() -> None:
    edges = list(itertools.combinations(range(1, 8), 2))
    g = ClusteredGraph.build(range(1, 8), edges, ClusterTree.flat({"A": [1, 2, 3], "B": [4, 5, 6, 7]}))

    verdict = test_ht(g)

    assert verdict.outcome is Outcome.not_c_planar
    assert "edge bound" in (verdict.diagnostics.reason or "")
    assert verdict.diagnostics.equations is None


def test_counterexample_is_inconclusive() -> None:
    g = generate_counterexample(3, 3).to_clustered_graph(name="k3-r3")

    verdict = test_ht(g)

    assert verdict.outcome is Outcome.even_drawing_exists_inconclusive
    assert verdict.tier is Tier.none
    assert verdict.caveat == CAVEAT
    assert verdict.diagnostics.independent_pairs == 27


def test_c_connected_tier() -> None:
    g = ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 3), (1, 3)], ClusterTree.flat({"A": [1], "B": [2], "C": [3]}))

    verdict = test_ht(g)

    assert verdict.outcome is Outcome.c_planar
    assert verdict.tier is Tier.c_connected


def test_parallel_edges_and_loops_are_simplified() -> None:
    g = ClusteredGraph.build([1, 2, 3], [(1, 2), (2, 1), (2, 2), (2, 3)], ClusterTree.flat({"A": [1, 2], "B": [3]}))

    verdict = test_ht(g)

    assert verdict.outcome is Outcome.c_planar
    assert verdict.diagnostics.edges == 2


def test_verdict_is_logged(k4: ClusteredGraph, caplog) -> None:
    with caplog.at_level(logging.INFO, logger="services.ht_tester"):
        test_ht(k4)

    records = [record for record in caplog.records if record.getMessage() == "Hanani-Tutte verdict"]
    assert records
    assert records[0].outcome == "c_planar"
    assert records[0].instance == "k4"
