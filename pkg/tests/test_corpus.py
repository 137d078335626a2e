from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from models.clustered_graph import ClusteredGraph
from services.corpus import (
    random_clustered_graph,
    random_cyclic_cycle,
    random_embedded_instance,
    random_two_clustered,
    two_clustered_corpus,
)
from services.structure import classify, validate


def _nx(g: ClusteredGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(edge.ends for edge in g.edges)
    return graph


def test_small_corpus_is_reduced_up_to_isomorphism() -> None:
    corpus = list(two_clustered_corpus(3))

    assert len(corpus) == 4
    assert all(classify(g).two_clustered for g in corpus)
    assert len({g.name for g in corpus}) == 4


def test_corpus_refuses_sizes_beyond_atlas() -> None:
    with pytest.raises(ValueError):
        list(two_clustered_corpus(8))


def test_random_two_clustered_instances() -> None:
    rng = np.random.default_rng(2)
    for n in range(2, 9):
        g = random_two_clustered(rng, n, 2 * n)

        assert validate(g).valid
        assert classify(g).two_clustered
        assert nx.is_connected(_nx(g))
        assert all(len(g.tree.leaves_under(name)) > 0 for name in ("A", "B"))


def test_random_two_clustered_needs_two_vertices() -> None:
    with pytest.raises(ValueError):
        random_two_clustered(np.random.default_rng(0), 1, 0)


def test_random_cyclic_cycles_close_up() -> None:
    rng = np.random.default_rng(4)

    cycles = [random_cyclic_cycle(rng, 10, 4) for _ in range(20)]

    assert all(c.n == 10 and c.k == 4 for c in cycles)


def test_random_clustered_graph_is_valid() -> None:
    rng = np.random.default_rng(8)
    for _ in range(20):
        g = random_clustered_graph(rng, 6, 8, 3)

        assert validate(g).valid
        assert not any(edge.is_loop for edge in g.edges)


def test_random_embedded_instances_have_small_faces() -> None:
    rng = np.random.default_rng(6)
    for n in range(3, 9):
        g, m = random_embedded_instance(rng, n, clusters=2)

        assert m.vertices == g.vertices
        assert max(face.size for face in m.face_walks) <= 5
        assert nx.is_connected(_nx(g))
