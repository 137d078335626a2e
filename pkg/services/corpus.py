"""Exhaustive and seeded random instance corpora."""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from models.clustered_graph import ROOT, ClusteredGraph, ClusterTree, Node
from models.combinatorial_map import CombinatorialMap, EmbeddingError
from models.cycle import CyclicClusteredCycle
from services.embedding import planar_map

logger = logging.getLogger(__name__)

ATLAS_MAX_VERTICES = 7
MAX_ATTEMPTS = 1000


def _coloured(graph: nx.Graph, side_a: Sequence[int]) -> nx.Graph:
    coloured = nx.Graph(graph)
    chosen = set(side_a)
    for node in coloured.nodes:
        coloured.nodes[node]["cluster"] = "A" if node in chosen else "B"
    return coloured


def _swapped(graph: nx.Graph) -> nx.Graph:
    swapped = graph.copy()
    for node in swapped.nodes:
        swapped.nodes[node]["cluster"] = "B" if graph.nodes[node]["cluster"] == "A" else "A"
    return swapped


def _same_cluster(a: dict, b: dict) -> bool:
    return a["cluster"] == b["cluster"]


def two_clustered_corpus(max_vertices: int) -> Iterator[ClusteredGraph]:
    """Connected graphs from the graph atlas, each with every two-cluster split, up to isomorphism.

    Swapping the two cluster names counts as the same instance.
    """
    if max_vertices > ATLAS_MAX_VERTICES:
        raise ValueError(f"The graph atlas stops at {ATLAS_MAX_VERTICES} vertices, got {max_vertices}.")
    emitted = 0
    for index, atlas_graph in enumerate(nx.graph_atlas_g()):
        n = atlas_graph.number_of_nodes()
        if n < 2 or n > max_vertices or not nx.is_connected(atlas_graph):
            continue
        graph = nx.relabel_nodes(atlas_graph, {node: node + 1 for node in atlas_graph.nodes})
        vertices = sorted(graph.nodes)
        buckets: Dict[str, List[nx.Graph]] = {}
        # vertex 1 always sits in A; the complement split is the swapped instance
        rest = vertices[1:]
        for size in range(0, len(rest)):
            for extra in itertools.combinations(rest, size):
                side_a = (vertices[0],) + extra
                coloured = _coloured(graph, side_a)
                swapped = _swapped(coloured)
                key = min(
                    nx.weisfeiler_lehman_graph_hash(coloured, node_attr="cluster"),
                    nx.weisfeiler_lehman_graph_hash(swapped, node_attr="cluster"),
                )
                bucket = buckets.setdefault(key, [])
                if any(
                    nx.is_isomorphic(seen, coloured, node_match=_same_cluster)
                    or nx.is_isomorphic(seen, swapped, node_match=_same_cluster)
                    for seen in bucket
                ):
                    continue
                bucket.append(coloured)
                side_b = [vertex for vertex in vertices if vertex not in side_a]
                tree = ClusterTree.flat({"A": side_a, "B": side_b})
                emitted += 1
                yield ClusteredGraph.build(
                    vertices,
                    sorted(tuple(sorted(edge)) for edge in graph.edges),
                    tree,
                    name=f"atlas{index}-" + "".join(str(vertex) for vertex in side_a),
                )
    logger.info("Two-clustered corpus exhausted", extra={"instance": f"n<={max_vertices}", "reason": f"{emitted} instances"})


def _random_tree_edges(rng: np.random.Generator, vertices: Sequence[int]) -> List[Tuple[int, int]]:
    return [(int(vertices[int(rng.integers(0, position))]), vertices[position]) for position in range(1, len(vertices))]


def _random_extra_edges(
    rng: np.random.Generator, vertices: Sequence[int], present: set[frozenset[int]], count: int
) -> List[Tuple[int, int]]:
    missing = [pair for pair in itertools.combinations(vertices, 2) if frozenset(pair) not in present]
    if count <= 0 or not missing:
        return []
    chosen = rng.choice(len(missing), size=min(count, len(missing)), replace=False)
    return [missing[int(index)] for index in sorted(chosen)]


def random_two_clustered(rng: np.random.Generator, n: int, m: int) -> ClusteredGraph:
    """A connected simple graph with ``m`` edges (clamped to [n-1, n(n-1)/2]) split into two non-empty clusters."""
    if n < 2:
        raise ValueError("A two-clustered instance needs at least two vertices.")
    vertices = list(range(1, n + 1))
    tree_edges = _random_tree_edges(rng, vertices)
    present = {frozenset(edge) for edge in tree_edges}
    edges = tree_edges + _random_extra_edges(rng, vertices, present, m - len(tree_edges))
    side = rng.integers(0, 2, size=n)
    side[int(rng.integers(0, n))] = 0
    side[int(rng.integers(0, n))] = 1
    if side.min() == side.max():
        side[0] = 1 - side[0]
    groups = {
        "A": [vertex for vertex, flag in zip(vertices, side) if flag == 0],
        "B": [vertex for vertex, flag in zip(vertices, side) if flag == 1],
    }
    return ClusteredGraph.build(vertices, edges, ClusterTree.flat(groups), name=f"random-two-{n}-{m}")


def random_cyclic_cycle(rng: np.random.Generator, n: int, k: int) -> CyclicClusteredCycle:
    """A cycle whose consecutive cluster indices differ by 0 or +-1 modulo k."""
    for _ in range(MAX_ATTEMPTS):
        values = [int(rng.integers(1, k + 1))]
        for _ in range(n - 1):
            step = int(rng.integers(-1, 2))
            values.append((values[-1] - 1 + step) % k + 1)
        if (values[0] - values[-1]) % k in (0, 1, k - 1):
            return CyclicClusteredCycle(k=k, phi=tuple(values))
    raise RuntimeError(f"No closed cycle found for n={n}, k={k} after {MAX_ATTEMPTS} attempts.")


def random_clustered_graph(rng: np.random.Generator, n: int, m: int, clusters: int) -> ClusteredGraph:
    """A multigraph without loops and a random, possibly nested, cluster tree."""
    names = [f"C{index}" for index in range(1, clusters + 1)]
    children: Dict[str, List[Node]] = {ROOT: []}
    for position, name in enumerate(names):
        parent = ROOT if position == 0 else ([ROOT] + names[:position])[int(rng.integers(0, position + 1))]
        children.setdefault(parent, []).append(name)
        children.setdefault(name, [])
    vertices = list(range(1, n + 1))
    homes = [ROOT] + names
    for vertex in vertices:
        children[homes[int(rng.integers(0, len(homes)))]].append(vertex)
    tree = ClusterTree(root=ROOT, children={name: tuple(kids) for name, kids in children.items()}).without_leaves(())
    edges: List[Tuple[int, int]] = []
    if n >= 2:
        for _ in range(m):
            u, v = rng.choice(n, size=2, replace=False)
            edges.append((vertices[int(u)], vertices[int(v)]))
    return ClusteredGraph.build(vertices, edges, tree, name=f"random-{n}-{m}-{clusters}")


def _stacked_triangulation(rng: np.random.Generator, n: int) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    if n <= 3:
        graph.add_edges_from(zip(range(1, n), range(2, n + 1)))
        if n == 3:
            graph.add_edge(1, 3)
        return graph
    graph.add_edges_from([(1, 2), (2, 3), (1, 3)])
    triangles = [(1, 2, 3), (1, 2, 3)]
    for vertex in range(4, n + 1):
        a, b, c = triangles.pop(int(rng.integers(0, len(triangles))))
        graph.add_edges_from([(vertex, a), (vertex, b), (vertex, c)])
        triangles.extend([(a, b, vertex), (b, c, vertex), (a, c, vertex)])
    return graph


def _embedded(graph: nx.Graph, tree: ClusterTree, name: str) -> Tuple[ClusteredGraph, CombinatorialMap]:
    g = ClusteredGraph.build(sorted(graph.nodes), sorted(tuple(sorted(edge)) for edge in graph.edges), tree, name=name)
    return g, planar_map(g)


def _max_face_size(m: CombinatorialMap) -> int:
    return max(face.size for face in m.face_walks)


def random_embedded_instance(
    rng: np.random.Generator,
    n: int,
    clusters: int,
    removals: Optional[int] = None,
    max_face_size: int = 5,
) -> Tuple[ClusteredGraph, CombinatorialMap]:
    """A connected plane graph, all faces incident to at most ``max_face_size`` vertices, with random flat clusters.

    Starts from a stacked triangulation and deletes edges while the face bound and connectivity hold.
    """
    vertices = list(range(1, n + 1))
    labels = rng.integers(0, clusters, size=n)
    groups: Dict[str, List[int]] = {}
    for vertex, label in zip(vertices, labels):
        groups.setdefault(f"C{int(label) + 1}", []).append(vertex)
    tree = ClusterTree.flat(dict(sorted(groups.items())))
    name = f"embedded-{n}-{clusters}"

    graph = _stacked_triangulation(rng, n)
    instance = _embedded(graph, tree, name)
    budget = int(rng.integers(0, graph.number_of_edges() + 1)) if removals is None else removals
    order = [tuple(edge) for edge in graph.edges]
    for position in rng.permutation(len(order)):
        if budget <= 0:
            break
        u, v = order[int(position)]
        trial = graph.copy()
        trial.remove_edge(u, v)
        if not nx.is_connected(trial):
            continue
        try:
            candidate = _embedded(trial, tree, name)
        except EmbeddingError:
            continue
        if _max_face_size(candidate[1]) > max_face_size:
            continue
        graph, instance = trial, candidate
        budget -= 1
    return instance
