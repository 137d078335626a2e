"""Validation, classification and preprocessing of clustered graphs."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterable, List, Tuple

import networkx as nx
from networkx.utils import UnionFind

from models.clustered_graph import ClusteredGraph, Edge, Node
from models.schemas import Classification, EdgeBoundVerdict, GTShape, ValidationReport

logger = logging.getLogger(__name__)


class InvalidInstanceError(ValueError):
    """The instance violates a structural invariant or an operation's precondition."""


def validate(g: ClusteredGraph) -> ValidationReport:
    problems: List[str] = []
    tree = g.tree

    reachable = {node for node, _ in tree.walk()}
    for name in tree.children:
        if name not in reachable:
            problems.append(f"unreachable cluster {name!r}")

    occurrences: Counter[Node] = Counter()
    for node in reachable:
        occurrences.update(tree.children_of(node))
    for node, count in sorted(occurrences.items(), key=lambda item: str(item[0])):
        if node == tree.root:
            problems.append(f"cyclic tree: the root {node!r} appears as a child")
        elif count > 1 and isinstance(node, int):
            problems.append(f"duplicate leaf {node}")
        elif count > 1:
            problems.append(f"cyclic tree: cluster {node!r} has {count} parents")

    for node in sorted((n for n in reachable if isinstance(n, str)), key=str):
        if node != tree.root and not tree.children_of(node):
            problems.append(f"empty cluster {node!r}")

    leaves = {node for node in reachable if isinstance(node, int)}
    for leaf in sorted(leaves - g.vertices):
        problems.append(f"orphan leaf {leaf} is not a vertex")
    for vertex in sorted(g.vertices - leaves):
        problems.append(f"missing vertex {vertex} is not a leaf of the cluster tree")

    seen_ids: set[int] = set()
    for edge in g.edges:
        if edge.id in seen_ids:
            problems.append(f"duplicate edge id {edge.id}")
        seen_ids.add(edge.id)
        for end in edge.ends:
            if end not in g.vertices:
                problems.append(f"dangling endpoint {end} on edge {edge.id}")

    return ValidationReport(problems=problems)


def ensure_valid(g: ClusteredGraph) -> None:
    report = validate(g)
    if not report.valid:
        raise InvalidInstanceError("Invalid clustered graph: " + "; ".join(report.problems))


def require_flat(g: ClusteredGraph, operation: str) -> None:
    ensure_valid(g)
    if not g.tree.is_flat:
        raise InvalidInstanceError(f"{operation} requires a flat clustered graph.")


def as_multigraph(g: ClusteredGraph, vertices: Iterable[int] | None = None) -> nx.MultiGraph:
    """The underlying multigraph, optionally induced on ``vertices``."""
    keep = g.vertices if vertices is None else frozenset(vertices)
    graph = nx.MultiGraph()
    graph.add_nodes_from(sorted(keep))
    for edge in g.sorted_edges:
        if edge.u in keep and edge.v in keep:
            graph.add_edge(edge.u, edge.v, key=edge.id)
    return graph


def cluster_adjacency(g: ClusteredGraph) -> nx.Graph:
    """G_T: the children of the root, adjacent when some edge joins them."""
    graph = nx.Graph()
    graph.add_nodes_from(g.tree.top_level)
    for edge in g.edges:
        a = g.cluster_of(edge.u)
        b = g.cluster_of(edge.v)
        if a != b:
            graph.add_edge(a, b)
    return graph


def gt_shape(graph: nx.Graph) -> GTShape:
    if graph.number_of_nodes() == 0:
        return GTShape.path
    if not nx.is_connected(graph):
        return GTShape.other
    degrees = [degree for _, degree in graph.degree()]
    if nx.is_tree(graph):
        return GTShape.path if max(degrees, default=0) <= 2 else GTShape.tree
    if graph.number_of_nodes() >= 3 and all(degree == 2 for degree in degrees):
        return GTShape.cycle
    return GTShape.other


def is_c_connected(g: ClusteredGraph) -> bool:
    for cluster in g.tree.clusters:
        members = g.tree.leaves_under(cluster)
        if not members:
            continue
        if not nx.is_connected(as_multigraph(g, members)):
            return False
    return True


def classify(g: ClusteredGraph) -> Classification:
    ensure_valid(g)
    tree = g.tree
    flat = tree.is_flat
    adjacency = cluster_adjacency(g)
    shape = gt_shape(adjacency)
    if flat:
        cluster_count = len(tree.top_level)
    else:
        cluster_count = len(tree.clusters) - 1
    two_clustered = flat and len(tree.top_level) == 2
    cyclic = flat and cluster_count >= 3 and shape is GTShape.cycle
    return Classification(
        flat=flat,
        two_clustered=two_clustered,
        c_connected=is_c_connected(g),
        cyclic_clustered=cyclic,
        gt_shape=shape,
        cluster_count=cluster_count,
    )


def passes_edge_bound(vertex_count: int, edge_count: int) -> bool:
    return edge_count == 0 or edge_count < 3 * vertex_count


def simplify(g: ClusteredGraph) -> Tuple[ClusteredGraph, EdgeBoundVerdict]:
    """Drop loops and parallel edges (the lowest id of each class survives)."""
    ensure_valid(g)
    kept: Dict[frozenset[int], Edge] = {}
    for edge in g.sorted_edges:
        if edge.is_loop:
            continue
        kept.setdefault(frozenset(edge.ends), edge)
    simple = g.with_edges(sorted(kept.values(), key=lambda edge: edge.id))
    verdict = (
        EdgeBoundVerdict.passed
        if passes_edge_bound(len(simple.vertices), len(simple.edges))
        else EdgeBoundVerdict.failed
    )
    logger.debug(
        "Simplified instance",
        extra={
            "instance": g.name,
            "vertex_count": len(simple.vertices),
            "edge_count": len(simple.edges),
            "reason": f"dropped {len(g.edges) - len(simple.edges)} edges",
        },
    )
    return simple, verdict


def contract_intra_cluster_edges(g: ClusteredGraph) -> ClusteredGraph:
    """Contract edges inside clusters, processing ids in increasing order.

    Each merged class is represented by its smallest vertex. An intra-cluster
    edge whose ends were already merged survives as a loop.
    """
    require_flat(g, "Intra-cluster contraction")
    union = UnionFind(g.sorted_vertices)
    survivors: List[Edge] = []
    for edge in g.sorted_edges:
        same_cluster = g.cluster_of(edge.u) == g.cluster_of(edge.v)
        if same_cluster and union[edge.u] != union[edge.v]:
            union.union(edge.u, edge.v)
            continue
        survivors.append(edge)

    representative: Dict[int, int] = {}
    for group in union.to_sets():
        smallest = min(group)
        for vertex in group:
            representative[vertex] = smallest

    removed = sorted(vertex for vertex, rep in representative.items() if vertex != rep)
    if not removed:
        return g
    edges = [Edge(edge.id, representative[edge.u], representative[edge.v]) for edge in survivors]
    logger.debug(
        "Contracted intra-cluster edges",
        extra={"instance": g.name, "vertex_count": len(g.vertices) - len(removed), "edge_count": len(edges)},
    )
    return ClusteredGraph(
        vertices=frozenset(representative[vertex] for vertex in g.vertices),
        edges=tuple(edges),
        tree=g.tree.without_leaves(removed),
        name=g.name,
    )
