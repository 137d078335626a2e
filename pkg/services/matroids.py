"""Saturating-edge matroids and maximum common independent sets.

The ground set holds one element per (face, saturating pair). The first matroid is the
direct sum of the graphic matroids of the clusters; the second allows one element per face.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from models.clustered_graph import ClusterTree, Node
from models.combinatorial_map import CombinatorialMap
from services.embedding import cluster_members, cluster_of, faces, saturating_pairs

logger = logging.getLogger(__name__)

IndependenceOracle = Callable[[FrozenSet[int]], bool]


class MatroidOracleError(RuntimeError):
    """An augmentation produced a set that one of the oracles rejects."""


@dataclass(frozen=True)
class SaturatingEdge:
    face: int
    cluster: Node
    u: int
    v: int

    @property
    def label(self) -> str:
        return f"f{self.face}:{self.u}-{self.v}"


@dataclass(frozen=True)
class MatroidPair:
    ground: Tuple[SaturatingEdge, ...]
    first: IndependenceOracle
    second: IndependenceOracle
    target: int


def graphic_oracle(ground: Sequence[SaturatingEdge]) -> IndependenceOracle:
    """Independent iff the chosen edges form a forest. Clusters are vertex-disjoint, so one forest check covers the direct sum."""

    def independent(elements: FrozenSet[int]) -> bool:
        union = UnionFind()
        for element in elements:
            edge = ground[element]
            if union[edge.u] == union[edge.v]:
                return False
            union.union(edge.u, edge.v)
        return True

    return independent


def face_oracle(ground: Sequence[SaturatingEdge]) -> IndependenceOracle:
    def independent(elements: FrozenSet[int]) -> bool:
        counts = Counter(ground[element].face for element in elements)
        return all(count <= 1 for count in counts.values())

    return independent


def saturating_edges(m: CombinatorialMap, tree: ClusterTree) -> Tuple[SaturatingEdge, ...]:
    return tuple(
        SaturatingEdge(face=face.index, cluster=cluster_of(tree, u), u=u, v=v)
        for face in faces(m)
        for u, v in saturating_pairs(face, tree)
    )


def target_rank(m: CombinatorialMap, tree: ClusterTree) -> int:
    return sum(len(members) - 1 for members in cluster_members(m, tree).values())


def build_matroids(m: CombinatorialMap, tree: ClusterTree) -> MatroidPair:
    ground = saturating_edges(m, tree)
    return MatroidPair(
        ground=ground,
        first=graphic_oracle(ground),
        second=face_oracle(ground),
        target=target_rank(m, tree),
    )


def deficient_clusters(m: CombinatorialMap, tree: ClusterTree, ground: Iterable[SaturatingEdge]) -> List[Node]:
    """Clusters whose saturating edges cannot connect all of their vertices."""
    spans: Dict[Node, nx.MultiGraph] = {}
    for cluster, members in cluster_members(m, tree).items():
        if len(members) >= 2:
            spans[cluster] = nx.MultiGraph()
            spans[cluster].add_nodes_from(members)
    for edge in ground:
        if edge.cluster in spans:
            spans[edge.cluster].add_edge(edge.u, edge.v)
    return [cluster for cluster, graph in spans.items() if not nx.is_connected(graph)]


_SOURCE = "source"
_SINK = "sink"


def _exchange_graph(
    size: int,
    current: FrozenSet[int],
    first: IndependenceOracle,
    second: IndependenceOracle,
) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from([_SOURCE, *range(size), _SINK])
    outside = [element for element in range(size) if element not in current]
    for z in outside:
        grown = current | {z}
        if first(grown):
            graph.add_edge(_SOURCE, z)
        if second(grown):
            graph.add_edge(z, _SINK)
    for y in sorted(current):
        without = current - {y}
        for z in outside:
            swapped = without | {z}
            if first(swapped):
                graph.add_edge(y, z)
            if second(swapped):
                graph.add_edge(z, y)
    return graph


def matroid_intersection(
    ground_size: int,
    first: IndependenceOracle,
    second: IndependenceOracle,
) -> Tuple[int, ...]:
    """Maximum common independent set by repeated shortest augmenting paths, starting from the empty set."""
    current: FrozenSet[int] = frozenset()
    while True:
        graph = _exchange_graph(ground_size, current, first, second)
        try:
            path = nx.shortest_path(graph, _SOURCE, _SINK)
        except nx.NetworkXNoPath:
            break
        augmented = current.symmetric_difference(path[1:-1])
        if len(augmented) != len(current) + 1 or not first(augmented) or not second(augmented):
            raise MatroidOracleError(
                f"Augmenting path {path[1:-1]} does not yield a common independent set."
            )
        current = augmented
    logger.debug(
        "Matroid intersection finished",
        extra={"variables": ground_size, "rank": len(current)},
    )
    return tuple(sorted(current))
