"""Embedded flat clustered graphs: conversion, preprocessing, saturating pairs and vertex merging."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from models.clustered_graph import ClusteredGraph, ClusterTree, Edge, Node
from models.combinatorial_map import (
    CombinatorialMap,
    EmbeddingError,
    FaceWalk,
    darts_from_edge_rotations,
    edge_of,
    twin,
)
from services.structure import InvalidInstanceError, require_flat

logger = logging.getLogger(__name__)

VertexPair = Tuple[int, int]
Chord = Tuple[int, int]


@dataclass(frozen=True)
class NotCPlanar:
    """Short-circuit result of a step that proves the instance is not c-planar."""

    reason: str
    case: Optional[str] = None


def map_from_graph(
    g: ClusteredGraph,
    rotations: Mapping[int, Sequence[int]],
    outer: Optional[Tuple[int, int]] = None,
) -> CombinatorialMap:
    """Build a map from clockwise edge-id rotations; ``outer`` is (tail vertex, edge id) of an outer-face dart."""
    ends = {edge.id: edge.ends for edge in g.edges}
    full = {vertex: list(rotations.get(vertex, ())) for vertex in g.sorted_vertices}
    unknown = sorted(set(rotations) - g.vertices)
    if unknown:
        raise EmbeddingError(f"Rotations given for unknown vertices {unknown}.")
    darts = darts_from_edge_rotations(full, ends)
    outer_dart: Optional[int] = None
    if outer is not None:
        vertex, edge = outer
        if edge not in ends or vertex not in ends[edge]:
            raise EmbeddingError(f"Outer dart ({vertex}, {edge}) is not an edge end.")
        outer_dart = 2 * edge if ends[edge][0] == vertex else 2 * edge + 1
    elif g.edges:
        outer_dart = 2 * min(ends)
    return CombinatorialMap(rotations=darts, outer=outer_dart)


def graph_from_map(m: CombinatorialMap, tree: ClusterTree, name: Optional[str] = None) -> ClusteredGraph:
    return ClusteredGraph(
        vertices=m.vertices,
        edges=tuple(Edge(edge, u, v) for edge, (u, v) in sorted(m.edges.items())),
        tree=tree,
        name=name,
    )


def planar_map(g: ClusteredGraph) -> CombinatorialMap:
    """Some planar embedding of a connected simple graph, taken from networkx."""
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    edge_for: Dict[frozenset[int], int] = {}
    for edge in g.sorted_edges:
        key = frozenset(edge.ends)
        if edge.is_loop or key in edge_for:
            raise InvalidInstanceError("planar_map needs a simple graph.")
        edge_for[key] = edge.id
        graph.add_edge(edge.u, edge.v)
    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise EmbeddingError("The graph is not planar.")
    rotations = {
        vertex: [edge_for[frozenset((vertex, neighbour))] for neighbour in embedding.neighbors_cw_order(vertex)]
        for vertex in g.sorted_vertices
    }
    return map_from_graph(g, rotations)


def faces(m: CombinatorialMap) -> Tuple[FaceWalk, ...]:
    return m.face_walks


def require_flat_embedding(m: CombinatorialMap, tree: ClusterTree) -> None:
    """Leaves and map vertices must coincide; the tree is flat and the map connected."""
    require_flat(graph_from_map(m, tree), "Embedded c-planarity")
    if not m.is_connected():
        raise InvalidInstanceError("Embedded instances must be connected.")
    faces(m)


def cluster_of(tree: ClusterTree, vertex: int) -> Node:
    return tree.top_level_of(vertex)


def cluster_members(m: CombinatorialMap, tree: ClusterTree) -> Dict[Node, Tuple[int, ...]]:
    groups: Dict[Node, List[int]] = {}
    for vertex in sorted(m.vertices):
        groups.setdefault(cluster_of(tree, vertex), []).append(vertex)
    return {cluster: tuple(members) for cluster, members in groups.items()}


def _loop_sides(m: CombinatorialMap, edge: int) -> Tuple[Tuple[Set[int], Set[int]], Tuple[Set[int], Set[int]]]:
    """(edges, vertices) reachable from each side of a loop without passing its vertex."""
    a, b = 2 * edge, 2 * edge + 1
    vertex = m.tail[a]
    rotation = m.rotations[vertex]
    i, j = rotation.index(a), rotation.index(b)
    n = len(rotation)
    after_b = [rotation[(j + step) % n] for step in range(1, (i - j) % n)]
    after_a = [rotation[(i + step) % n] for step in range(1, (j - i) % n)]
    sides = []
    for darts in (after_b, after_a):
        edges: Set[int] = set()
        vertices: Set[int] = set()
        frontier: List[int] = []
        for dart in darts:
            edges.add(edge_of(dart))
            head = m.tail[twin(dart)]
            if head != vertex and head not in vertices:
                vertices.add(head)
                frontier.append(head)
        while frontier:
            current = frontier.pop()
            for dart in m.rotations[current]:
                edges.add(edge_of(dart))
                head = m.tail[twin(dart)]
                if head != vertex and head not in vertices:
                    vertices.add(head)
                    frontier.append(head)
        sides.append((edges, vertices))
    return sides[0], sides[1]


def _remove_loop(m: CombinatorialMap, tree: ClusterTree, edge: int) -> Union[CombinatorialMap, NotCPlanar]:
    a = 2 * edge
    vertex = m.tail[a]
    first, second = _loop_sides(m, edge)
    outer = m.outer
    outer_edge = edge_of(outer) if outer is not None else None
    if outer == a or (outer_edge is not None and outer_edge in first[0]):
        inside_edges, inside_vertices = second
    else:
        inside_edges, inside_vertices = first
    home = cluster_of(tree, vertex)
    foreign = sorted(v for v in inside_vertices if cluster_of(tree, v) != home)
    if foreign:
        return NotCPlanar(reason=f"loop at vertex {vertex} encloses vertex {foreign[0]} of another cluster")
    return m.delete(set(inside_edges) | {edge}, inside_vertices)


def preprocess_embedded(m: CombinatorialMap, tree: ClusterTree) -> Union[CombinatorialMap, NotCPlanar]:
    """Contract intra-cluster edges, then drop each loop with its interior (or reject)."""
    require_flat_embedding(m, tree)
    current = m
    while True:
        intra = [
            edge
            for edge, (u, v) in sorted(current.edges.items())
            if u != v and cluster_of(tree, u) == cluster_of(tree, v)
        ]
        if not intra:
            break
        current = current.contract(intra[0])
        logger.debug("Contracted intra-cluster edge", extra={"reason": f"edge {intra[0]}"})

    while True:
        loops = [edge for edge, (u, v) in sorted(current.edges.items()) if u == v]
        if not loops:
            break
        result = _remove_loop(current, tree, loops[0])
        if isinstance(result, NotCPlanar):
            logger.info("Loop encloses a foreign vertex", extra={"outcome": "not_c_planar", "reason": result.reason})
            return result
        current = result

    faces(current)
    return current


def saturating_pairs(face: FaceWalk, tree: ClusterTree) -> List[VertexPair]:
    incident = sorted(face.vertex_set)
    return [
        (u, v)
        for u, v in itertools.combinations(incident, 2)
        if cluster_of(tree, u) == cluster_of(tree, v)
    ]


def chords_cross(first: Chord, second: Chord) -> bool:
    """Chords between corner positions of one face walk cross iff their endpoints interleave."""
    if set(first) & set(second):
        return False
    low, high = sorted(first)
    return (low < second[0] < high) != (low < second[1] < high)


def chord_choices(face: FaceWalk, pair: VertexPair) -> List[Chord]:
    """Every corner-position choice for a chord joining ``pair``, lexicographically ordered."""
    return [
        (i, j)
        for i in face.occurrences(pair[0])
        for j in face.occurrences(pair[1])
    ]


def can_embed_noncrossing(face: FaceWalk, first: VertexPair, second: VertexPair) -> bool:
    if set(first) & set(second):
        return True
    return any(
        not chords_cross(a, b)
        for a in chord_choices(face, first)
        for b in chord_choices(face, second)
    )


def merge_vertices(
    m: CombinatorialMap,
    u: int,
    v: int,
    occ_u: Optional[int] = None,
    occ_v: Optional[int] = None,
    face: Optional[FaceWalk] = None,
) -> CombinatorialMap:
    """Draw a new edge uv inside ``face`` at the given corners and contract it."""
    if u == v:
        raise ValueError("Cannot merge a vertex with itself.")
    if m.adjacent(u, v):
        raise ValueError(f"Vertices {u} and {v} are adjacent; only nonadjacent vertices are merged.")
    if face is None:
        face = next((walk for walk in m.face_walks if {u, v} <= walk.vertex_set), None)
        if face is None:
            raise ValueError(f"No face is incident to both {u} and {v}.")
    first = face.occurrences(u)[0] if occ_u is None else occ_u
    second = face.occurrences(v)[0] if occ_v is None else occ_v
    if face.corners[first] != u or face.corners[second] != v:
        raise ValueError("Occurrence indices do not point at the requested vertices.")
    extended, edge = m.insert_edge(face, first, second)
    merged = extended.contract(edge)
    faces(merged)
    return merged
