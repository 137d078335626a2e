"""Exhaustive ground truth for small instances.

Every routine here enumerates; none is meant for inputs beyond a handful of vertices.
Exceeding a limit raises BudgetExceededError, which is a refusal and never a verdict.
"""

from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from models.clustered_graph import ClusteredGraph, ClusterTree, Edge
from models.combinatorial_map import CombinatorialMap, twin
from models.drawing import CircularOrder, ParityVector
from services.canonical_drawing import independent_pairs
from services.embedding import (
    Chord,
    NotCPlanar,
    VertexPair,
    chord_choices,
    chords_cross,
    cluster_members,
    faces,
    preprocess_embedded,
    saturating_pairs,
)
from services.matroids import IndependenceOracle
from services.structure import require_flat, simplify
from settings import get_settings

logger = logging.getLogger(__name__)

FLAT_MAX_VERTICES = 8
FLAT_MAX_EDGES = 12
EMBEDDED_MAX_VERTICES = 10
EMBEDDED_MAX_PAIRS = 12
INTERSECTION_MAX_GROUND = 16


class BudgetExceededError(RuntimeError):
    """The instance is too large for exhaustive enumeration."""


def _refuse(message: str) -> BudgetExceededError:
    logger.warning("Oracle refused the instance", extra={"reason": message})
    return BudgetExceededError(message)


# Flat instances: saturator candidates times rotation systems.


def _cluster_saturators(graph: nx.Graph, members: Sequence[int]) -> List[Tuple[Tuple[int, int], ...]]:
    """Sets of non-edges joining the components of ``members`` into a spanning tree."""
    components = list(nx.connected_components(graph.subgraph(members)))
    if len(components) <= 1:
        return [()]
    component_of = {vertex: index for index, component in enumerate(components) for vertex in component}
    crossing = [
        (u, v)
        for u, v in itertools.combinations(sorted(members), 2)
        if component_of[u] != component_of[v]
    ]
    result: List[Tuple[Tuple[int, int], ...]] = []
    for chosen in itertools.combinations(crossing, len(components) - 1):
        union = UnionFind(range(len(components)))
        for u, v in chosen:
            union.union(component_of[u], component_of[v])
        if len({union[index] for index in range(len(components))}) == 1:
            result.append(chosen)
    return result


def _rotation_count(graph: nx.Graph) -> int:
    return math.prod(math.factorial(max(degree - 1, 0)) for _, degree in graph.degree())


def _rotation_systems(darts_at: Mapping[int, Tuple[int, ...]]) -> Iterator[Dict[int, Tuple[int, ...]]]:
    """Every rotation system up to the choice of first dart at each vertex."""
    vertices = sorted(darts_at)
    choices = []
    for vertex in vertices:
        darts = darts_at[vertex]
        if len(darts) <= 2:
            choices.append([darts])
        else:
            choices.append([(darts[0],) + rest for rest in itertools.permutations(darts[1:])])
    for combination in itertools.product(*choices):
        yield dict(zip(vertices, combination))


def _face_count(rotations: Mapping[int, Tuple[int, ...]]) -> int:
    successor: Dict[int, int] = {}
    for darts in rotations.values():
        for position, dart in enumerate(darts):
            successor[dart] = darts[(position + 1) % len(darts)]
    remaining = set(successor)
    count = 0
    while remaining:
        start = remaining.pop()
        current = successor[twin(start)]
        while current != start:
            remaining.discard(current)
            current = successor[twin(current)]
        count += 1
    return count


def _single_face_for_outsiders(m: CombinatorialMap, members: frozenset[int]) -> bool:
    """All vertices outside ``members`` lie in one face of the sub-embedding induced on ``members``."""
    if len(members) <= 1 or members >= m.vertices:
        return True
    inside = {
        vertex: tuple(dart for dart in m.rotations[vertex] if m.tail[twin(dart)] in members)
        for vertex in members
    }
    sub_darts = [dart for darts in inside.values() for dart in darts]
    sub = CombinatorialMap(rotations=inside, outer=min(sub_darts))
    face_of = sub.face_of_dart
    seen: set[int] = set()
    for vertex in members:
        own = inside[vertex]
        rotation = m.rotations[vertex]
        for position, dart in enumerate(rotation):
            if m.tail[twin(dart)] in members:
                continue
            following = next(
                rotation[(position + step) % len(rotation)]
                for step in range(1, len(rotation))
                if rotation[(position + step) % len(rotation)] in own
            )
            seen.add(face_of[following])
            if len(seen) > 1:
                return False
    return True


def brute_force_flat_cplanarity(g: ClusteredGraph, budget: Optional[int] = None) -> bool:
    require_flat(g, "Brute-force c-planarity")
    simple, _ = simplify(g)
    if len(simple.vertices) <= 1:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(simple.vertices)
    graph.add_edges_from(edge.ends for edge in simple.edges)
    if not nx.is_connected(graph):
        raise _refuse("Disconnected instances are outside the oracle's scope.")
    # a nonplanar underlying graph settles the answer at any size
    if not nx.check_planarity(graph)[0]:
        return False
    if len(simple.vertices) > FLAT_MAX_VERTICES or len(simple.edges) > FLAT_MAX_EDGES:
        raise _refuse(
            f"{len(simple.vertices)} vertices and {len(simple.edges)} edges exceed the oracle limits "
            f"({FLAT_MAX_VERTICES} vertices, {FLAT_MAX_EDGES} edges)."
        )

    clusters = [
        simple.tree.leaves_under(node)
        for node in simple.tree.top_level
        if isinstance(node, str) and len(simple.tree.leaves_under(node)) > 1
    ]
    per_cluster = [_cluster_saturators(graph, members) for members in clusters]
    candidates: List[nx.Graph] = []
    for parts in itertools.product(*per_cluster):
        augmented = graph.copy()
        augmented.add_edges_from(pair for part in parts for pair in part)
        if nx.check_planarity(augmented)[0]:
            candidates.append(augmented)

    limit = get_settings().oracle_budget if budget is None else budget
    total = sum(_rotation_count(candidate) for candidate in candidates)
    if total > limit:
        raise _refuse(f"{total} rotation systems exceed the budget of {limit}.")

    member_sets = [frozenset(members) for members in clusters]
    for candidate in candidates:
        edges = [Edge(index, u, v) for index, (u, v) in enumerate(sorted(tuple(sorted(e)) for e in candidate.edges))]
        darts_at: Dict[int, List[int]] = {vertex: [] for vertex in sorted(candidate.nodes)}
        for edge in edges:
            darts_at[edge.u].append(2 * edge.id)
            darts_at[edge.v].append(2 * edge.id + 1)
        frozen = {vertex: tuple(darts) for vertex, darts in darts_at.items()}
        target_faces = 2 - len(frozen) + len(edges)
        for rotations in _rotation_systems(frozen):
            if _face_count(rotations) != target_faces:
                continue
            m = CombinatorialMap(rotations=rotations, outer=0)
            if all(_single_face_for_outsiders(m, members) for members in member_sets):
                logger.debug("Oracle found a c-planar embedding", extra={"instance": g.name})
                return True
    return False


# Embedded instances: saturators drawn as noncrossing chords inside faces.


def _clusters_connected(groups: Mapping[object, Tuple[int, ...]], links: Sequence[VertexPair]) -> bool:
    union = UnionFind()
    for u, v in links:
        union.union(u, v)
    return all(len({union[vertex] for vertex in members}) == 1 for members in groups.values())


def _already_joined(links: Sequence[VertexPair], pair: VertexPair) -> bool:
    union = UnionFind()
    for u, v in links:
        union.union(u, v)
    return union[pair[0]] == union[pair[1]]


def brute_force_embedded_saturator(m: CombinatorialMap, tree: ClusterTree, budget: Optional[int] = None) -> bool:
    preprocessed = preprocess_embedded(m, tree)
    if isinstance(preprocessed, NotCPlanar):
        return False
    if len(preprocessed.vertices) > EMBEDDED_MAX_VERTICES:
        raise _refuse(f"{len(preprocessed.vertices)} vertices exceed the limit of {EMBEDDED_MAX_VERTICES}.")
    walks = faces(preprocessed)
    elements = [(face, pair) for face in walks for pair in saturating_pairs(face, tree)]
    if len(elements) > EMBEDDED_MAX_PAIRS:
        raise _refuse(f"{len(elements)} saturating pairs exceed the limit of {EMBEDDED_MAX_PAIRS}.")
    groups = {cluster: members for cluster, members in cluster_members(preprocessed, tree).items() if len(members) > 1}
    limit = get_settings().oracle_budget if budget is None else budget
    visited = 0

    def search(index: int, placed: Tuple[Tuple[int, Chord], ...], links: Tuple[VertexPair, ...]) -> bool:
        nonlocal visited
        visited += 1
        if visited > limit:
            raise _refuse(f"Saturator search exceeded the budget of {limit} nodes.")
        if _clusters_connected(groups, links):
            return True
        if index == len(elements):
            return False
        face, pair = elements[index]
        if not _already_joined(links, pair):
            for chord in chord_choices(face, pair):
                if any(chords_cross(chord, other) for where, other in placed if where == face.index):
                    continue
                if search(index + 1, placed + ((face.index, chord),), links + (pair,)):
                    return True
        return search(index + 1, placed, links)

    return search(0, (), ())


def brute_force_intersection_size(
    ground_size: int,
    first: IndependenceOracle,
    second: IndependenceOracle,
) -> int:
    """Largest common independent set by checking subsets from the largest size down."""
    if ground_size > INTERSECTION_MAX_GROUND:
        raise _refuse(f"{ground_size} ground elements exceed the limit of {INTERSECTION_MAX_GROUND}.")
    elements = range(ground_size)
    for size in range(ground_size, 0, -1):
        for subset in itertools.combinations(elements, size):
            chosen = frozenset(subset)
            if first(chosen) and second(chosen):
                return size
    return 0


# Exact geometry of the canonical drawing.

Point = Tuple[Fraction, Fraction]


def _circle_point(position: Fraction, count: int) -> Point:
    t = position - Fraction(count, 2)
    denominator = 1 + t * t
    return (1 - t * t) / denominator, 2 * t / denominator


def _orientation(a: Point, b: Point, c: Point) -> int:
    value = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (value > 0) - (value < 0)


def _segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> int:
    first = _orientation(p1, p2, q1) * _orientation(p1, p2, q2)
    second = _orientation(q1, q2, p1) * _orientation(q1, q2, p2)
    return int(first < 0 and second < 0)


def exact_chord_parity_vector(g: ClusteredGraph, order: CircularOrder) -> ParityVector:
    """Crossing parities of the straight-line circle drawing, computed with rational arithmetic."""
    count = len(order)
    points = {vertex: _circle_point(Fraction(order.position[vertex]), count) for vertex in order.sequence}
    pairs = independent_pairs(g)
    bits = []
    for a, b in pairs:
        e, f = g.edge(a), g.edge(b)
        bits.append(_segments_cross(points[e.u], points[e.v], points[f.u], points[f.v]))
    return ParityVector.from_bits(pairs, bits)


def cluster_boundary_crossings(g: ClusteredGraph, order: CircularOrder) -> Dict[Tuple[int, str], int]:
    """Crossings of each edge chord with the chord closing each proper cluster segment."""
    count = len(order)
    points = {vertex: _circle_point(Fraction(order.position[vertex]), count) for vertex in order.sequence}
    half = Fraction(1, 2)
    result: Dict[Tuple[int, str], int] = {}
    for cluster in g.tree.clusters:
        if cluster == g.tree.root:
            continue
        start, length = order.arcs[cluster]
        if not 0 < length < count:
            continue
        left = _circle_point(start - half, count)
        right = _circle_point(start + length - half, count)
        for edge in g.sorted_edges:
            if edge.is_loop:
                continue
            result[(edge.id, cluster)] = _segments_cross(points[edge.u], points[edge.v], left, right)
    return result
