"""Rotation-system embeddings of connected plane multigraphs.

Edge ``e`` owns darts ``2e`` and ``2e + 1``; ``twin(d) = d ^ 1``. Rotations list the darts
leaving a vertex in clockwise order. The face successor of a dart ``d`` is the rotation
successor of ``twin(d)``, so corner ``i`` of a face walk sits at ``tail(d_i)`` between
``twin(d_{i-1})`` and ``d_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple


class EmbeddingError(ValueError):
    """Malformed rotation system or an embedding that is not planar."""


def twin(dart: int) -> int:
    return dart ^ 1


def edge_of(dart: int) -> int:
    return dart >> 1


@dataclass(frozen=True)
class FaceWalk:
    index: int
    darts: Tuple[int, ...]
    corners: Tuple[int, ...]

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.corners)

    @property
    def size(self) -> int:
        """Number of distinct incident vertices."""
        return len(self.vertex_set)

    @property
    def length(self) -> int:
        return len(self.corners)

    def occurrences(self, vertex: int) -> Tuple[int, ...]:
        return tuple(position for position, corner in enumerate(self.corners) if corner == vertex)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(edge_of(dart) for dart in self.darts)


@dataclass(frozen=True)
class CombinatorialMap:
    rotations: Mapping[int, Tuple[int, ...]]
    outer: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", {vertex: tuple(darts) for vertex, darts in self.rotations.items()})
        self._check_structure()

    def _check_structure(self) -> None:
        seen: Dict[int, int] = {}
        for vertex, darts in self.rotations.items():
            for dart in darts:
                if dart < 0:
                    raise EmbeddingError(f"Negative dart {dart} at vertex {vertex}.")
                if dart in seen:
                    raise EmbeddingError(f"Dart {dart} appears at vertices {seen[dart]} and {vertex}.")
                seen[dart] = vertex
        for dart in seen:
            if twin(dart) not in seen:
                raise EmbeddingError(f"Dart {dart} has no twin.")
        if self.outer is not None and self.outer not in seen:
            raise EmbeddingError(f"Outer dart {self.outer} is not part of the map.")
        if self.outer is None and seen:
            raise EmbeddingError("A map with edges needs an outer-face dart.")

    @cached_property
    def tail(self) -> Dict[int, int]:
        return {dart: vertex for vertex, darts in self.rotations.items() for dart in darts}

    @cached_property
    def _successor(self) -> Dict[int, int]:
        successor: Dict[int, int] = {}
        for darts in self.rotations.values():
            for position, dart in enumerate(darts):
                successor[dart] = darts[(position + 1) % len(darts)]
        return successor

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.rotations)

    @cached_property
    def edges(self) -> Dict[int, Tuple[int, int]]:
        """Edge id -> (tail of dart 2e, tail of dart 2e + 1)."""
        return {
            edge_of(dart): (self.tail[dart], self.tail[twin(dart)])
            for dart in sorted(self.tail)
            if dart % 2 == 0
        }

    @property
    def darts(self) -> List[int]:
        return sorted(self.tail)

    def face_next(self, dart: int) -> int:
        return self._successor[twin(dart)]

    def is_loop(self, edge: int) -> bool:
        u, v = self.edges[edge]
        return u == v

    def adjacent(self, u: int, v: int) -> bool:
        return any({a, b} == {u, v} for a, b in self.edges.values())

    def is_connected(self) -> bool:
        if not self.rotations:
            return True
        start = min(self.rotations)
        reached = {start}
        frontier = [start]
        while frontier:
            vertex = frontier.pop()
            for dart in self.rotations[vertex]:
                head = self.tail[twin(dart)]
                if head not in reached:
                    reached.add(head)
                    frontier.append(head)
        return len(reached) == len(self.rotations)

    def _orbits(self) -> List[Tuple[int, ...]]:
        remaining = set(self.tail)
        orbits: List[Tuple[int, ...]] = []
        for start in sorted(self.tail):
            if start not in remaining:
                continue
            walk = [start]
            remaining.discard(start)
            current = self.face_next(start)
            while current != start:
                walk.append(current)
                remaining.discard(current)
                current = self.face_next(current)
            orbits.append(tuple(walk))
        return orbits

    def face_count(self) -> int:
        return max(1, len(self._orbits()))

    def is_planar(self) -> bool:
        return len(self.rotations) - len(self.edges) + self.face_count() == 2

    @cached_property
    def face_walks(self) -> Tuple[FaceWalk, ...]:
        """Faces ordered by their smallest dart; each walk starts there. Raises unless connected and planar."""
        if not self.is_connected():
            raise EmbeddingError("The embedding is disconnected.")
        if not self.tail:
            vertices = tuple(sorted(self.rotations))
            return (FaceWalk(index=0, darts=(), corners=vertices),)
        orbits = self._orbits()
        if len(self.rotations) - len(self.edges) + len(orbits) != 2:
            raise EmbeddingError(
                f"Not a planar embedding: V - E + F = {len(self.rotations)} - {len(self.edges)} + {len(orbits)}."
            )
        return tuple(
            FaceWalk(index=index, darts=orbit, corners=tuple(self.tail[dart] for dart in orbit))
            for index, orbit in enumerate(orbits)
        )

    @cached_property
    def face_of_dart(self) -> Dict[int, int]:
        return {dart: face.index for face in self.face_walks for dart in face.darts}

    @property
    def outer_face(self) -> int:
        if self.outer is None:
            return 0
        return self.face_of_dart[self.outer]

    def _anchor(self, removed: Iterable[int]) -> Optional[int]:
        """First surviving dart of the outer face, walking forward from the outer dart."""
        gone = set(removed)
        if self.outer is None:
            return None
        if self.outer not in gone:
            return self.outer
        current = self.face_next(self.outer)
        while current != self.outer:
            if current not in gone:
                return current
            current = self.face_next(current)
        return None

    def contract(self, edge: int) -> CombinatorialMap:
        """Contract a non-loop edge; the merged vertex keeps the smaller id."""
        a, b = 2 * edge, 2 * edge + 1
        if a not in self.tail:
            raise EmbeddingError(f"Edge {edge!r} not found.")
        p, q = self.tail[a], self.tail[b]
        if p == q:
            raise EmbeddingError(f"Edge {edge} is a loop and cannot be contracted.")
        at_q = self.rotations[q]
        start = at_q.index(b)
        spliced = at_q[start + 1 :] + at_q[:start]
        merged: List[int] = []
        for dart in self.rotations[p]:
            if dart == a:
                merged.extend(spliced)
            else:
                merged.append(dart)
        keep = min(p, q)
        rotations = {vertex: darts for vertex, darts in self.rotations.items() if vertex not in (p, q)}
        rotations[keep] = tuple(merged)
        return CombinatorialMap(rotations=_ordered(rotations), outer=self._anchor((a, b)))

    def delete(self, edges: Iterable[int], vertices: Iterable[int] = ()) -> CombinatorialMap:
        """Remove edges, then vertices (which must be left without darts)."""
        removed = {dart for edge in edges for dart in (2 * edge, 2 * edge + 1)}
        gone = set(vertices)
        rotations: Dict[int, Tuple[int, ...]] = {}
        for vertex, darts in self.rotations.items():
            kept = tuple(dart for dart in darts if dart not in removed)
            if vertex in gone:
                if kept:
                    raise EmbeddingError(f"Vertex {vertex} still has edges after deletion.")
                continue
            rotations[vertex] = kept
        anchor = self._anchor(removed) if any(rotations.values()) else None
        return CombinatorialMap(rotations=_ordered(rotations), outer=anchor)

    def insert_edge(self, face: FaceWalk, first: int, second: int) -> Tuple[CombinatorialMap, int]:
        """Add a new edge inside ``face`` between corners ``first`` and ``second``; returns the map and edge id."""
        edge = max(self.edges, default=-1) + 1
        new_a, new_b = 2 * edge, 2 * edge + 1
        before_first = face.darts[first]
        before_second = face.darts[second]
        rotations = {vertex: list(darts) for vertex, darts in self.rotations.items()}
        for new_dart, anchor in ((new_a, before_first), (new_b, before_second)):
            owner = self.tail[anchor]
            darts = rotations[owner]
            darts.insert(darts.index(anchor), new_dart)
        return (
            CombinatorialMap(rotations={v: tuple(d) for v, d in rotations.items()}, outer=self.outer),
            edge,
        )

    def edge_rotations(self) -> Dict[int, List[int]]:
        """Rotations as edge ids (a loop id appears twice)."""
        return {vertex: [edge_of(dart) for dart in darts] for vertex, darts in sorted(self.rotations.items())}


def _ordered(rotations: Mapping[int, Tuple[int, ...]]) -> Dict[int, Tuple[int, ...]]:
    return {vertex: rotations[vertex] for vertex in sorted(rotations)}


def darts_from_edge_rotations(
    rotations: Mapping[int, Sequence[int]],
    ends: Mapping[int, Tuple[int, int]],
) -> Dict[int, Tuple[int, ...]]:
    """Translate edge-id rotations into dart rotations; dart 2e leaves the first endpoint of e."""
    used: set[int] = set()
    result: Dict[int, Tuple[int, ...]] = {}
    for vertex, edge_ids in rotations.items():
        darts: List[int] = []
        for edge in edge_ids:
            if edge not in ends:
                raise EmbeddingError(f"Rotation at vertex {vertex} names unknown edge {edge}.")
            u, v = ends[edge]
            if vertex not in (u, v):
                raise EmbeddingError(f"Edge {edge} is not incident to vertex {vertex}.")
            if vertex == u and 2 * edge not in used:
                dart = 2 * edge
            elif vertex == v and 2 * edge + 1 not in used:
                dart = 2 * edge + 1
            else:
                raise EmbeddingError(f"Edge {edge} appears too often in the rotation at vertex {vertex}.")
            used.add(dart)
            darts.append(dart)
        result[vertex] = tuple(darts)
    missing = sorted({edge for edge in ends for dart in (2 * edge, 2 * edge + 1) if dart not in used})
    if missing:
        raise EmbeddingError(f"Edges {missing} are missing from the rotations.")
    return result
