"""Bad-face elimination by merging same-cluster vertices.

A face is bad when it admits two noncrossing saturating edges. Merges repeat until no face
is bad; afterwards every face carries at most two saturating pairs, and two pairs always
belong to different clusters and always cross.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from models.clustered_graph import ClusterTree, Node
from models.combinatorial_map import CombinatorialMap, FaceWalk, edge_of
from services.embedding import (
    Chord,
    NotCPlanar,
    VertexPair,
    can_embed_noncrossing,
    chord_choices,
    chords_cross,
    cluster_of,
    faces,
    merge_vertices,
    saturating_pairs,
)

logger = logging.getLogger(__name__)

MAX_FACE_SIZE = 5


class FaceSizeError(ValueError):
    """A face is incident to more than five vertices."""


class NormalizationError(RuntimeError):
    """A face boundary falls outside the expected 2-cycle / 4-cycle enclave structure."""


@dataclass(frozen=True)
class MergeStep:
    case: str
    face: int
    pair: VertexPair
    chord: Chord


@dataclass(frozen=True)
class MergePlan:
    """The merge chosen for one bad face: which pair, joined through which corner positions."""

    case: str
    pair: VertexPair
    chord: Chord


@dataclass(frozen=True)
class Normalization:
    map: CombinatorialMap
    steps: Tuple[MergeStep, ...] = field(default_factory=tuple)
    rejection: Optional[NotCPlanar] = None


def check_face_sizes(m: CombinatorialMap) -> None:
    for face in faces(m):
        if face.size > MAX_FACE_SIZE:
            raise FaceSizeError(
                f"Face {face.index} is incident to {face.size} vertices; at most {MAX_FACE_SIZE} are supported."
            )


def _groups(face: FaceWalk, tree: ClusterTree) -> Dict[Node, List[int]]:
    groups: Dict[Node, List[int]] = {}
    for vertex in sorted(face.vertex_set):
        groups.setdefault(cluster_of(tree, vertex), []).append(vertex)
    return groups


def is_bad_face(face: FaceWalk, tree: ClusterTree) -> bool:
    pairs = saturating_pairs(face, tree)
    return any(can_embed_noncrossing(face, p, q) for p, q in itertools.combinations(pairs, 2))


def _avoiding_chord(face: FaceWalk, pair: VertexPair, chord: Chord) -> Optional[Chord]:
    return next((choice for choice in chord_choices(face, pair) if not chords_cross(choice, chord)), None)


def _avoiding_some(face: FaceWalk, pair: VertexPair, others: List[Chord]) -> Optional[Chord]:
    return next(
        (choice for choice in chord_choices(face, pair) if any(not chords_cross(choice, other) for other in others)),
        None,
    )


def enclave_cycles(face: FaceWalk) -> List[int]:
    """Lengths of the cycles of the face boundary: 2 per parallel edge pair, then a cycle basis."""
    boundary = nx.MultiGraph()
    ends: Dict[int, Tuple[int, int]] = {}
    for position, dart in enumerate(face.darts):
        ends.setdefault(edge_of(dart), (face.corners[position], face.corners[(position + 1) % face.length]))
    for edge, (u, v) in ends.items():
        boundary.add_edge(u, v, key=edge)
    lengths: List[int] = []
    multiplicity = Counter(frozenset((u, v)) for u, v in ends.values())
    for key, count in sorted(multiplicity.items(), key=lambda item: sorted(item[0])):
        if len(key) == 1:
            raise NormalizationError("Face boundary contains a loop.")
        if count > 2:
            raise NormalizationError(f"Face boundary repeats edge {sorted(key)} {count} times.")
        if count == 2:
            lengths.append(2)
    simple = nx.Graph(boundary)
    for cycle in nx.cycle_basis(simple):
        lengths.append(len(cycle))
    return lengths


def _four_cycle(face: FaceWalk) -> Optional[List[int]]:
    simple = nx.Graph()
    for position in range(face.length):
        simple.add_edge(face.corners[position], face.corners[(position + 1) % face.length])
    return next((cycle for cycle in nx.cycle_basis(simple) if len(cycle) == 4), None)


def _plan_case_three(face: FaceWalk, big: List[int], pair_d: List[int]) -> Union[MergePlan, NotCPlanar]:
    x, y = pair_d
    d_pair = (x, y)
    c_pairs = list(itertools.combinations(big, 2))
    d_chords = chord_choices(face, d_pair)

    for chord in d_chords:
        avoiding = [pair for pair in c_pairs if _avoiding_chord(face, pair, chord) is not None]
        if len(avoiding) >= 2:
            return MergePlan("d-pair-chord", d_pair, chord)

    for pair in c_pairs:
        if all(_avoiding_chord(face, pair, chord) is not None for chord in d_chords):
            choice = _avoiding_some(face, pair, d_chords)
            if choice is not None:
                return MergePlan("c-pair-unseparated", pair, choice)

    lengths = enclave_cycles(face)
    unexpected = [length for length in lengths if length not in (2, 4)]
    if unexpected:
        raise NormalizationError(f"Face {face.index} has boundary cycles of length {unexpected}.")
    if 4 not in lengths:
        return NotCPlanar(reason=f"face {face.index}: every enclave is bounded by a 2-cycle", case="two-cycle-enclaves")

    cycle = _four_cycle(face)
    if cycle is None or not {x, y} <= set(cycle):
        raise NormalizationError(f"Face {face.index} has no 4-cycle through {x} and {y}.")
    on_cycle = sorted(vertex for vertex in cycle if vertex in big)
    off_cycle = [vertex for vertex in big if vertex not in cycle]
    if len(on_cycle) != 2 or len(off_cycle) != 1:
        raise NormalizationError(f"Face {face.index}: the 4-cycle does not alternate between clusters.")
    pair = (min(on_cycle[0], off_cycle[0]), max(on_cycle[0], off_cycle[0]))
    choice = _avoiding_some(face, pair, d_chords)
    if choice is None:
        raise NormalizationError(f"Face {face.index}: no placement for merging {pair}.")
    return MergePlan("four-cycle-enclave", pair, choice)


def plan_face(face: FaceWalk, tree: ClusterTree) -> Union[None, MergePlan, NotCPlanar]:
    """The next merge for ``face``, a rejection, or None when the face is not bad."""
    pairs = saturating_pairs(face, tree)
    if len(pairs) < 2 or not is_bad_face(face, tree):
        return None
    groups = _groups(face, tree)
    big = [members for members in groups.values() if len(members) >= 3]
    if not big:
        first, second = pairs[0], pairs[1]
        for chord in chord_choices(face, first):
            if any(not chords_cross(chord, other) for other in chord_choices(face, second)):
                return MergePlan("two-pairs", first, chord)
        return None
    cluster = big[0]
    others = [members for members in groups.values() if members is not cluster]
    if all(len(members) <= 1 for members in others):
        pair = (cluster[0], cluster[1])
        return MergePlan("single-cluster", pair, chord_choices(face, pair)[0])
    pair_d = next(members for members in others if len(members) == 2)
    return _plan_case_three(face, cluster, pair_d)


def normalize_trace(m: CombinatorialMap, tree: ClusterTree) -> Normalization:
    current = m
    steps: List[MergeStep] = []
    while True:
        check_face_sizes(current)
        action: Union[None, MergePlan, NotCPlanar] = None
        bad_face: Optional[FaceWalk] = None
        for face in faces(current):
            action = plan_face(face, tree)
            if action is not None:
                bad_face = face
                break
        if action is None:
            break
        if isinstance(action, NotCPlanar):
            logger.info(
                "Normalization rejected the instance",
                extra={"outcome": "not_c_planar", "case": action.case, "face": bad_face.index if bad_face else None},
            )
            return Normalization(map=current, steps=tuple(steps), rejection=action)
        assert bad_face is not None
        u, v = action.pair
        occ_u, occ_v = action.chord
        current = merge_vertices(current, u, v, occ_u, occ_v, bad_face)
        steps.append(MergeStep(case=action.case, face=bad_face.index, pair=action.pair, chord=action.chord))
        logger.debug("Merged vertices", extra={"case": action.case, "face": bad_face.index, "reason": f"{u}+{v}"})

    _check_normal_form(current, tree)
    return Normalization(map=current, steps=tuple(steps))


def normalize(m: CombinatorialMap, tree: ClusterTree) -> Union[CombinatorialMap, NotCPlanar]:
    result = normalize_trace(m, tree)
    return result.rejection if result.rejection is not None else result.map


def _check_normal_form(m: CombinatorialMap, tree: ClusterTree) -> None:
    for face in faces(m):
        pairs = saturating_pairs(face, tree)
        if len(pairs) > 2:
            raise NormalizationError(f"Face {face.index} keeps {len(pairs)} saturating pairs.")
        if len(pairs) == 2:
            first, second = pairs
            if cluster_of(tree, first[0]) == cluster_of(tree, second[0]):
                raise NormalizationError(f"Face {face.index} keeps two pairs of one cluster.")
            if can_embed_noncrossing(face, first, second):
                raise NormalizationError(f"Face {face.index} is still bad.")
