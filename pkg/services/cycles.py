"""Winding numbers of cyclic-clustered cycles, monotone reduction and the even-drawing counterexample family."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx

from models.clustered_graph import ClusteredGraph, Node
from models.cycle import CyclicClusteredCycle
from services.structure import InvalidInstanceError, classify, require_flat

logger = logging.getLogger(__name__)


class WindingInvariantError(RuntimeError):
    """The sign sum of a closed cycle is not divisible by the cluster count."""


def edge_sign(c: CyclicClusteredCycle, i: int) -> int:
    """Sign of the edge v_{i+1} v_{i+2} (0-based ``i``, wrapping at n)."""
    difference = (c.phi[(i + 1) % c.n] - c.phi[i % c.n]) % c.k
    if difference == 0:
        return 0
    if difference == 1:
        return 1
    return -1


def edge_signs(c: CyclicClusteredCycle) -> List[int]:
    return [edge_sign(c, i) for i in range(c.n)]


def winding_number(c: CyclicClusteredCycle) -> int:
    total = sum(edge_signs(c))
    if total % c.k:
        raise WindingInvariantError(f"Sign sum {total} is not divisible by k={c.k}.")
    return total // c.k


def is_monotone(c: CyclicClusteredCycle) -> bool:
    signs = edge_signs(c)
    return signs[0] != 0 and all(sign == signs[0] for sign in signs)


def is_cyclic_clustered(c: CyclicClusteredCycle) -> bool:
    """Every pair of cyclically adjacent clusters is joined by some edge."""
    realized = set()
    for i in range(c.n):
        a, b = c.phi[i], c.phi[(i + 1) % c.n]
        if a != b:
            realized.add(frozenset((a, b)))
    needed = {frozenset((index, index % c.k + 1)) for index in range(1, c.k + 1)}
    return needed <= realized


def winding_criterion(c: CyclicClusteredCycle) -> bool:
    """c-planar iff the winding number is -1, 0 or 1."""
    return winding_number(c) in (-1, 0, 1)


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "edge" or "path"
    position: int  # 0-based index of the kept vertex before the step
    phi_before: Tuple[int, ...]
    phi_after: Tuple[int, ...]


@dataclass(frozen=True)
class MonotoneReduction:
    original: CyclicClusteredCycle
    result: CyclicClusteredCycle
    steps: Tuple[ReductionStep, ...] = field(default_factory=tuple)

    @property
    def trivial(self) -> bool:
        return self.result.n < 3

    @property
    def winding(self) -> int:
        return 0 if self.trivial else winding_number(self.result)


def _drop(phi: Tuple[int, ...], positions: set[int]) -> Tuple[int, ...]:
    return tuple(value for index, value in enumerate(phi) if index not in positions)


def monotone_reduction_trace(c: CyclicClusteredCycle) -> MonotoneReduction:
    """Contract zero-sign edges, then back-and-forth paths, until monotone or fewer than 3 vertices remain."""
    current = c
    steps: List[ReductionStep] = []
    while current.n >= 3 and not is_monotone(current):
        n = current.n
        signs = edge_signs(current)
        if 0 in signs:
            i = signs.index(0)
            removed = {i + 1} if i < n - 1 else {n - 1}
            kind, kept = "edge", i if i < n - 1 else 0
        else:
            i = next(
                index
                for index in range(n)
                if current.phi[(index - 1) % n] == current.phi[(index + 1) % n]
            )
            removed = {i, (i + 1) % n}
            kind, kept = "path", (i - 1) % n
        after = _drop(current.phi, removed)
        steps.append(ReductionStep(kind=kind, position=kept, phi_before=current.phi, phi_after=after))
        current = CyclicClusteredCycle(k=current.k, phi=after)

    reduction = MonotoneReduction(original=c, result=current, steps=tuple(steps))
    logger.debug(
        "Monotone reduction finished",
        extra={"vertex_count": current.n, "reason": "trivial" if reduction.trivial else "monotone"},
    )
    return reduction


def monotone_reduce(c: CyclicClusteredCycle) -> CyclicClusteredCycle:
    return monotone_reduction_trace(c).result


def _boundary_units(k: int, r: int) -> List[int]:
    """Cluster boundaries in units of pi/(kr+1)."""
    return [2 * r * j + 1 for j in range(k)]


def generate_counterexample(k: int, r: int) -> CyclicClusteredCycle:
    """The n = kr vertex cycle traced by sin((kr+1)a/r): winding r, c-planar only for r = 1."""
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}.")
    if r < 1 or r % 2 == 0:
        raise ValueError(f"r must be a positive odd integer, got {r}.")
    full_turn = 2 * (k * r + 1)
    boundaries = _boundary_units(k, r)
    phi: List[int] = []
    for i in range(k * r):
        angle = (2 * r * i) % full_turn
        if angle in boundaries:
            raise AssertionError(f"Vertex {i} falls on a cluster boundary.")
        passed = sum(1 for boundary in boundaries if boundary <= angle)
        phi.append(passed if passed else k)
    cycle = CyclicClusteredCycle(k=k, phi=tuple(phi))
    logger.info(
        "Generated counterexample cycle",
        extra={"instance": f"k{k}-r{r}", "vertex_count": cycle.n, "cluster_count": k},
    )
    return cycle


def cycle_from_graph(g: ClusteredGraph) -> CyclicClusteredCycle:
    """Read a cyclic-clustered cycle back from a flat clustered graph that is a single cycle."""
    require_flat(g, "Winding analysis")
    graph = nx.MultiGraph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(edge.ends for edge in g.edges)
    if (
        graph.number_of_nodes() < 3
        or not nx.is_connected(graph)
        or any(degree != 2 for _, degree in graph.degree())
    ):
        raise InvalidInstanceError("The graph is not a single cycle.")
    if not classify(g).cyclic_clustered:
        raise InvalidInstanceError("The clustered graph is not cyclic-clustered.")

    clusters = g.tree.top_level
    rank = {node: index for index, node in enumerate(clusters)}
    adjacency: Dict[Node, List[Node]] = {node: [] for node in clusters}
    for edge in g.edges:
        a, b = g.cluster_of(edge.u), g.cluster_of(edge.v)
        if a != b:
            if b not in adjacency[a]:
                adjacency[a].append(b)
            if a not in adjacency[b]:
                adjacency[b].append(a)
    sequence = [clusters[0], min(adjacency[clusters[0]], key=rank.__getitem__)]
    while len(sequence) < len(clusters):
        step = next(node for node in adjacency[sequence[-1]] if node != sequence[-2])
        sequence.append(step)
    index_of = {node: position for position, node in enumerate(sequence, start=1)}

    start = min(g.vertices)
    edge = g.incident(start)[0]
    walk = [start]
    current = edge.other(start)
    while current != start:
        walk.append(current)
        edge = next(item for item in g.incident(current) if item.id != edge.id)
        current = edge.other(current)
    phi = tuple(index_of[g.cluster_of(vertex)] for vertex in walk)
    return CyclicClusteredCycle(k=len(sequence), phi=phi)
