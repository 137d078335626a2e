"""Allowed edge-vertex / edge-cluster switches and GF(2) elimination over packed int rows."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from models.clustered_graph import ClusteredGraph, Edge
from models.drawing import ParityVector
from services.canonical_drawing import independent_pairs

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """A parity vector is not indexed by the independent pairs of the graph."""


class UnknownSwitchError(KeyError):
    """A witness names a switch that is not a variable of the system."""


class SwitchKind(str, Enum):
    edge_vertex = "edge-vertex"
    edge_cluster = "edge-cluster"


@dataclass(frozen=True)
class Switch:
    kind: SwitchKind
    edge: int
    target: Union[int, str]

    @property
    def label(self) -> str:
        if self.kind is SwitchKind.edge_vertex:
            return f"e{self.edge}@v{self.target}"
        return f"e{self.edge}@{self.target}"


# Indices into SwitchSystem.variables.
WitnessSet = Tuple[int, ...]


@dataclass(frozen=True)
class SwitchSystem:
    variables: Tuple[Switch, ...]
    rows: Tuple[int, ...]
    rhs: ParityVector

    @property
    def equations(self) -> int:
        return self.rhs.dimension

    @property
    def active_equations(self) -> int:
        """Pair indices touched by at least one switch."""
        touched = 0
        for row in self.rows:
            touched |= row
        return bin(touched).count("1")

    def labels(self, witness: Iterable[int]) -> List[str]:
        return [self.variables[index].label for index in witness]


def allowed_switches(g: ClusteredGraph) -> List[Switch]:
    """Switches (e, x) with x a child of a node on the tree path between the ends of e.

    Vertex targets exclude the endpoints of e; cluster targets may contain them.
    """
    tree = g.tree
    switches: List[Switch] = []
    for edge in g.sorted_edges:
        if edge.is_loop:
            continue
        seen: set[Union[int, str]] = set()
        for node in tree.path(edge.u, edge.v):
            for child in tree.children_of(node):
                if child in seen or child in (edge.u, edge.v):
                    continue
                seen.add(child)
                if isinstance(child, int):
                    switches.append(Switch(SwitchKind.edge_vertex, edge.id, child))
                else:
                    switches.append(Switch(SwitchKind.edge_cluster, edge.id, child))
    return switches


def vertex_switch_row(g: ClusteredGraph, edge: Edge, vertex: int, index: Dict[Tuple[int, int], int]) -> int:
    """Pairs {e, f} with f incident to ``vertex`` and independent of e."""
    row = 0
    for other in g.incident(vertex):
        if not edge.independent_of(other):
            continue
        key = (edge.id, other.id) if edge.id < other.id else (other.id, edge.id)
        row ^= 1 << index[key]
    return row


def switch_row(g: ClusteredGraph, switch: Switch, index: Dict[Tuple[int, int], int]) -> int:
    edge = g.edge(switch.edge)
    if switch.kind is SwitchKind.edge_vertex:
        return vertex_switch_row(g, edge, int(switch.target), index)
    row = 0
    for vertex in g.tree.leaves_under(switch.target):
        row ^= vertex_switch_row(g, edge, vertex, index)
    return row


def build_system(g: ClusteredGraph, v0: ParityVector) -> SwitchSystem:
    expected = independent_pairs(g)
    if tuple(v0.pairs) != expected:
        raise DimensionMismatchError(
            f"Parity vector has {v0.dimension} pairs; the graph has {len(expected)} independent pairs."
        )
    index = v0.index
    variables = tuple(allowed_switches(g))
    rows = tuple(switch_row(g, switch, index) for switch in variables)
    logger.debug(
        "Built switch system",
        extra={"instance": g.name, "equations": v0.dimension, "variables": len(variables)},
    )
    return SwitchSystem(variables=variables, rows=rows, rhs=v0)


def _eliminate(rows: Sequence[int], order: Sequence[int]) -> Dict[int, Tuple[int, int]]:
    """Echelon basis keyed by pivot bit: pivot -> (reduced row, combination of variables).

    Variables are inserted in ``order``; each pivots on its lowest remaining set bit.
    """
    basis: Dict[int, Tuple[int, int]] = {}
    for variable in order:
        row = rows[variable]
        combination = 1 << variable
        while row:
            pivot = (row & -row).bit_length() - 1
            if pivot not in basis:
                basis[pivot] = (row, combination)
                break
            base_row, base_combination = basis[pivot]
            row ^= base_row
            combination ^= base_combination
    return basis


def solver_rank(system: SwitchSystem) -> int:
    return len(_eliminate(system.rows, range(len(system.rows))))


def solve(system: SwitchSystem, variable_order: Optional[Sequence[int]] = None) -> Optional[WitnessSet]:
    """Switches whose rows sum to the right-hand side, or None when 0 is not in rhs + span(rows)."""
    count = len(system.rows)
    order = list(range(count)) if variable_order is None else list(variable_order)
    if sorted(order) != list(range(count)):
        raise ValueError("variable_order must be a permutation of the variable indices.")
    basis = _eliminate(system.rows, order)

    residual = system.rhs.bits
    used = 0
    while residual:
        pivot = (residual & -residual).bit_length() - 1
        if pivot not in basis:
            logger.debug(
                "Switch system unsolvable",
                extra={"equations": system.equations, "variables": count, "rank": len(basis)},
            )
            return None
        base_row, base_combination = basis[pivot]
        residual ^= base_row
        used ^= base_combination
    return tuple(index for index in range(count) if (used >> index) & 1)


def apply_switches(v0: ParityVector, witness: Iterable[int], system: SwitchSystem) -> ParityVector:
    """v0 plus the rows of the witness; a switch listed twice cancels out."""
    counts = Counter(witness)
    packed = 0
    for variable, times in counts.items():
        if not 0 <= variable < len(system.rows):
            raise UnknownSwitchError(f"Switch {variable!r} not found.")
        if times % 2:
            packed ^= system.rows[variable]
    if tuple(v0.pairs) != tuple(system.rhs.pairs):
        raise DimensionMismatchError("Parity vector and switch system use different pair indices.")
    return v0.add(packed)
