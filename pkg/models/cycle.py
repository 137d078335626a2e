from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from models.clustered_graph import ROOT, ClusteredGraph, ClusterTree, Edge


@dataclass(frozen=True)
class CyclicClusteredCycle:
    """Cycle v_1 ... v_n with clusters 1..k arranged in a cycle; ``phi[i]`` is the cluster of v_{i+1}."""

    k: int
    phi: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", tuple(self.phi))
        if self.k < 3:
            raise ValueError(f"Cyclic clustering needs at least three clusters, got k={self.k}.")
        if not self.phi:
            raise ValueError("A cycle needs at least one vertex.")
        for value in self.phi:
            if not 1 <= value <= self.k:
                raise ValueError(f"Cluster index {value!r} outside 1..{self.k}.")
        for index, value in enumerate(self.phi):
            following = self.phi[(index + 1) % len(self.phi)]
            if (following - value) % self.k not in (0, 1, self.k - 1):
                raise ValueError(
                    f"Vertices {index + 1} and {(index + 1) % len(self.phi) + 1} lie in "
                    "clusters that are not cyclically adjacent."
                )

    @property
    def n(self) -> int:
        return len(self.phi)

    def to_clustered_graph(self, name: str | None = None) -> ClusteredGraph:
        """Vertices 1..n, edge i-1 joins i and i+1 (edge n-1 closes the cycle), clusters V1..Vk.

        Clusters without vertices are left out of the tree.
        """
        members: Dict[int, List[int]] = {index: [] for index in range(1, self.k + 1)}
        for position, value in enumerate(self.phi, start=1):
            members[value].append(position)
        groups = {f"V{index}": tuple(vertices) for index, vertices in members.items() if vertices}
        tree = ClusterTree.flat(groups, root=ROOT)
        n = self.n
        edges = tuple(Edge(index - 1, index, index % n + 1) for index in range(1, n + 1))
        return ClusteredGraph(vertices=frozenset(range(1, n + 1)), edges=edges, tree=tree, name=name)
