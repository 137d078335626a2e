"""Clustered multigraphs: a multigraph plus a rooted cluster tree over its vertices."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

# Leaves of the cluster tree are vertex ids (int); clusters are named (str).
Node = Union[int, str]

ROOT = "root"


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int

    @property
    def ends(self) -> Tuple[int, int]:
        return (self.u, self.v)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, vertex: int) -> int:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise ValueError(f"Vertex {vertex!r} is not an endpoint of edge {self.id!r}.")

    def independent_of(self, other: Edge) -> bool:
        return not ({self.u, self.v} & {other.u, other.v})

    def label(self) -> str:
        return f"e{self.id}"


@dataclass(frozen=True)
class ClusterTree:
    """Rooted tree whose internal nodes are clusters and whose leaves are vertices.

    Child order is kept as given; it only matters for the circular layout.
    Traversals tolerate malformed trees (cycles, unreachable clusters) so that
    validation can report them instead of crashing.
    """

    root: str
    children: Mapping[str, Tuple[Node, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "children", {name: tuple(kids) for name, kids in self.children.items()}
        )

    @classmethod
    def flat(
        cls,
        groups: Mapping[str, Iterable[int]],
        loose: Iterable[int] = (),
        root: str = ROOT,
    ) -> ClusterTree:
        children: Dict[str, Tuple[Node, ...]] = {name: tuple(members) for name, members in groups.items()}
        children[root] = tuple(groups) + tuple(loose)
        return cls(root=root, children=children)

    def walk(self) -> Iterator[Tuple[Node, int]]:
        """Preorder (node, depth) pairs from the root; each node is visited once."""
        seen: set[Node] = set()
        stack: List[Tuple[Node, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            yield node, depth
            for child in reversed(self.children_of(node)):
                if child not in seen:
                    stack.append((child, depth + 1))

    def children_of(self, node: Node) -> Tuple[Node, ...]:
        if isinstance(node, str):
            return self.children.get(node, ())
        return ()

    @cached_property
    def parent(self) -> Dict[Node, str]:
        parents: Dict[Node, str] = {}
        for node, _ in self.walk():
            for child in self.children_of(node):
                parents.setdefault(child, node)  # type: ignore[arg-type]
        return parents

    @cached_property
    def depths(self) -> Dict[Node, int]:
        return {node: depth for node, depth in self.walk()}

    @cached_property
    def clusters(self) -> Tuple[str, ...]:
        return tuple(node for node, _ in self.walk() if isinstance(node, str))

    @cached_property
    def leaf_order(self) -> Tuple[int, ...]:
        return tuple(node for node, _ in self.walk() if isinstance(node, int))

    @cached_property
    def _leaves(self) -> Dict[Node, Tuple[int, ...]]:
        result: Dict[Node, Tuple[int, ...]] = {}
        for node in self.leaf_order:
            result[node] = (node,)
        for cluster in reversed(self.clusters):
            collected: List[int] = []
            for child in self.children_of(cluster):
                collected.extend(result.get(child, ()))
            result[cluster] = tuple(collected)
        return result

    def leaves_under(self, node: Node) -> Tuple[int, ...]:
        return self._leaves.get(node, ())

    @property
    def top_level(self) -> Tuple[Node, ...]:
        return self.children_of(self.root)

    @property
    def is_flat(self) -> bool:
        return all(self.parent.get(cluster) == self.root for cluster in self.clusters if cluster != self.root)

    def ancestors(self, node: Node) -> List[Node]:
        """Chain from ``node`` up to and including the root."""
        chain: List[Node] = [node]
        while chain[-1] != self.root:
            chain.append(self.parent[chain[-1]])
        return chain

    def path(self, a: Node, b: Node) -> Tuple[Node, ...]:
        """Tree path between two nodes, both endpoints included."""
        up_a = self.ancestors(a)
        up_b = self.ancestors(b)
        on_b = set(up_b)
        lca_index = next(i for i, node in enumerate(up_a) if node in on_b)
        lca = up_a[lca_index]
        down = up_b[: up_b.index(lca)]
        return tuple(up_a[: lca_index + 1]) + tuple(reversed(down))

    def top_level_of(self, node: Node) -> Node:
        """The child of the root containing ``node`` (for flat trees: its cluster or the vertex itself)."""
        chain = self.ancestors(node)
        if len(chain) < 2:
            raise ValueError("The root has no enclosing top-level cluster.")
        return chain[-2]

    def without_leaves(self, removed: Iterable[int]) -> ClusterTree:
        """Drop leaves; non-root clusters left without children are dropped too."""
        gone: set[Node] = set(removed)
        children: Dict[str, Tuple[Node, ...]] = {}
        for cluster in reversed(self.clusters):
            kept = tuple(child for child in self.children_of(cluster) if child not in gone)
            if not kept and cluster != self.root:
                gone.add(cluster)
                continue
            children[cluster] = kept
        ordered = {cluster: children[cluster] for cluster in self.clusters if cluster in children}
        return ClusterTree(root=self.root, children=ordered)

    def relabel(self, mapping: Mapping[int, int]) -> ClusterTree:
        return ClusterTree(
            root=self.root,
            children={
                name: tuple(mapping.get(child, child) if isinstance(child, int) else child for child in kids)
                for name, kids in self.children.items()
            },
        )


@dataclass(frozen=True)
class ClusteredGraph:
    vertices: FrozenSet[int]
    edges: Tuple[Edge, ...]
    tree: ClusterTree
    name: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def build(
        cls,
        vertices: Iterable[int],
        ends: Iterable[Tuple[int, int]],
        tree: ClusterTree,
        name: Optional[str] = None,
    ) -> ClusteredGraph:
        """Number the given endpoint pairs 0, 1, ... in order."""
        edges = tuple(Edge(index, u, v) for index, (u, v) in enumerate(ends))
        return cls(vertices=frozenset(vertices), edges=edges, tree=tree, name=name)

    @cached_property
    def edge_index(self) -> Dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    def edge(self, edge_id: int) -> Edge:
        try:
            return self.edge_index[edge_id]
        except KeyError:
            raise KeyError(f"Edge {edge_id!r} not found.") from None

    @cached_property
    def incidence(self) -> Dict[int, Tuple[Edge, ...]]:
        table: Dict[int, List[Edge]] = {vertex: [] for vertex in self.vertices}
        for edge in sorted(self.edges, key=lambda item: item.id):
            table.setdefault(edge.u, []).append(edge)
            if not edge.is_loop:
                table.setdefault(edge.v, []).append(edge)
        return {vertex: tuple(items) for vertex, items in table.items()}

    def incident(self, vertex: int) -> Tuple[Edge, ...]:
        return self.incidence.get(vertex, ())

    def cluster_of(self, vertex: int) -> Node:
        return self.tree.top_level_of(vertex)

    @property
    def sorted_vertices(self) -> List[int]:
        return sorted(self.vertices)

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=lambda edge: edge.id)

    def with_edges(self, edges: Iterable[Edge]) -> ClusteredGraph:
        return replace(self, edges=tuple(edges))

    def relabel(self, mapping: Mapping[int, int]) -> ClusteredGraph:
        return ClusteredGraph(
            vertices=frozenset(mapping.get(vertex, vertex) for vertex in self.vertices),
            edges=tuple(
                Edge(edge.id, mapping.get(edge.u, edge.u), mapping.get(edge.v, edge.v)) for edge in self.edges
            ),
            tree=self.tree.relabel(mapping),
            name=self.name,
        )
