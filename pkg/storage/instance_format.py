"""JSON instance files: parse, validate and serialize clustered graphs with optional embeddings."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from pydantic import ValidationError

from models.clustered_graph import ClusteredGraph, ClusterTree, Edge, Node
from models.combinatorial_map import CombinatorialMap, edge_of
from models.documents import ClusterNodeDocument, InstanceDocument

logger = logging.getLogger(__name__)


class InstanceFormatError(ValueError):
    """Instance text that is not valid JSON or does not match the instance schema."""


@dataclass(frozen=True)
class Instance:
    graph: ClusteredGraph
    rotations: Optional[Mapping[int, Tuple[int, ...]]] = None
    outer: Optional[Tuple[int, int]] = None

    @property
    def embedded(self) -> bool:
        return self.rotations is not None

    @classmethod
    def from_map(cls, graph: ClusteredGraph, m: CombinatorialMap) -> Instance:
        outer = None if m.outer is None else (m.tail[m.outer], edge_of(m.outer))
        rotations = {vertex: tuple(edges) for vertex, edges in m.edge_rotations().items()}
        return cls(graph=graph, rotations=rotations, outer=outer)


def _tree_from_document(document: ClusterNodeDocument) -> ClusterTree:
    children: Dict[str, Tuple[Node, ...]] = {}
    pending = [document]
    while pending:
        node = pending.pop()
        if node.name in children:
            raise InstanceFormatError(f"Duplicate cluster name {node.name!r}.")
        children[node.name] = tuple(child if isinstance(child, int) else child.name for child in node.children)
        pending.extend(child for child in reversed(node.children) if not isinstance(child, int))
    return ClusterTree(root=document.name, children=children)


def _describe(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        problems.append(f"{location}: {item['msg']}")
    return "; ".join(problems)


def parse_instance(text: str) -> Instance:
    """Parse instance text. Structural validity of the graph is left to ``services.structure.validate``."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"Invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}.") from exc
    try:
        document = InstanceDocument.model_validate(payload)
    except ValidationError as exc:
        raise InstanceFormatError(f"Invalid instance: {_describe(exc)}.") from exc

    graph = ClusteredGraph(
        vertices=frozenset(document.vertices),
        edges=tuple(Edge(edge.id, edge.ends[0], edge.ends[1]) for edge in document.edges),
        tree=_tree_from_document(document.clusters),
        name=document.name,
    )
    if document.embedding is None:
        return Instance(graph=graph)
    rotations = {vertex: tuple(edges) for vertex, edges in sorted(document.embedding.rotations.items())}
    return Instance(graph=graph, rotations=rotations, outer=document.embedding.outer)


def _tree_document(tree: ClusterTree, node: str, seen: Optional[set[str]] = None) -> Dict[str, Any]:
    seen = set() if seen is None else seen
    seen.add(node)
    children: List[Union[int, Dict[str, Any]]] = []
    for child in tree.children_of(node):
        if isinstance(child, int):
            children.append(child)
        elif child not in seen:
            children.append(_tree_document(tree, child, seen))
    return {"name": node, "children": children}


def serialize_instance(instance: Union[Instance, ClusteredGraph]) -> str:
    """Canonical text: vertices and edges sorted by id, cluster children in stored order."""
    if isinstance(instance, ClusteredGraph):
        instance = Instance(graph=instance)
    graph = instance.graph
    payload: Dict[str, Any] = {
        "name": graph.name,
        "vertices": graph.sorted_vertices,
        "edges": [{"id": edge.id, "ends": [edge.u, edge.v]} for edge in graph.sorted_edges],
        "clusters": _tree_document(graph.tree, graph.tree.root),
    }
    if instance.rotations is not None:
        payload["embedding"] = {
            "rotations": {vertex: list(edges) for vertex, edges in sorted(instance.rotations.items())},
            "outer": list(instance.outer) if instance.outer is not None else None,
        }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_instance(path: Path) -> Instance:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InstanceFormatError(f"{path} is not UTF-8 text.") from exc
    instance = parse_instance(text)
    logger.debug(
        "Loaded instance",
        extra={
            "instance": instance.graph.name or path.name,
            "vertex_count": len(instance.graph.vertices),
            "edge_count": len(instance.graph.edges),
        },
    )
    return instance


def save_instance(path: Path, instance: Union[Instance, ClusteredGraph]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_instance(instance), encoding="utf-8")
