"""The canonical clustered drawing: vertices on a circle in cluster-tree DFS order, edges as chords."""

from __future__ import annotations

import math
from typing import Dict, List, Tuple
from xml.sax.saxutils import quoteattr

from models.clustered_graph import ClusteredGraph, Edge
from models.drawing import CircularOrder, Pair, ParityVector
from services.structure import ensure_valid
from services.svg_document import SVGDocument

_CANVAS = 520
_RADIUS = 200.0
_VERTEX_RADIUS = 6.0

_STYLE = """.guide { fill: none; stroke: #bbbbbb; stroke-dasharray: 4 4; }
.cluster { fill: #4a90d9; fill-opacity: 0.12; stroke: #4a90d9; }
.edge { stroke: #333333; stroke-width: 1.5; fill: none; }
.vertex { fill: #ffffff; stroke: #000000; }
text { font-family: monospace; font-size: 11px; }
"""


def dfs_circle_order(g: ClusteredGraph) -> CircularOrder:
    ensure_valid(g)
    tree = g.tree
    sequence = tree.leaf_order
    position = {vertex: index for index, vertex in enumerate(sequence)}
    arcs: Dict[str, Tuple[int, int]] = {}
    for cluster in tree.clusters:
        members = tree.leaves_under(cluster)
        start = position[members[0]] if members else 0
        arcs[cluster] = (start, len(members))
    return CircularOrder(sequence=sequence, arcs=arcs)


def interleaves(e: Edge, f: Edge, order: CircularOrder) -> int:
    """1 iff the chords of ``e`` and ``f`` cross, i.e. their endpoints alternate on the circle."""
    if not e.independent_of(f):
        raise ValueError(f"Edges {e.id!r} and {f.id!r} share an endpoint.")
    low, high = sorted((order.position[e.u], order.position[e.v]))
    inside_first = low < order.position[f.u] < high
    inside_second = low < order.position[f.v] < high
    return int(inside_first != inside_second)


def independent_pairs(g: ClusteredGraph) -> Tuple[Pair, ...]:
    edges = g.sorted_edges
    pairs: List[Pair] = []
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if e.independent_of(f):
                pairs.append((e.id, f.id))
    return tuple(pairs)


def initial_parity_vector(g: ClusteredGraph, order: CircularOrder) -> ParityVector:
    pairs = independent_pairs(g)
    values = (interleaves(g.edge(a), g.edge(b), order) for a, b in pairs)
    return ParityVector.from_bits(pairs, values)


def _angle(position: float, count: int) -> float:
    return 2.0 * math.pi * position / count - math.pi / 2.0


def _point(angle: float, radius: float) -> Tuple[float, float]:
    centre = _CANVAS / 2.0
    return centre + radius * math.cos(angle), centre + radius * math.sin(angle)


def _segment_margin(depth: int) -> float:
    return max(0.05, 0.45 - 0.1 * (depth - 1))


def _segment_padding(depth: int) -> float:
    return max(2.0, 14.0 - 4.0 * (depth - 1))


def render_svg(g: ClusteredGraph, order: CircularOrder) -> str:
    """SVG of the canonical drawing; each non-root cluster is the circular segment cut off by a chord."""
    ensure_valid(g)
    count = len(order)
    document = SVGDocument()
    document.header(_CANVAS, _CANVAS)
    document.style(_STYLE)
    document.circle(_CANVAS / 2.0, _CANVAS / 2.0, _RADIUS, "guide")

    depths = g.tree.depths
    document.group_start({"id": "clusters"})
    for cluster in g.tree.clusters:
        if cluster == g.tree.root or count == 0:
            continue
        start, length = order.arcs[cluster]
        if length == 0:
            continue
        depth = depths[cluster]
        margin = _segment_margin(depth)
        radius = _RADIUS + _segment_padding(depth)
        first = _angle(start - margin, count)
        last = _angle(start + length - 1 + margin, count)
        large_arc = 1 if last - first > math.pi else 0
        x1, y1 = _point(first, radius)
        x2, y2 = _point(last, radius)
        document.path(
            f"M {x1:.3f} {y1:.3f} A {radius:.3f} {radius:.3f} 0 {large_arc} 1 {x2:.3f} {y2:.3f} Z",
            "cluster",
            extra=f"data-cluster={quoteattr(cluster)}",
        )
    document.group_end()

    points = {vertex: _point(_angle(index, count), _RADIUS) for index, vertex in enumerate(order.sequence)}
    document.group_start({"id": "edges"})
    for edge in g.sorted_edges:
        if edge.is_loop:
            x, y = points[edge.u]
            document.circle(x, y, _VERTEX_RADIUS * 2.0, "edge", extra=f'data-edge="{edge.id}"')
            continue
        x1, y1 = points[edge.u]
        x2, y2 = points[edge.v]
        document.line(x1, y1, x2, y2, "edge", extra=f'data-edge="{edge.id}"')
    document.group_end()

    document.group_start({"id": "vertices"})
    for vertex in order.sequence:
        x, y = points[vertex]
        document.circle(x, y, _VERTEX_RADIUS, "vertex")
        lx, ly = _point(_angle(order.position[vertex], count), _RADIUS + 24.0)
        document.text(lx, ly, str(vertex), extra='text-anchor="middle"')
    document.group_end()
    return document.get_svg()


def render_text(g: ClusteredGraph, order: CircularOrder) -> str:
    lines = ["order: " + " ".join(str(vertex) for vertex in order.sequence)]
    for cluster in g.tree.clusters:
        start, length = order.arcs.get(cluster, (0, 0))
        lines.append(f"arc {cluster}: [{start}, {start + length})")
    parity = initial_parity_vector(g, order)
    lines.append(f"independent pairs: {parity.dimension}")
    lines.append("odd pairs: " + (" ".join(f"e{a}/e{b}" for a, b in parity.odd_pairs()) or "none"))
    return "\n".join(lines) + "\n"
