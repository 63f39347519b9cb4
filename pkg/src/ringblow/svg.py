"""Diagnostic pictures of ring blowups.

The rest of the package computes with exact rationals; this module alone
works in floats, because its output is a drawing with no correctness
contract beyond being well-formed SVG.  Clone copies sit on the boundary
circle in outer order, every other vertex is relaxed to the average of
its neighbours (boundary pinned), the region inside the circle is
shaded, and negative edges are drawn in red.  Clusters of negative
edges, which is where the crossing gadgets ended up, get a translucent
halo so they can be spotted at a glance.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import WeightedGraph
from .reduce import RingBlowup

SIZE = 640.0
MARGIN = 40.0
RELAX_ROUNDS = 80

_ONE = Fraction(1)
_NEG = Fraction(-1)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _sunflower(j: int, total: int, radius: float) -> tuple[float, float]:
    # Evenly fills the disk for any count; the golden angle avoids
    # collinear runs that would hide edges under each other.
    rho = radius * math.sqrt((j + 1) / (total + 1))
    ang = j * math.pi * (3.0 - math.sqrt(5.0))
    return (SIZE / 2 + rho * math.cos(ang), SIZE / 2 + rho * math.sin(ang))


def layout(r: RingBlowup) -> dict[int, tuple[float, float]]:
    """Deterministic straight-line positions for every graph vertex."""
    centre = SIZE / 2
    radius = centre - MARGIN
    pos: dict[int, tuple[float, float]] = {}
    pinned: set[int] = set()
    k = len(r.outer)
    for i, p in enumerate(r.outer):
        theta = -math.pi / 2 + 2 * math.pi * i / k
        copies = r.clones[p]
        if len(copies) == 1:
            angles = [theta]
        else:
            gap = 0.22 * 2 * math.pi / k
            angles = [theta - gap / 2, theta + gap / 2]
        for a, ang in zip(copies, angles):
            pos[a] = (centre + radius * math.cos(ang), centre + radius * math.sin(ang))
            pinned.add(a)

    free = [v for v in range(r.graph.n) if v not in pinned]
    for j, v in enumerate(free):
        pos[v] = _sunflower(j, len(free), 0.72 * radius)

    # Tutte-style relaxation: pulls each free vertex to the barycentre of
    # its neighbours.  Isolated vertices keep their seed position.
    for _ in range(RELAX_ROUNDS):
        nxt = dict(pos)
        for v in free:
            nbrs = r.graph.neighbors(v)
            if not nbrs:
                continue
            nxt[v] = (
                sum(pos[u][0] for u in nbrs) / len(nbrs),
                sum(pos[u][1] for u in nbrs) / len(nbrs),
            )
        pos = nxt
    return pos


def _negative_clusters(g: WeightedGraph) -> list[set[int]]:
    """Connected vertex sets of the subgraph formed by the -1 edges."""
    adj: dict[int, set[int]] = {}
    for (u, v), w in g.weights.items():
        if w == _NEG:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    seen: set[int] = set()
    out: list[set[int]] = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        queue = [s]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        out.append(comp)
    return out


def render_ring_blowup(r: RingBlowup, label: bool = True) -> str:
    """An SVG drawing of the blowup graph, boundary circle and all."""
    pos = layout(r)
    centre = SIZE / 2
    radius = centre - MARGIN
    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(SIZE)}" height="{_fmt(SIZE)}" '
        f'viewBox="0 0 {_fmt(SIZE)} {_fmt(SIZE)}">'
    )
    parts.append(
        f"<desc>ring blowup: {r.graph.n} vertices, {r.graph.m} edges, "
        f"{len(r.outer)} doubled</desc>"
    )
    # the part of the plane inside the circle, shaded
    parts.append(
        f'<circle cx="{_fmt(centre)}" cy="{_fmt(centre)}" r="{_fmt(radius)}" '
        'fill="#f4eede" stroke="none"/>'
    )
    for comp in _negative_clusters(r.graph):
        xs = [pos[v][0] for v in comp]
        ys = [pos[v][1] for v in comp]
        cx, cy = sum(xs) / len(xs), sum(ys) / len(ys)
        reach = max(math.hypot(x - cx, y - cy) for x, y in zip(xs, ys))
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(reach + 11.0)}" '
            'fill="#d8e4f0" stroke="#9ab" stroke-width="0.8"/>'
        )
    for (u, v) in r.graph.edges():
        w = r.graph.weight(u, v)
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if w == _NEG:
            style = 'stroke="#c0392b" stroke-width="2.2"'
        elif w == _ONE:
            style = 'stroke="#55514a" stroke-width="1.1"'
        else:
            style = 'stroke="#7d3c98" stroke-width="1.6"'
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" {style}/>'
        )
        if w != _ONE and w != _NEG:
            parts.append(
                f'<text x="{_fmt((x1 + x2) / 2)}" y="{_fmt((y1 + y2) / 2)}" '
                f'font-size="10" fill="#7d3c98">{w}</text>'
            )
    # the boundary circle itself, over the shading and under the vertices
    parts.append(
        f'<circle cx="{_fmt(centre)}" cy="{_fmt(centre)}" r="{_fmt(radius)}" '
        'fill="none" stroke="#888" stroke-width="1.0" stroke-dasharray="6 4"/>'
    )
    doubled = r.blowup_vertices()
    for v in range(r.graph.n):
        x, y = pos[v]
        if v in doubled:
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5.00" '
                'fill="#ffffff" stroke="#222" stroke-width="1.4"/>'
            )
        else:
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.60" '
                'fill="#333" stroke="none"/>'
            )
        if label:
            parts.append(
                f'<text x="{_fmt(x + 6.0)}" y="{_fmt(y - 5.0)}" '
                f'font-size="9" fill="#666">{v}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
