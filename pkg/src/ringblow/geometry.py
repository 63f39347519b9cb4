"""Exact rational plane geometry for chord drawings on a circle.

Vertices are placed at rational points of the unit circle via the
tangent-half-angle parametrisation, so every incidence predicate (chord
crossing, ray hit, angular order) is decided exactly with Fractions.  A
drawing is usable when it is generic: crossings are pairwise distinct, no
chord passes through a vertex or the centre, and no two of the relevant
points (vertices, crossings) share a ray from the centre.

Degeneracies are detected, never tolerated: `enumerate_crossings` raises
DegenerateDrawing, and `draw_on_circle` retries with fresh parameters from
a fixed schedule until the predicates pass, aborting with
DegeneratePlacement after a retry cap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import WeightedGraph, edge_key

Point = tuple[Fraction, Fraction]
Edge = tuple[int, int]

F0 = Fraction(0)
ORIGIN: Point = (F0, F0)


class DegenerateDrawing(ValueError):
    """A general-position predicate failed on a concrete placement."""


class DegeneratePlacement(RuntimeError):
    """No generic placement was found within the retry cap."""


# -- exact vector primitives -------------------------------------------------


def circle_point(t: Fraction) -> Point:
    """Rational point of the unit circle with tan(angle/2) = t."""
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def scale(p: Point, s: Fraction) -> Point:
    return (p[0] * s, p[1] * s)


def cross(p: Point, q: Point) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def dot(p: Point, q: Point) -> Fraction:
    return p[0] * q[0] + p[1] * q[1]


def rot90ccw(p: Point) -> Point:
    return (-p[1], p[0])


def angle_rank(p: Point):
    """Strict sort key equal to the counterclockwise angle of the direction
    p from the positive x axis; two points get equal keys iff they lie on
    the same ray from the origin."""
    x, y = p
    if x == 0 and y == 0:
        raise ValueError("angle of the origin is undefined")
    if y > 0:
        return (0, 1, Fraction(-x, y))
    if y == 0 and x > 0:
        return (0, 0, F0)
    if y == 0:
        return (1, 0, F0)
    return (1, 1, Fraction(-x, y))


def ccw_angle_key(u: Point, d: Point):
    """Sort key equal to the angle of d measured counterclockwise from u,
    exact, in (0, 2*pi).  Directions parallel to u are rejected (the caller
    guarantees genericity rules them out)."""
    c = cross(u, d)
    t = dot(u, d)
    if c == 0:
        if t > 0:
            raise DegenerateDrawing("direction parallel to the reference ray")
        return (1, F0)
    if c > 0:
        return (0, Fraction(-t, c))
    return (2, Fraction(-t, c))


def chord_param(a: Point, b: Point, p: Point) -> Fraction:
    """Parameter t with p = a + t*(b-a), for p on the line ab."""
    r = sub(b, a)
    if abs(r[0]) >= abs(r[1]):
        return (p[0] - a[0]) / r[0]
    return (p[1] - a[1]) / r[1]


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Intersection point of the lines ab and cd (must not be parallel)."""
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    if denom == 0:
        raise DegenerateDrawing("parallel chords reported as crossing")
    t = cross(sub(c, a), s) / denom
    return add(a, scale(r, t))


def ray_hits_chord(x: Point, a: Point, b: Point) -> tuple[Fraction, Fraction] | None:
    """Solve s*x = a + r*(b-a) exactly.  Returns (r, s) when the open chord
    (0 < r < 1) meets the open ray beyond x (s > 1), else None."""
    det = cross(x, sub(a, b))
    if det == 0:
        return None
    s = cross(a, sub(a, b)) / det
    r = cross(x, a) / det
    if 0 < r < 1 and s > 1:
        return (r, s)
    return None


# -- drawings and their crossing inventories ---------------------------------


@dataclass
class ChordDrawing:
    """Vertices in convex position on the unit circle, edges as chords."""

    graph: WeightedGraph
    points: list[Point]
    params: list[Fraction]

    def point(self, v: int) -> Point:
        return self.points[v]


@dataclass
class RayHit:
    """A chord crossed by the outward ray segment of some crossing."""

    edge: Edge
    r: Fraction  # position along the chord, endpoints ordered low < high
    s: Fraction  # position along the ray (s > 1 means beyond the crossing)


@dataclass
class CrossingRecord:
    """One chord crossing, with the ray data needed for bending."""

    e: Edge
    f: Edge
    point: Point
    param_e: Fraction  # crossing position along e (low-to-high direction)
    param_f: Fraction
    crossed: list[RayHit] = field(default_factory=list)


@dataclass
class CrossingInventory:
    crossings: list[CrossingRecord]

    @property
    def s(self) -> int:
        return len(self.crossings)

    def m(self, i: int) -> int:
        return len(self.crossings[i].crossed)


def _interleaves(e: Edge, f: Edge, pos: dict[int, int], n: int) -> bool:
    """Chords with endpoints on a circle cross iff their endpoint pairs
    interleave in the cyclic order."""
    ia, ib = sorted((pos[e[0]], pos[e[1]]))
    inside_c = ia < pos[f[0]] < ib
    inside_d = ia < pos[f[1]] < ib
    return inside_c != inside_d


def enumerate_crossings(drawing: ChordDrawing) -> CrossingInventory:
    """All chord crossings with their outward-ray hit lists.

    Every general-position predicate is checked here with exact arithmetic;
    a violation raises DegenerateDrawing.
    """
    g = drawing.graph
    pts = drawing.points
    ranks = {}
    for v in range(g.n):
        rk = angle_rank(pts[v])
        if rk in ranks:
            raise DegenerateDrawing(f"vertices {ranks[rk]} and {v} share a ray")
        ranks[rk] = v
    order = sorted(range(g.n), key=lambda v: angle_rank(pts[v]))
    pos = {v: i for i, v in enumerate(order)}
    edges = g.edges()

    for (u, v) in edges:
        a, b = pts[u], pts[v]
        for w in range(g.n):
            if w in (u, v):
                continue
            if cross(sub(b, a), sub(pts[w], a)) == 0 and 0 < chord_param(a, b, pts[w]) < 1:
                raise DegenerateDrawing(f"vertex {w} lies on chord {(u, v)}")
        if cross(sub(b, a), sub(ORIGIN, a)) == 0 and 0 < chord_param(a, b, ORIGIN) < 1:
            raise DegenerateDrawing(f"chord {(u, v)} passes through the centre")

    crossings: list[CrossingRecord] = []
    seen_points: dict[Point, tuple[Edge, Edge]] = {}
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            e, f = edges[i], edges[j]
            if set(e) & set(f):
                continue
            if not _interleaves(e, f, pos, g.n):
                continue
            p = segment_intersection(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])
            if p in seen_points:
                raise DegenerateDrawing(
                    f"three chords concurrent at {p}: {seen_points[p]} and {(e, f)}"
                )
            seen_points[p] = (e, f)
            crossings.append(
                CrossingRecord(
                    e=e,
                    f=f,
                    point=p,
                    param_e=chord_param(pts[e[0]], pts[e[1]], p),
                    param_f=chord_param(pts[f[0]], pts[f[1]], p),
                )
            )

    # Distinct crossings on distinct rays, and never on a vertex ray.
    cross_ranks: dict[tuple, CrossingRecord] = {}
    for rec in crossings:
        rk = angle_rank(rec.point)
        if rk in cross_ranks:
            raise DegenerateDrawing("two crossings share a ray from the centre")
        if rk in ranks:
            raise DegenerateDrawing("a crossing shares a ray with a vertex")
        cross_ranks[rk] = rec

    # Ray hit lists, ordered outward (ascending s).
    for rec in crossings:
        hits = []
        for (u, v) in edges:
            hit = ray_hits_chord(rec.point, pts[u], pts[v])
            if hit is not None:
                hits.append(RayHit(edge=(u, v), r=hit[0], s=hit[1]))
        hits.sort(key=lambda h: h.s)
        for a, b in zip(hits, hits[1:]):
            if a.s == b.s:
                raise DegenerateDrawing("two chords meet the ray at one point")
        rec.crossed = hits

    crossings.sort(key=lambda rec: angle_rank(rec.point))
    return CrossingInventory(crossings)


def draw_on_circle(
    g: WeightedGraph, seed: int | None = None, max_attempts: int = 1000
) -> ChordDrawing:
    """Place vertices at rational circle points and retry along a fixed
    deterministic schedule until the drawing is generic.

    The first attempt keeps vertices in index order around the circle (so
    cycles drawn in their natural order come out crossing-free); later
    attempts shuffle.  Denominator bounds grow along the schedule, which
    makes every degeneracy a codimension-1 coincidence that a retry avoids.
    """
    rng = random.Random(seed if seed is not None else 1)
    last_err: Exception | None = None
    for attempt in range(max_attempts):
        den_bound = 1000 * (attempt + 1)
        params = [
            Fraction(rng.randrange(-(10 ** 6), 10 ** 6 + 1), rng.randrange(1, den_bound + 1))
            for _ in range(g.n)
        ]
        params.sort()
        if len(set(params)) != g.n:
            last_err = DegenerateDrawing("repeated circle parameter")
            continue
        slots = list(range(g.n))
        if attempt > 0:
            rng.shuffle(slots)
        points: list[Point] = [ORIGIN] * g.n
        vparams: list[Fraction] = [F0] * g.n
        for slot, v in enumerate(slots):
            points[v] = circle_point(params[slot])
            vparams[v] = params[slot]
        drawing = ChordDrawing(g, points, vparams)
        try:
            enumerate_crossings(drawing)
        except DegenerateDrawing as err:
            last_err = err
            continue
        return drawing
    raise DegeneratePlacement(
        f"no generic placement within {max_attempts} attempts: {last_err}"
    )
