"""Exact circle drawings: predicates, crossings, genericity."""

import random
from fractions import Fraction

import pytest

from ringblow import WeightedGraph, complete_graph
from ringblow.core import complete_bipartite, cycle_graph
from ringblow.geometry import (
    DegenerateDrawing,
    angle_rank,
    chord_param,
    circle_point,
    cross,
    draw_on_circle,
    enumerate_crossings,
    ray_hits_chord,
    segment_intersection,
    sub,
)

from conftest import random_graph


def test_circle_points_are_rational_and_on_circle():
    for t in (Fraction(0), Fraction(1, 3), Fraction(-7, 2), Fraction(12)):
        x, y = circle_point(t)
        assert x * x + y * y == 1


def test_angle_rank_sorts_counterclockwise():
    pts = [
        (Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(1)),
        (Fraction(0), Fraction(1)),
        (Fraction(-1), Fraction(1)),
        (Fraction(-1), Fraction(0)),
        (Fraction(-1), Fraction(-1)),
        (Fraction(0), Fraction(-1)),
        (Fraction(1), Fraction(-1)),
    ]
    ranked = sorted(pts, key=angle_rank)
    assert ranked == pts
    # scaling a point does not change its rank
    assert angle_rank((Fraction(2), Fraction(2))) == angle_rank(
        (Fraction(5), Fraction(5))
    )
    with pytest.raises(ValueError):
        angle_rank((Fraction(0), Fraction(0)))


def test_segment_intersection_is_exact():
    a, b = (Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))
    c, d = (Fraction(0), Fraction(2)), (Fraction(2), Fraction(0))
    p = segment_intersection(a, b, c, d)
    assert p == (Fraction(1), Fraction(1))
    assert chord_param(a, b, p) == Fraction(1, 2)
    with pytest.raises(DegenerateDrawing):
        segment_intersection(a, b, (Fraction(1), Fraction(1)), (Fraction(3), Fraction(3)))


def test_ray_hits_chord_windows():
    x = (Fraction(1), Fraction(0))
    # chord crossing the ray beyond x
    hit = ray_hits_chord(x, (Fraction(2), Fraction(-1)), (Fraction(2), Fraction(1)))
    assert hit is not None
    r, s = hit
    assert s == 2 and r == Fraction(1, 2)
    # chord on the near side of x: no hit
    assert ray_hits_chord(x, (Fraction(1, 2), Fraction(-1)), (Fraction(1, 2), Fraction(1))) is None
    # chord through the origin ray's far end but outside (0,1) on the chord
    assert ray_hits_chord(x, (Fraction(2), Fraction(1)), (Fraction(2), Fraction(3))) is None


def test_draw_on_circle_is_deterministic_and_generic():
    g = complete_bipartite(3, 3)
    d1 = draw_on_circle(g, seed=1)
    d2 = draw_on_circle(g, seed=1)
    assert d1.points == d2.points
    d3 = draw_on_circle(g, seed=9)
    assert d3.points != d1.points
    # all on the unit circle, pairwise distinct
    for (x, y) in d1.points:
        assert x * x + y * y == 1
    assert len(set(d1.points)) == g.n


def test_no_three_chords_concurrent_in_drawings():
    rng = random.Random(404)
    for _ in range(10):
        g = random_graph(rng, n_choices=(6, 8), connected=True)
        drawing = draw_on_circle(g, seed=rng.randint(0, 999))
        inv = enumerate_crossings(drawing)
        seen = {}
        for rec in inv.crossings:
            assert rec.point not in seen, "three chords through one point"
            seen[rec.point] = rec


def test_enumerate_crossings_matches_brute_pair_test():
    rng = random.Random(405)
    for _ in range(10):
        g = random_graph(rng, n_choices=(6, 8), connected=False)
        drawing = draw_on_circle(g, seed=rng.randint(0, 999))
        inv = enumerate_crossings(drawing)
        got = {(rec.e, rec.f) for rec in inv.crossings}
        expect = set()
        edges = g.edges()
        for i, e in enumerate(edges):
            for f in edges[i + 1 :]:
                if set(e) & set(f):
                    continue
                a, b = drawing.point(e[0]), drawing.point(e[1])
                c, d = drawing.point(f[0]), drawing.point(f[1])
                # opposite-side tests, exact
                s1 = cross(sub(b, a), sub(c, a))
                s2 = cross(sub(b, a), sub(d, a))
                s3 = cross(sub(d, c), sub(a, c))
                s4 = cross(sub(d, c), sub(b, c))
                if s1 * s2 < 0 and s3 * s4 < 0:
                    expect.add(tuple(sorted((e, f))))
        assert {tuple(sorted(p)) for p in got} == expect


def test_crossing_params_locate_the_point():
    g = complete_graph(4)
    drawing = draw_on_circle(g, seed=3)
    inv = enumerate_crossings(drawing)
    assert inv.s == 1  # K4 in convex position: the two diagonals cross once
    rec = inv.crossings[0]
    a, b = drawing.point(rec.e[0]), drawing.point(rec.e[1])
    assert chord_param(a, b, rec.point) == rec.param_e
    assert 0 < rec.param_e < 1 and 0 < rec.param_f < 1


def test_dense_drawing_stays_exact():
    g = cycle_graph(12)
    drawing = draw_on_circle(g, seed=2)
    assert enumerate_crossings(drawing).s == 0
