"""Exact counting engines against the definition and against each other."""

import random
from fractions import Fraction

import pytest

from ringblow import (
    NonPlanarInput,
    WeightedGraph,
    complete_graph,
    count_pm_exact,
    count_pm_fkt,
    cycle_graph,
)
from ringblow.core import complete_bipartite, disjoint_union, empty_graph, path_graph
from ringblow.count import iter_perfect_matchings, matching_weight, planar_embed

from conftest import cube3, grid_graph, petersen, pm_count_reference, random_graph


def test_anchor_counts():
    assert count_pm_exact(cycle_graph(6)) == 2
    assert count_pm_exact(complete_graph(4)) == 3
    assert count_pm_exact(complete_bipartite(3, 3)) == 6
    assert count_pm_exact(complete_graph(5)) == 0
    assert count_pm_exact(cube3()) == 9
    assert count_pm_exact(petersen()) == 6
    assert count_pm_exact(grid_graph(4, 4)) == 36


def test_empty_graph_counts_one():
    assert count_pm_exact(empty_graph(0)) == 1


def test_isolated_vertex_kills_count():
    assert count_pm_exact(empty_graph(2)) == 0
    g = disjoint_union(path_graph(2), empty_graph(1))
    assert count_pm_exact(g) == 0  # odd order anyway
    g = disjoint_union(path_graph(2), empty_graph(2))
    assert count_pm_exact(g) == 0


def test_weights_multiply_along_matchings():
    g = WeightedGraph(2, [(0, 1, Fraction(1, 2))])
    assert count_pm_exact(g) == Fraction(1, 2)
    # square with one -1 side: the two matchings cancel
    sq = WeightedGraph(4, [(0, 1, -1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
    assert count_pm_exact(sq) == 0


def test_enumeration_matches_definition_seeded_sweep():
    rng = random.Random(202)
    for _ in range(60):
        g = random_graph(rng, n_choices=(2, 4, 6, 8), connected=False)
        weighted = WeightedGraph(
            g.n,
            [
                (u, v, Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
                for (u, v) in g.edges()
            ],
        )
        want = pm_count_reference(weighted)
        assert count_pm_exact(weighted) == want
        brute = sum(
            (matching_weight(weighted, m) for m in iter_perfect_matchings(weighted)),
            Fraction(0),
        )
        assert brute == want


def test_pendant_chain_reductions_agree():
    # long induced paths exercise the forced degree-1/2 eliminations
    rng = random.Random(203)
    for _ in range(20):
        core = random_graph(rng, n_choices=(4, 6), connected=True)
        edges = [(u, v, Fraction(1)) for (u, v) in core.edges()]
        n = core.n
        for v in range(0, core.n, 2):
            edges += [(v, n, Fraction(1)), (n, n + 1, Fraction(1))]
            n += 2
        g = WeightedGraph(n, edges)
        assert count_pm_exact(g) == pm_count_reference(g)


def test_planar_embed_detects_planarity():
    assert planar_embed(complete_graph(4)) is not None
    assert planar_embed(complete_bipartite(3, 3)) is None
    assert planar_embed(complete_graph(5)) is None


def test_fkt_matches_exact_on_anchors():
    assert count_pm_fkt(cycle_graph(6)) == 2
    assert count_pm_fkt(complete_graph(4)) == 3
    assert count_pm_fkt(cube3()) == 9
    assert count_pm_fkt(grid_graph(4, 4)) == 36
    assert count_pm_fkt(complete_graph(5)) == 0


def test_fkt_rejects_nonplanar_and_negative():
    with pytest.raises(NonPlanarInput):
        count_pm_fkt(complete_bipartite(3, 3))
    with pytest.raises(ValueError):
        count_pm_fkt(WeightedGraph(2, [(0, 1, -1)]))


def test_fkt_handles_rational_weights():
    g = WeightedGraph(4, [(0, 1, Fraction(1, 2)), (2, 3, Fraction(3, 2))])
    assert count_pm_fkt(g) == Fraction(3, 4)
