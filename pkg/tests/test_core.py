"""Graph type, file format, and the small structural operations."""

import random
from fractions import Fraction

import pytest

from ringblow import (
    GraphFormatError,
    WeightedGraph,
    complete_graph,
    cycle_graph,
    parse_graph,
    serialize_graph,
)
from ringblow.core import (
    Verdict,
    contract_edge,
    delete_vertices,
    disjoint_union,
    edge_key,
    empty_graph,
    format_rational,
    induced_subgraph,
    iter_set_bits,
    parse_rational,
    path_graph,
    relabel,
)

from conftest import random_graph


def test_edge_key_orders_endpoints():
    assert edge_key(3, 1) == (1, 3)
    assert edge_key(1, 3) == (1, 3)


def test_rational_printing_integers_and_fractions():
    assert format_rational(Fraction(6)) == "6"
    assert format_rational(Fraction(-1)) == "-1"
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)


def test_parse_rational_rejects_garbage():
    with pytest.raises(GraphFormatError):
        parse_rational("seven")
    with pytest.raises(GraphFormatError):
        parse_rational("1/0")


def test_graph_basics():
    g = WeightedGraph(4, [(0, 1), (1, 2, Fraction(-1)), (2, 3, "1/2")])
    assert g.n == 4 and g.m == 3
    assert g.has_edge(1, 0)
    assert g.weight(2, 1) == Fraction(-1)
    assert g.weight(2, 3) == Fraction(1, 2)
    assert g.neighbors(1) == [0, 2]
    assert not g.is_unweighted()
    assert g.unweighted_copy().is_unweighted()


def test_duplicate_edges_rejected():
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 1), (1, 0)])
    g = WeightedGraph(3, [(0, 1)])
    with pytest.raises(ValueError):
        g.with_edge(1, 0)


def test_loops_and_range_rejected():
    with pytest.raises(ValueError):
        WeightedGraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 3)])


def test_serialize_parse_roundtrip_seeded_sweep():
    rng = random.Random(101)
    for _ in range(50):
        g = random_graph(rng, n_choices=(0, 1, 4, 6, 9), connected=False)
        if rng.random() < 0.5:
            g = WeightedGraph(
                g.n,
                [
                    (u, v, Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
                    for (u, v) in g.edges()
                    if True
                ],
            )
            g = WeightedGraph(
                g.n, [(u, v, w) for (u, v), w in g.weights.items() if w != 0]
            )
        back = parse_graph(serialize_graph(g))
        assert back.n == g.n
        assert back.weights == g.weights


def test_parse_graph_ignores_comments_and_blanks():
    text = "# a graph\n3 1\n\n0 1 1\n# done\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 1


def test_parse_graph_error_carries_line_number():
    with pytest.raises(GraphFormatError) as err:
        parse_graph("3 2\n0 1 1\n0 nonsense 1\n")
    assert err.value.line == 3


def test_parse_graph_wrong_edge_count():
    with pytest.raises(GraphFormatError):
        parse_graph("3 2\n0 1 1\n")


def test_induced_subgraph_keeps_weights_and_maps_back():
    g = WeightedGraph(5, [(0, 1), (1, 2, Fraction(1, 3)), (3, 4), (1, 4)])
    sub, back = induced_subgraph(g, [1, 2, 4])
    assert back == [1, 2, 4]
    assert sub.n == 3
    assert sub.weights == {(0, 1): Fraction(1, 3), (0, 2): Fraction(1)}


def test_delete_vertices_complements_induced():
    g = complete_graph(5)
    kept, back = delete_vertices(g, [0, 2])
    assert back == [1, 3, 4]
    assert kept.m == 3


def test_contract_edge_collapses_parallels():
    # contracting one side of a triangle leaves a single edge
    g = cycle_graph(3)
    h, mapping = contract_edge(g, 0, 1)
    assert h.n == 2 and h.m == 1
    assert mapping[0] == mapping[1]


def test_contract_edge_requires_edge_and_unit_weights():
    g = path_graph(3)
    with pytest.raises(ValueError):
        contract_edge(g, 0, 2)
    weighted = WeightedGraph(2, [(0, 1, Fraction(2))])
    with pytest.raises(ValueError):
        contract_edge(weighted, 0, 1)


def test_relabel_is_a_permutation_action():
    g = path_graph(3)
    h = relabel(g, [2, 0, 1])
    assert h.has_edge(2, 0) and h.has_edge(0, 1) and not h.has_edge(2, 1)
    with pytest.raises(ValueError):
        relabel(g, [0, 0, 1])


def test_disjoint_union_offsets_second_graph():
    g = disjoint_union(path_graph(2), path_graph(2))
    assert g.n == 4
    assert g.has_edge(0, 1) and g.has_edge(2, 3) and not g.has_edge(1, 2)


def test_verdict_is_falsy_with_reason():
    bad = Verdict(False, "because")
    assert not bad and bad.why == "because"
    assert Verdict(True)


def test_iter_set_bits():
    assert list(iter_set_bits(0b101001)) == [0, 3, 5]
    assert list(iter_set_bits(0)) == []


def test_families():
    assert empty_graph(3).m == 0
    assert complete_graph(5).m == 10
    assert cycle_graph(4).m == 4
    assert path_graph(4).m == 3
