"""Ring-blowup reduction and weight stripping.

`build_ring_blowup` turns an unweighted graph into a +-1-weighted graph
with the same matching count whose structure is a ring blowup: a
subgraph of the blowup of a planar graph (the reduct) with all doubled
vertices on a common face.  The input is drawn on a circle with exact
rational coordinates; every chord crossing is removed by cutting the two
chords there and routing the four loose halves outward along the centre
ray through a narrow corridor to four fresh circle vertices, the two
halves of each cut chord being reconnected by an edge outside the
circle.  Each corridor strand crosses every chord the ray crosses, so
each such chord picks up four sign-crossing pieces, two per cut chord;
the signs cancel in pairs and the count is preserved exactly.

`strip_weights` removes the -1 weights: with x substituted for -1 the
count is a polynomial in x with nonnegative integer coefficients, whose
values at integer points are counts of unweighted ring blowups obtained
by splicing parallel-path pieces into the -1 edges.  Evaluating through
an oracle and interpolating recovers the value at -1.
"""

from __future__ import annotations

import shlex
import subprocess
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import networkx as nx

from .core import (
    Edge,
    GraphFormatError,
    Verdict,
    WeightedGraph,
    edge_key,
    format_rational,
    parse_rational,
    serialize_graph,
)
from .count import count_pm_exact
from .gadgets import SignCrossingGadget, find_sign_crossing_gadget
from .geometry import (
    ChordDrawing,
    CrossingInventory,
    DegenerateDrawing,
    DegeneratePlacement,
    angle_rank,
    ccw_angle_key,
    dot,
    draw_on_circle,
    enumerate_crossings,
    rot90ccw,
    sub,
)

F1 = Fraction(1)
NEG1 = Fraction(-1)


class WeightedInput(ValueError):
    """An operation that requires unit weights saw something else."""


class OraclePrecondition(ValueError):
    """A -1 edge touches a doubled vertex; stripping does not apply."""


class NegativeWeight(ValueError):
    """Integer weight pieces exist for nonnegative weights only."""


@dataclass
class RingBlowup:
    """A graph presented as a subgraph of a planar blowup.

    `reduct` is the planar graph; the vertices in `outer` (all on a
    common face) are doubled.  `clones` maps each outer reduct vertex to
    its copies in `graph` (two for a full blowup; subgraphs may keep only
    one), `inner` maps every other reduct vertex to its single copy.
    """

    graph: WeightedGraph
    reduct: WeightedGraph
    outer: tuple[int, ...]
    clones: dict[int, tuple[int, ...]]
    inner: dict[int, int]

    def blowup_vertices(self) -> set[int]:
        """Graph vertices that are clone copies of outer reduct vertices."""
        out: set[int] = set()
        for copies in self.clones.values():
            out.update(copies)
        return out

    def roles(self) -> dict[int, tuple[int, int]]:
        """graph vertex -> (reduct vertex, copy) with copy 0 for inner
        vertices and 1/2 for the clones."""
        role: dict[int, tuple[int, int]] = {}
        for p, v in self.inner.items():
            role[v] = (p, 0)
        for p, copies in self.clones.items():
            for t, a in enumerate(copies):
                role[a] = (p, t + 1)
        return role


def identity_ring_blowup(g: WeightedGraph) -> RingBlowup:
    """Any plane-drawable graph is a ring blowup with nothing doubled."""
    reduct = g.unweighted_copy()
    return RingBlowup(
        graph=g,
        reduct=reduct,
        outer=(),
        clones={},
        inner={v: v for v in range(g.n)},
    )


# -- anchored planarity helpers ------------------------------------------------


def embeds_with_common_face(g: WeightedGraph, verts) -> bool:
    """Whether g has a planar embedding with all of `verts` on one face.

    Tested by adding an apex adjacent to every vertex in `verts`.
    """
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    apex = g.n
    for v in verts:
        ng.add_edge(apex, v)
    ok, _ = nx.check_planarity(ng)
    return bool(ok)


def embeds_in_disk_with_boundary(g: WeightedGraph, boundary: list[int]) -> bool:
    """Whether g embeds in a disk whose boundary meets exactly the listed
    vertices in the listed cyclic order (either orientation).

    Tested by adding a subdivided cycle through the boundary vertices
    plus an apex on the subdivision vertices, which pins the cycle as
    the disk boundary.
    """
    if len(boundary) <= 2:
        return embeds_with_common_face(g, boundary)
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    fresh = g.n
    apex = g.n + len(boundary)
    for i, v in enumerate(boundary):
        u = boundary[(i + 1) % len(boundary)]
        ng.add_edge(v, fresh)
        ng.add_edge(fresh, u)
        ng.add_edge(fresh, apex)
        fresh += 1
    ok, _ = nx.check_planarity(ng)
    return bool(ok)


# -- the reduction --------------------------------------------------------------


def build_ring_blowup(g: WeightedGraph, seed: int | None = None) -> RingBlowup:
    """Reduce an unweighted graph to a +-1-weighted ring blowup with the
    same perfect-matching count."""
    if not g.is_unweighted():
        raise WeightedInput("the reduction takes unweighted graphs only")
    drawing = draw_on_circle(g, seed)
    inventory = enumerate_crossings(drawing)
    if inventory.s == 0:
        return identity_ring_blowup(g)
    gadget = find_sign_crossing_gadget()
    builder = _Builder(g, drawing, inventory, gadget)
    return builder.run()


class _Builder:
    """One-shot state for assembling the blowup from the inventory."""

    GA, GB, GC, GD = "e1", "f1", "e2", "f2"

    def __init__(self, g, drawing, inventory, gadget):
        self.g: WeightedGraph = g
        self.drawing: ChordDrawing = drawing
        self.inv: CrossingInventory = inventory
        self.gadget: SignCrossingGadget = gadget
        self.next_id = g.n
        self.edge_weights: dict[Edge, Fraction] = {}
        # gadget copy base id per (crossing, layer, strand 1..4)
        self.gbase: dict[tuple[int, int, int], int] = {}
        # block vertex ids per (crossing, slot 1..4), counterclockwise
        self.block: dict[tuple[int, int], int] = {}
        # strand assigned to each cut half, keyed by (crossing, edge, endpoint)
        self.strand_of: dict[tuple[int, Edge, int], int] = {}
        # sign pieces per (crossing, layer, cut chord); each must be 2
        self.pair_uses: dict[tuple[int, int, Edge], int] = {}

    def alloc(self, k: int) -> int:
        base = self.next_id
        self.next_id += k
        return base

    def add_edge(self, a: int, b: int, w: Fraction) -> None:
        k = edge_key(a, b)
        assert a != b and k not in self.edge_weights, f"edge clash at {k}"
        self.edge_weights[k] = w

    def gvert(self, i: int, j: int, sigma: int, label: str) -> int:
        return self.gbase[(i, j, sigma)] + self.gadget.attachments[label]

    def run(self) -> RingBlowup:
        self._allocate()
        self._assign_strands()
        self._lay_strands()
        self._walk_edges()
        self._outer_edges()
        for n_uses in self.pair_uses.values():
            assert n_uses == 2, "sign pieces must pair up per crossed chord"
        graph = WeightedGraph(
            self.next_id,
            [(u, v, w) for (u, v), w in self.edge_weights.items()],
        )
        perm = self._sweep_permutation(graph.n)
        self._perm_cache = perm
        graph = _apply_relabel(graph, perm)
        ring = self._make_reduct(graph, perm)
        self._final_checks(ring)
        return ring

    # ids ---------------------------------------------------------------

    def _allocate(self) -> None:
        for i, rec in enumerate(self.inv.crossings):
            for j in range(len(rec.crossed)):
                for sigma in range(1, 5):
                    self.gbase[(i, j, sigma)] = self.alloc(self.gadget.graph.n)
            for slot in range(1, 5):
                self.block[(i, slot)] = self.alloc(1)

    # geometry-driven combinatorics --------------------------------------

    def _assign_strands(self) -> None:
        """Sort the four cut halves of each crossing by angle from the
        outward ray; half k continues as corridor strand k.  Consecutive
        halves must alternate between the two cut chords."""
        for i, rec in enumerate(self.inv.crossings):
            ray = rec.point
            halves = []
            for e in (rec.e, rec.f):
                for end in e:
                    d = sub(self.drawing.point(end), ray)
                    halves.append((ccw_angle_key(ray, d), e, end))
            halves.sort(key=lambda t: t[0])
            edges_in_order = [h[1] for h in halves]
            assert (
                edges_in_order[0] == edges_in_order[2]
                and edges_in_order[1] == edges_in_order[3]
                and edges_in_order[0] != edges_in_order[1]
            ), "cut halves must alternate around the crossing"
            for sigma, (_, e, end) in enumerate(halves, start=1):
                self.strand_of[(i, e, end)] = sigma

    def strand_entry(self, i: int, sigma: int) -> int:
        """First vertex of strand sigma seen from the crossing mouth."""
        m = len(self.inv.crossings[i].crossed)
        if m == 0:
            return self.block[(i, 5 - sigma)]
        return self.gvert(i, 0, sigma, self.GA)

    def _lay_strands(self) -> None:
        """Chain each strand's pieces from the mouth out to its block
        vertex, and add every piece's internal edges."""
        gg = self.gadget.graph
        for i, rec in enumerate(self.inv.crossings):
            m = len(rec.crossed)
            for sigma in range(1, 5):
                for j in range(m):
                    base = self.gbase[(i, j, sigma)]
                    for (u, v) in gg.edges():
                        self.add_edge(base + u, base + v, gg.weight(u, v))
                    if j + 1 < m:
                        self.add_edge(
                            self.gvert(i, j, sigma, self.GC),
                            self.gvert(i, j + 1, sigma, self.GA),
                            F1,
                        )
                if m > 0:
                    self.add_edge(
                        self.gvert(i, m - 1, sigma, self.GC),
                        self.block[(i, 5 - sigma)],
                        F1,
                    )

    def _walk_edges(self) -> None:
        """Rebuild every original chord as a spliced path: cut at each
        crossing it participates in, pass through four sign pieces for
        each corridor that crosses it."""
        events: dict[Edge, list[tuple[Fraction, int, tuple]]] = {
            e: [] for e in self.g.edges()
        }
        for i, rec in enumerate(self.inv.crossings):
            events[rec.e].append((rec.param_e, i, ("bend",)))
            events[rec.f].append((rec.param_f, i, ("bend",)))
            normal = rot90ccw(rec.point)
            for j, hit in enumerate(rec.crossed):
                u, v = hit.edge
                walk_dir = sub(self.drawing.point(v), self.drawing.point(u))
                side = dot(normal, walk_dir)
                assert side != 0, "chord through the centre was excluded"
                order = (4, 3, 2, 1) if side > 0 else (1, 2, 3, 4)
                events[hit.edge].append((hit.r, i, ("pass", j, order)))
        for (u, v), evs in events.items():
            evs.sort(key=lambda t: t[0])
            assert len({p for p, _, _ in evs}) == len(evs), "event params clash"
            current = u
            for _, i, ev in evs:
                if ev[0] == "bend":
                    rec = self.inv.crossings[i]
                    lo_strand = self.strand_of[(i, (u, v), u)]
                    hi_strand = self.strand_of[(i, (u, v), v)]
                    self.add_edge(current, self.strand_entry(i, lo_strand), F1)
                    current = self.strand_entry(i, hi_strand)
                else:
                    _, j, order = ev
                    for sigma in order:
                        self.add_edge(
                            current, self.gvert(i, j, sigma, self.GB), F1
                        )
                        current = self.gvert(i, j, sigma, self.GD)
                        key = (i, j, self._carried_edge(i, sigma))
                        self.pair_uses[key] = self.pair_uses.get(key, 0) + 1
            self.add_edge(current, v, F1)

    def _carried_edge(self, i: int, sigma: int) -> Edge:
        rec = self.inv.crossings[i]
        for e in (rec.e, rec.f):
            for end in e:
                if self.strand_of[(i, e, end)] == sigma:
                    return e
        raise AssertionError("strand without a half")

    def _outer_edges(self) -> None:
        """Reconnect the halves of each cut chord outside the circle.

        Blocks 1..4 sit counterclockwise and pair with strands 4..1, so
        the edges 1-3 and 2-4 each join the two strands of one chord."""
        for i in range(self.inv.s):
            e13 = (self._carried_by_block(i, 1), self._carried_by_block(i, 3))
            e24 = (self._carried_by_block(i, 2), self._carried_by_block(i, 4))
            assert e13[0] == e13[1] and e24[0] == e24[1]
            self.add_edge(self.block[(i, 1)], self.block[(i, 3)], F1)
            self.add_edge(self.block[(i, 2)], self.block[(i, 4)], F1)

    def _carried_by_block(self, i: int, slot: int) -> Edge:
        return self._carried_edge(i, 5 - slot)

    # output ------------------------------------------------------------

    def _sweep_permutation(self, n: int) -> list[int]:
        """Relabel along the circle: originals at their own angle,
        corridor clusters at their ray angle, pieces layered outward and
        blocks last; keeps the counting memo local."""
        keys: list[tuple] = [None] * n
        for v in range(self.g.n):
            keys[v] = (angle_rank(self.drawing.point(v)), 0, 0, 0)
        for (i, j, sigma), base in self.gbase.items():
            a = angle_rank(self.inv.crossings[i].point)
            for t in range(self.gadget.graph.n):
                keys[base + t] = (a, 1 + j, sigma, t)
        for (i, slot), vid in self.block.items():
            a = angle_rank(self.inv.crossings[i].point)
            keys[vid] = (a, 1 + len(self.inv.crossings[i].crossed), 9, slot)
        order = sorted(range(n), key=lambda v: keys[v])
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        return perm

    def _make_reduct(self, graph: WeightedGraph, perm: list[int]) -> RingBlowup:
        """Identify the two blocks on each side of every corridor; the
        identified vertices form the doubled outer set."""
        block_ids = {perm[v] for v in self.block.values()}
        group: dict[int, tuple[str, tuple]] = {}
        for (i, slot), vid in self.block.items():
            group[perm[vid]] = ("X", i) if slot in (1, 2) else ("Y", i)

        reduct_of: dict[int, int] = {}
        outer: list[int] = []
        clones: dict[int, tuple[int, int]] = {}
        inner: dict[int, int] = {}
        nxt = 0
        seen_groups: dict[tuple[str, int], int] = {}
        for v in range(graph.n):
            if v not in block_ids:
                reduct_of[v] = nxt
                inner[nxt] = v
                nxt += 1
                continue
            tag = group[v]
            if tag not in seen_groups:
                seen_groups[tag] = nxt
                outer.append(nxt)
                clones[nxt] = (v,)
                nxt += 1
            else:
                p = seen_groups[tag]
                clones[p] = clones[p] + (v,)
            reduct_of[v] = seen_groups[tag]
        assert all(len(pair) == 2 for pair in clones.values())

        redges: dict[Edge, Fraction] = {}
        for (a, b) in graph.edges():
            pa, pb = reduct_of[a], reduct_of[b]
            if pa == pb:
                continue  # the two copies' reconnection edge
            redges[edge_key(pa, pb)] = F1
        for i in range(self.inv.s):
            xa = reduct_of[perm[self.block[(i, 1)]]]
            ya = reduct_of[perm[self.block[(i, 3)]]]
            redges[edge_key(xa, ya)] = F1
        reduct = WeightedGraph(nxt, [(u, v, w) for (u, v), w in redges.items()])
        return RingBlowup(
            graph=graph,
            reduct=reduct,
            outer=tuple(outer),
            clones={p: (min(pr), max(pr)) for p, pr in clones.items()},
            inner=inner,
        )

    def _final_checks(self, ring: RingBlowup) -> None:
        g = ring.graph
        n0, m0 = self.g.n, self.g.m
        total_m = sum(len(r.crossed) for r in self.inv.crossings)
        expect = n0 + 24 * total_m + 4 * self.inv.s
        assert g.n == expect, "vertex count drifted from the size formula"
        assert g.n <= n0 + 12 * m0**3 + 4, "cubic size bound violated"
        blowup_verts = ring.blowup_vertices()
        for (u, v) in g.edges():
            w = g.weight(u, v)
            assert w in (F1, NEG1), "weights must stay +-1"
            if w == NEG1:
                assert u not in blowup_verts and v not in blowup_verts, (
                    "-1 edge touching a doubled vertex"
                )
        verdict = verify_ring_blowup(ring)
        assert verdict, f"structural check failed: {verdict.why}"
        # The part inside the circle must be drawable in the disk with
        # the circle vertices on the boundary in sweep order.
        boundary = self._circle_order()
        inner_edges = [
            (u, v, g.weight(u, v))
            for (u, v) in g.edges()
            if edge_key(u, v) not in self._outer_edge_keys()
        ]
        inner_graph = WeightedGraph(g.n, inner_edges)
        assert embeds_in_disk_with_boundary(inner_graph, boundary), (
            "inner part does not embed in the disk"
        )

    def _circle_order(self) -> list[int]:
        perm = self._perm_cache
        entries = []
        for v in range(self.g.n):
            entries.append((angle_rank(self.drawing.point(v)), 0, perm[v]))
        for (i, slot), vid in self.block.items():
            a = angle_rank(self.inv.crossings[i].point)
            entries.append((a, slot, perm[vid]))
        entries.sort(key=lambda t: (t[0], t[1]))
        return [vid for _, _, vid in entries]

    def _outer_edge_keys(self) -> set[Edge]:
        perm = self._perm_cache
        keys = set()
        for i in range(self.inv.s):
            keys.add(
                edge_key(perm[self.block[(i, 1)]], perm[self.block[(i, 3)]])
            )
            keys.add(
                edge_key(perm[self.block[(i, 2)]], perm[self.block[(i, 4)]])
            )
        return keys


def _apply_relabel(g: WeightedGraph, perm: list[int]) -> WeightedGraph:
    return WeightedGraph(
        g.n, [(perm[u], perm[v], w) for (u, v), w in g.weights.items()]
    )


def verify_ring_blowup(r: RingBlowup) -> Verdict:
    """Structural validity: planar reduct with the outer set on a common
    face, consistent copy maps, and every graph edge present in the
    blowup of the reduct."""
    g, q = r.graph, r.reduct
    outer = set(r.outer)
    if len(r.outer) != len(outer):
        return Verdict(False, "repeated outer vertex")
    if set(r.clones) != outer:
        return Verdict(False, "clone map keys differ from the outer set")
    if set(r.inner) != set(range(q.n)) - outer:
        return Verdict(False, "inner map keys must be the non-outer vertices")
    images: list[int] = list(r.inner.values())
    for copies in r.clones.values():
        if len(copies) not in (1, 2):
            return Verdict(False, "an outer vertex must keep one or two copies")
        images.extend(copies)
    if sorted(images) != list(range(g.n)):
        return Verdict(False, "copy maps must partition the graph vertices")
    for p in outer:
        if not 0 <= p < q.n:
            return Verdict(False, f"outer vertex {p} out of range")
    if not embeds_with_common_face(q, outer):
        return Verdict(False, "reduct has no embedding with the outer set on one face")
    role = r.roles()
    for (a, b) in g.edges():
        pa, ca = role[a]
        pb, cb = role[b]
        if pa == pb:
            if {ca, cb} != {1, 2}:
                return Verdict(False, f"edge {(a, b)} joins copies illegally")
            continue
        if not q.has_edge(pa, pb):
            return Verdict(
                False, f"edge {(a, b)} has no reduct edge {(pa, pb)}"
            )
    return Verdict(True)


# -- weight stripping ------------------------------------------------------------


@dataclass(frozen=True)
class MatchingPolynomial:
    """The matching count with x substituted for every -1 weight.

    Coefficient j counts the perfect matchings using exactly j of the
    substituted edges, so all coefficients are nonnegative integers;
    evaluating at 1 gives the all-ones count and at -1 the signed one.
    """

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @classmethod
    def interpolate(cls, points: list[int], values: list[Fraction]) -> "MatchingPolynomial":
        """Exact Newton interpolation through (points[i], values[i])."""
        assert len(points) == len(values) and points
        k = len(points)
        diffs = [Fraction(v) for v in values]
        steps: list[Fraction] = [diffs[0]]
        for level in range(1, k):
            nxt = [
                (diffs[i + 1] - diffs[i]) / (points[i + level] - points[i])
                for i in range(k - level)
            ]
            diffs = nxt
            steps.append(diffs[0])
        coeffs = [Fraction(0)] * k
        # expand sum of steps[j] * prod_{t<j} (x - points[t])
        basis = [Fraction(1)] + [Fraction(0)] * (k - 1)
        for j in range(k):
            for t in range(k):
                coeffs[t] += steps[j] * basis[t]
            if j + 1 < k:
                shifted = [Fraction(0)] * k
                for t in range(k - 1):
                    shifted[t + 1] += basis[t]
                    shifted[t] -= basis[t] * points[j]
                basis = shifted
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))


def integer_weight_gadget(w: int) -> tuple[WeightedGraph, int, int]:
    """A two-terminal planar piece that behaves like an edge of integer
    weight w: forcing the terminals through it has weight w, leaving
    them out has weight 1.  Returns (graph, terminal, terminal).

    w = 0 deletes the edge, w = 1 keeps it; w >= 2 is realized by w
    parallel two-paths between the terminals with a rung across each.
    """
    if w < 0:
        raise NegativeWeight("integer weight pieces need w >= 0")
    if w == 0:
        return WeightedGraph(2, []), 0, 1
    if w == 1:
        return WeightedGraph(2, [(0, 1, 1)]), 0, 1
    edges: list[tuple[int, int, int]] = []
    for t in range(w):
        a, b = 2 + 2 * t, 3 + 2 * t
        edges += [(0, a, 1), (a, b, 1), (b, 1, 1)]
    return WeightedGraph(2 + 2 * w, edges), 0, 1


def evaluation_instance(r: RingBlowup, k: int) -> RingBlowup:
    """The unweighted ring blowup whose count equals the matching
    polynomial of r at x = k: every -1 edge is replaced by the integer
    weight piece for k, mirrored in the reduct."""
    if k < 0:
        raise NegativeWeight("evaluation points must be nonnegative")
    role = r.roles()
    graph_edges: dict[Edge, Fraction] = {}
    reduct_edges: dict[Edge, Fraction] = dict(r.reduct.weights)
    neg: list[Edge] = []
    for (u, v), w in r.graph.weights.items():
        if w == F1:
            graph_edges[(u, v)] = F1
        elif w == NEG1:
            neg.append((u, v))
        else:
            raise WeightedInput(f"weight {w} on {(u, v)} is not +-1")
    gn, qn = r.graph.n, r.reduct.n
    inner = dict(r.inner)
    for (u, v) in neg:
        pu, pv = role[u][0], role[v][0]
        if k == 0:
            del reduct_edges[edge_key(pu, pv)]
            continue
        if k == 1:
            graph_edges[(u, v)] = F1
            continue
        del reduct_edges[edge_key(pu, pv)]
        for _ in range(k):
            a, b = gn, gn + 1
            pa, pb = qn, qn + 1
            gn += 2
            qn += 2
            for e in ((u, a), (a, b), (b, v)):
                graph_edges[edge_key(*e)] = F1
            for e in ((pu, pa), (pa, pb), (pb, pv)):
                reduct_edges[edge_key(*e)] = F1
            inner[pa] = a
            inner[pb] = b
    graph = WeightedGraph(gn, [(u, v, w) for (u, v), w in graph_edges.items()])
    reduct = WeightedGraph(qn, [(u, v, w) for (u, v), w in reduct_edges.items()])
    return RingBlowup(
        graph=graph,
        reduct=reduct,
        outer=r.outer,
        clones=dict(r.clones),
        inner=inner,
    )


CountOracle = Callable[[WeightedGraph], Fraction | int]


def extern_oracle(command: str) -> CountOracle:
    """Wrap a shell command as a counting oracle: it receives a graph
    file on standard input and must print the count as an integer."""

    def run(g: WeightedGraph) -> Fraction:
        text = serialize_graph(g)
        proc = subprocess.run(
            shlex.split(command),
            input=text.encode(),
            capture_output=True,
            check=True,
        )
        return Fraction(int(proc.stdout.strip()))

    return run


def strip_weights(
    r: RingBlowup,
    oracle: CountOracle | None = None,
    jobs: int = 1,
) -> Fraction:
    """Recover the signed count of a +-1-weighted ring blowup from an
    oracle that counts unweighted ring blowups only.

    Substituting x for -1 makes the count a polynomial of degree at most
    min(n/2, #negative edges); its values at 0..d are counts of
    unweighted ring blowups, so d+1 oracle calls and exact interpolation
    give the value at -1.
    """
    if oracle is None:
        oracle = count_pm_exact
    blowup_verts = r.blowup_vertices()
    neg = 0
    for (u, v), w in r.graph.weights.items():
        if w == F1:
            continue
        if w != NEG1:
            raise WeightedInput(f"weight {w} on {(u, v)} is not +-1")
        if u in blowup_verts or v in blowup_verts:
            raise OraclePrecondition(
                f"-1 edge {(u, v)} touches a doubled vertex"
            )
        neg += 1
    verdict = verify_ring_blowup(r)
    assert verdict, f"input is not a ring blowup: {verdict.why}"
    d = min(r.graph.n // 2, neg)
    points = list(range(d + 1))

    def instance_graph(k: int) -> WeightedGraph:
        # The splice adds inner two-paths only, so instances inherit the
        # input's structural validity; re-running the full check here
        # (planarity included) would dwarf the oracle cost on large
        # rings, and the test suite exercises it at small scale.
        inst = evaluation_instance(r, k)
        assert inst.graph.is_unweighted()
        return inst.graph

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(lambda k: oracle(instance_graph(k)), points))
    else:
        values = [oracle(instance_graph(k)) for k in points]
    values = [Fraction(v) for v in values]
    poly = MatchingPolynomial.interpolate(points, values)
    for c in poly.coefficients:
        assert c.denominator == 1 and c >= 0, "coefficients must count matchings"
    result = poly.evaluate(NEG1)
    assert result.denominator == 1
    return result


# -- files -----------------------------------------------------------------------


def serialize_ring_blowup(r: RingBlowup) -> str:
    lines = [f"{r.graph.n} {r.graph.m}"]
    for (u, v) in r.graph.edges():
        lines.append(f"{u} {v} {format_rational(r.graph.weight(u, v))}")
    lines.append(f"reduct {r.reduct.n} {r.reduct.m}")
    for (u, v) in r.reduct.edges():
        lines.append(f"{u} {v} {format_rational(r.reduct.weight(u, v))}")
    lines.append("outer " + " ".join(str(p) for p in r.outer))
    lines.append("clones")
    for p in sorted(r.clones):
        lines.append(f"{p}: " + " ".join(str(a) for a in r.clones[p]))
    lines.append("inner")
    for p in sorted(r.inner):
        lines.append(f"{p}: {r.inner[p]}")
    return "\n".join(lines) + "\n"


def parse_ring_blowup(text: str) -> RingBlowup:
    rows = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.strip().startswith("#")
    ]
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(rows):
            raise GraphFormatError("unexpected end of file", len(rows))
        row = rows[pos]
        pos += 1
        return row

    def read_graph(header: str, tag: str | None) -> WeightedGraph:
        ln, line = take()
        parts = line.split()
        if tag is not None:
            if not parts or parts[0] != tag:
                raise GraphFormatError(f"expected '{tag} n m'", ln)
            parts = parts[1:]
        if len(parts) != 2:
            raise GraphFormatError(f"{header} header needs 'n m'", ln)
        try:
            n, m = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad {header} header counts", ln)
        edges = []
        for _ in range(m):
            ln2, row = take()
            bits = row.split()
            if len(bits) not in (2, 3):
                raise GraphFormatError("edge line needs 'u v [w]'", ln2)
            try:
                u, v = int(bits[0]), int(bits[1])
                w = parse_rational(bits[2]) if len(bits) == 3 else F1
            except ValueError as exc:
                raise GraphFormatError(str(exc), ln2)
            edges.append((u, v, w))
        try:
            return WeightedGraph(n, edges)
        except ValueError as exc:
            raise GraphFormatError(str(exc), ln)

    graph = read_graph("graph", None)
    reduct = read_graph("reduct", "reduct")

    ln, line = take()
    parts = line.split()
    if not parts or parts[0] != "outer":
        raise GraphFormatError("expected 'outer ...'", ln)
    try:
        outer = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise GraphFormatError("outer vertices must be integers", ln)

    ln, line = take()
    if line != "clones":
        raise GraphFormatError("expected 'clones'", ln)
    clones: dict[int, tuple[int, ...]] = {}
    while pos < len(rows) and rows[pos][1] != "inner":
        ln2, row = take()
        head, _, rest = row.partition(":")
        bits = rest.split()
        try:
            p = int(head)
            if len(bits) not in (1, 2):
                raise ValueError
            clones[p] = tuple(int(b) for b in bits)
        except ValueError:
            raise GraphFormatError("clone line needs 'v: a b' or 'v: a'", ln2)
    ln, line = take()
    if line != "inner":
        raise GraphFormatError("expected 'inner'", ln)
    inner: dict[int, int] = {}
    while pos < len(rows):
        ln2, row = take()
        head, _, rest = row.partition(":")
        bits = rest.split()
        try:
            if len(bits) != 1:
                raise ValueError
            inner[int(head)] = int(bits[0])
        except ValueError:
            raise GraphFormatError("inner line needs 'v: a'", ln2)
    return RingBlowup(
        graph=graph, reduct=reduct, outer=outer, clones=clones, inner=inner
    )
