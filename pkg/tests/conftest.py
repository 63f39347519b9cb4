"""Shared reference oracles and graph factories.

The reference counters here are written straight from the definitions
(enumerate, sum) with no shared code beyond the graph type, so the fast
implementations are checked against something that cannot inherit their
bugs.  All randomness is seeded per test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from ringblow import WeightedGraph
from ringblow.count import planar_embed

F0 = Fraction(0)
F1 = Fraction(1)


# -- reference oracles ---------------------------------------------------------


def pm_count_reference(g: WeightedGraph) -> Fraction:
    """Sum of products of edge weights over perfect matchings, by
    matching the first live vertex through each incident edge."""
    if g.n % 2 == 1:
        return F0

    def rec(alive: tuple[int, ...]) -> Fraction:
        if not alive:
            return F1
        v = alive[0]
        rest = alive[1:]
        total = F0
        for i, u in enumerate(rest):
            if g.has_edge(v, u):
                total += g.weight(v, u) * rec(rest[:i] + rest[i + 1 :])
        return total

    return rec(tuple(range(g.n)))


def _connected_in(adj: list[set[int]], verts: set[int]) -> bool:
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x] & verts:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == verts


def minor_reference(g: WeightedGraph, k: int) -> bool:
    """Whether g has a complete minor of order k, by trying every
    assignment of vertices to k branch sets or none.  Exponential;
    callers keep g.n small."""
    if k <= 0:
        return True
    if k == 1:
        return g.n >= 1
    if k > g.n:
        return False
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    for assign in product(range(k + 1), repeat=g.n):
        sets = [set() for _ in range(k)]
        for v, c in enumerate(assign):
            if c:
                sets[c - 1].add(v)
        if any(not s for s in sets):
            continue
        if any(not _connected_in(adj, s) for s in sets):
            continue
        ok = True
        for a in range(k):
            for b in range(a + 1, k):
                if not any(adj[x] & sets[b] for x in sets[a]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# -- factories -----------------------------------------------------------------


def cube3() -> WeightedGraph:
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            if v < v ^ bit:
                edges.append((v, v ^ bit))
    return WeightedGraph(8, edges)


def petersen() -> WeightedGraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return WeightedGraph(10, edges)


def grid_graph(rows: int, cols: int) -> WeightedGraph:
    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return WeightedGraph(rows * cols, edges)


def wheel(k: int) -> WeightedGraph:
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return WeightedGraph(k + 1, edges)


def is_connected(g: WeightedGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def random_graph(
    rng: random.Random,
    n_choices: tuple[int, ...] = (4, 6, 8, 10),
    m_max: int | None = None,
    connected: bool = True,
) -> WeightedGraph:
    while True:
        n = rng.choice(n_choices)
        cap = n * (n - 1) // 2 if m_max is None else min(m_max, n * (n - 1) // 2)
        lo = min(n - 1, cap) if connected else 0
        m = rng.randint(lo, cap)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        rng.shuffle(pairs)
        g = WeightedGraph(n, pairs[:m])
        if not connected or is_connected(g):
            return g


def random_planar_graph(
    rng: random.Random, n: int, weights: bool = False
) -> WeightedGraph:
    """Grow a planar graph by random edge additions, keeping every edge
    that preserves planarity.  Weights, if asked for, are small
    nonnegative rationals."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    kept: list[tuple[int, int, Fraction]] = []
    target = rng.randint(n, 3 * n - 6) if n >= 3 else 1
    for (a, b) in pairs:
        if len(kept) >= target:
            break
        w = Fraction(rng.randint(0, 3), rng.randint(1, 2)) if weights else F1
        trial = WeightedGraph(n, kept + [(a, b, F1)])
        if planar_embed(trial) is not None:
            kept.append((a, b, w))
    return WeightedGraph(n, kept)
