"""Minor containment by exhaustive search, blowups, and clique-sums.

A minor model of H in G assigns to every vertex of H a branch set: the
sets are pairwise disjoint, each induces a connected subgraph of G, and
every edge of H is witnessed by at least one G-edge between the two
branch sets.  `has_minor` finds a model or proves there is none by
branch and bound over vertex-to-set assignments; `hadwiger` takes the
largest clique found that way.  Weights are ignored throughout: minors
are a property of the underlying simple graph.

`blowup` doubles the outer-face vertices of a plane graph, which is the
structure the ring reduction emits, and `clique_sum` glues two graphs on
a shared clique.  Both feed the simple-ring certification pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    GraphFormatError,
    Verdict,
    WeightedGraph,
    complete_graph,
    edge_key,
    iter_set_bits,
)

DEFAULT_NODE_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """The branch-and-bound search hit its node limit before deciding."""

    def __init__(self, searched: int):
        self.searched = searched
        super().__init__(f"minor search exceeded {searched} nodes")


class NotAClique(ValueError):
    """A clique-sum interface set that is not complete in one part."""


@dataclass(frozen=True)
class MinorModel:
    """Branch sets indexed by minor vertex.

    `sets[i]` lists the host-graph vertices standing in for vertex i of
    the minor, sorted ascending.
    """

    sets: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.sets)

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for s in self.sets:
            out.update(s)
        return out


def _adjacency_masks(g: WeightedGraph) -> list[int]:
    adj = [0] * g.n
    for (u, v) in g.weights:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _connected_mask(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        grow = 0
        for v in iter_set_bits(frontier):
            grow |= adj[v]
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen == mask


def verify_minor_model(g: WeightedGraph, h: WeightedGraph, model: MinorModel) -> Verdict:
    """The one validity check used everywhere: disjoint connected branch
    sets, one per H-vertex, covering every H-edge."""
    if model.order != h.n:
        return Verdict(False, f"{model.order} branch sets for {h.n} minor vertices")
    adj = _adjacency_masks(g)
    masks: list[int] = []
    used = 0
    for i, s in enumerate(model.sets):
        if not s:
            return Verdict(False, f"branch set {i} is empty")
        m = 0
        for v in s:
            if not 0 <= v < g.n:
                return Verdict(False, f"branch set {i} leaves the graph: {v}")
            m |= 1 << v
        if m.bit_count() != len(s):
            return Verdict(False, f"branch set {i} repeats a vertex")
        if m & used:
            return Verdict(False, f"branch set {i} overlaps an earlier one")
        if not _connected_mask(m, adj):
            return Verdict(False, f"branch set {i} is disconnected")
        used |= m
        masks.append(m)
    for (x, y) in h.weights:
        if not any(adj[v] & masks[y] for v in iter_set_bits(masks[x])):
            return Verdict(False, f"minor edge ({x},{y}) has no witness edge")
    return Verdict(True)


def has_minor(
    g: WeightedGraph,
    h: WeightedGraph,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> MinorModel | None:
    """A minor model of h in g, or None when exhaustive search rules it out.

    Branch sets are grown one H-vertex at a time (H-vertices in
    descending-degree order), each as a connected subset enumerated
    exactly once; a set may close as soon as it touches all previously
    placed neighbor sets.  When h is a clique the branch sets are
    interchangeable, so they are forced into ascending order of their
    minimum vertex, which also shrinks the pool for later sets.  Raises
    BudgetExceeded after `node_budget` search nodes (None = unlimited).
    """
    n, k = g.n, h.n
    if k == 0:
        return MinorModel(())
    if n < k or len(h.weights) > len(g.weights):
        return None
    order = sorted(range(k), key=lambda x: (-h.degree(x), x))
    pos = {x: i for i, x in enumerate(order)}
    # req[i]: bitmask of earlier positions the i-th set must attach to.
    req = [0] * k
    for (x, y) in h.weights:
        i, j = pos[x], pos[y]
        if i > j:
            i, j = j, i
        req[j] |= 1 << i
    clique = len(h.weights) == k * (k - 1) // 2
    # Work on ids sorted by descending degree: the ascending-seed rule
    # then spends the constrained vertices first, which fails faster.
    rank = sorted(range(n), key=lambda v: (-g.degree(v), v))
    back = rank
    adj = [0] * n
    newid = [0] * n
    for i, v in enumerate(rank):
        newid[v] = i
    for (u, v) in g.weights:
        adj[newid[u]] |= 1 << newid[v]
        adj[newid[v]] |= 1 << newid[u]
    full = (1 << n) - 1
    max_size = n - k + 1
    sets = [0] * k
    nbrs = [0] * k
    budget = node_budget if node_budget is not None else -1
    nodes = 0
    found: list[tuple[int, ...]] = []
    # For a clique target the completion problem after placing i sets is
    # determined by the free vertices and the attachment masks the placed
    # sets offer inside them (as a multiset): memoize refuted interfaces.
    # Clone pairs in blowups are twins, so collisions are the norm there.
    failed: set[tuple[int, ...]] = set()
    MEMO_CAP = 2_000_000

    def place(i: int, avail: int, min_seed: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes == budget:
            raise BudgetExceeded(nodes)
        if i == k:
            found.extend(sets)
            return True
        if avail.bit_count() < k - i:
            return False
        key: tuple[int, ...] = ()
        if clique and i:
            key = (avail, *sorted(nbrs[j] & avail for j in range(i)))
            if key in failed:
                return False
        seeds = avail & (full << min_seed)
        for s in iter_set_bits(seeds):
            # The seed is the set's minimum vertex: smaller ones stay
            # banned for this set, so each subset is enumerated once.
            pool = avail & (full << (s + 1))
            sat = 0
            want = req[i]
            for j in iter_set_bits(want):
                if adj[s] & sets[j]:
                    sat |= 1 << j
            if grow(i, 1 << s, adj[s], pool, sat, avail & ~(1 << s), s):
                return True
        if key and len(failed) < MEMO_CAP:
            failed.add(key)
        return False

    def grow(i: int, cur: int, nbr: int, pool: int, sat: int, avail: int, seed: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes == budget:
            raise BudgetExceeded(nodes)
        want = req[i] & ~sat
        if want == 0:
            sets[i] = cur
            nbrs[i] = nbr
            rest = avail & (full << (seed + 1)) if clique else avail
            if _future_ok(i, rest) and place(i + 1, rest, seed + 1 if clique else 0):
                return True
            sets[i] = nbrs[i] = 0
        else:
            for j in iter_set_bits(want):
                if not nbrs[j] & pool:
                    return False
        if cur.bit_count() >= max_size:
            return False
        restmask = full << (seed + 1) if clique else full
        frontier = nbr & pool
        for v in iter_set_bits(frontier):
            pool &= ~(1 << v)
            hit = sat
            for j in iter_set_bits(req[i] & ~sat):
                if adj[v] & sets[j]:
                    hit |= 1 << j
            if hit == sat and not adj[v] & avail & restmask & ~nbr:
                # v hits nothing new and every future vertex or witness
                # reachable through it already neighbors the current set,
                # so any model using it swaps to one without it (pieces
                # it held together reattach to the set directly).
                continue
            if grow(i, cur | 1 << v, nbr | adj[v], pool, hit, avail & ~(1 << v), seed):
                return True
        return False

    def _future_ok(i: int, avail: int) -> bool:
        f = k - i - 1
        if avail.bit_count() < f:
            return False
        if f == 0:
            return True
        if clique:
            # Unplaced sets are pairwise adjacent through avail edges, so
            # they all sit in one component of the available subgraph;
            # that component must hold f vertices, the C(f,2) witness
            # edges, and enough neighbors of every placed set.
            want_edges = f * (f - 1) // 2
            rest = avail
            while rest:
                comp = rest & -rest
                frontier = comp
                while frontier:
                    grow_m = 0
                    for v in iter_set_bits(frontier):
                        grow_m |= adj[v]
                    frontier = grow_m & rest & ~comp
                    comp |= frontier
                rest &= ~comp
                if comp.bit_count() < f:
                    continue
                e = 0
                for v in iter_set_bits(comp):
                    e += (adj[v] & comp).bit_count()
                if e // 2 < want_edges:
                    continue
                if all((nbrs[j] & comp).bit_count() >= f for j in range(i + 1)):
                    return True
            return False
        # Future sets are disjoint, so each earlier set j needs as many
        # available neighbors as it has unplaced H-neighbors.
        for j in range(i + 1):
            needed = (req_future[j] >> (i + 1)).bit_count()
            if needed and (nbrs[j] & avail).bit_count() < needed:
                return False
        return True

    # req_future[j]: positions whose requirement list contains j.
    req_future = [0] * k
    for j2 in range(k):
        for i2 in iter_set_bits(req[j2]):
            req_future[i2] |= 1 << j2

    global _last_search_nodes
    hit = place(0, full, 0)
    _last_search_nodes = nodes
    if hit:
        model_sets: list[tuple[int, ...]] = [()] * k
        for x in range(k):
            model_sets[x] = tuple(sorted(back[v] for v in iter_set_bits(found[pos[x]])))
        model = MinorModel(tuple(model_sets))
        check = verify_minor_model(g, h, model)
        assert check, check.why
        return model
    return None


# Size of the last completed search tree, for tuning and tests.
_last_search_nodes = 0


def hadwiger(g: WeightedGraph, node_budget: int | None = DEFAULT_NODE_BUDGET) -> int:
    """Largest k with a K_k minor, by descending has_minor queries."""
    if g.n == 0:
        return 0
    k = g.n
    while k * (k - 1) // 2 > len(g.weights):
        k -= 1
    while k > 1:
        if has_minor(g, complete_graph(k), node_budget) is not None:
            return k
        k -= 1
    return 1


# -- planar blowup ---------------------------------------------------------


def blowup(
    q: WeightedGraph, outer: Sequence[int]
) -> tuple[WeightedGraph, dict[int, tuple[int, int]], dict[int, int]]:
    """Double every outer-face vertex of a plane graph.

    Each vertex v in `outer` becomes two adjacent clones that both
    inherit v's full neighborhood; other vertices are untouched.
    Returns (graph, clone map v -> (v1, v2), map for the others).
    Purely combinatorial: the caller owns the claim that `outer` bounds
    a face of an embedding of q.
    """
    ring = set(outer)
    if len(ring) != len(outer):
        raise ValueError("repeated outer vertex")
    for v in outer:
        if not 0 <= v < q.n:
            raise ValueError(f"outer vertex {v} out of range")
    clones: dict[int, tuple[int, int]] = {}
    inner: dict[int, int] = {}
    nxt = 0
    for v in range(q.n):
        if v in ring:
            clones[v] = (nxt, nxt + 1)
            nxt += 2
        else:
            inner[v] = nxt
            nxt += 1
    copies = {v: clones.get(v) or (inner[v],) for v in range(q.n)}
    edges = [(a, b) for v in ring for a, b in [clones[v]]]
    for (u, v) in q.edges():
        edges.extend((a, b) for a in copies[u] for b in copies[v])
    return WeightedGraph(nxt, edges), clones, inner


def octahedron_with_outer_face() -> tuple[WeightedGraph, tuple[int, int, int]]:
    """The octahedron drawn with one triangle outside: outer face 0,1,2,
    inner triangle 3,4,5, every inner vertex seeing two consecutive outer
    ones.  This is the largest triangulated simple ring with no chord and
    no inner vertex crowding a third outer neighbor."""
    g = WeightedGraph(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
         (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)],
    )
    return g, (0, 1, 2)


def octahedron_blowup() -> WeightedGraph:
    """Blowup of the octahedron ring: 9 vertices, 30 edges, and the graph
    every sealed certification leaf with a full inner triangle must match."""
    q, outer = octahedron_with_outer_face()
    return blowup(q, outer)[0]


# -- clique-sums -----------------------------------------------------------


def clique_sum(
    left: WeightedGraph,
    right: WeightedGraph,
    shared: Sequence[tuple[int, int]],
    deletions: Iterable[tuple[int, int]] = (),
) -> tuple[WeightedGraph, list[int]]:
    """Glue two graphs along a clique, optionally deleting glue edges.

    `shared` pairs up the interface vertices (left id, right id); it must
    induce a clique on both sides.  `deletions` lists interface edges to
    drop, in left ids.  Returns the glued unweighted graph and the
    right-vertex relabelling (left ids are unchanged).
    """
    ls = [a for a, _ in shared]
    rs = [b for _, b in shared]
    if len(set(ls)) != len(ls) or len(set(rs)) != len(rs):
        raise ValueError("repeated interface vertex")
    for a, b in shared:
        if not 0 <= a < left.n:
            raise ValueError(f"interface vertex {a} not in the left part")
        if not 0 <= b < right.n:
            raise ValueError(f"interface vertex {b} not in the right part")
    for i in range(len(shared)):
        for j in range(i + 1, len(shared)):
            if not left.has_edge(ls[i], ls[j]):
                raise NotAClique(f"left interface misses edge ({ls[i]},{ls[j]})")
            if not right.has_edge(rs[i], rs[j]):
                raise NotAClique(f"right interface misses edge ({rs[i]},{rs[j]})")
    rmap = [-1] * right.n
    for a, b in shared:
        rmap[b] = a
    nxt = left.n
    for b in range(right.n):
        if rmap[b] < 0:
            rmap[b] = nxt
            nxt += 1
    edges = set(left.weights)
    for (u, v) in right.weights:
        edges.add(edge_key(rmap[u], rmap[v]))
    iface = set(ls)
    for (u, v) in deletions:
        key = edge_key(u, v)
        if not (u in iface and v in iface):
            raise ValueError(f"deletion {key} is not an interface edge")
        edges.discard(key)
    return WeightedGraph(nxt, sorted(edges)), rmap


# -- model files -----------------------------------------------------------


def serialize_minor_model(model: MinorModel) -> str:
    lines = [f"{i}: " + " ".join(str(v) for v in s) for i, s in enumerate(model.sets)]
    return "\n".join(lines) + "\n"


def parse_minor_model(text: str) -> MinorModel:
    """One line per branch set, "name: v v v", names 0..k-1 in any order."""
    rows: dict[int, tuple[int, ...]] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError("expected 'name: v v ...'", ln)
        try:
            name = int(head)
            verts = tuple(sorted(int(t) for t in rest.split()))
        except ValueError:
            raise GraphFormatError("branch set entries must be integers", ln)
        if name in rows:
            raise GraphFormatError(f"branch set {name} given twice", ln)
        rows[name] = verts
    if sorted(rows) != list(range(len(rows))):
        raise GraphFormatError(
            f"branch set names must be 0..{len(rows) - 1}", None
        )
    return MinorModel(tuple(rows[i] for i in range(len(rows))))
