"""Sign-crossing matchgate: signature, search, storage, insertion.

A crossing between edges e and f is replaced by a small weighted piece
with four boundary vertices, one per cut stub, in the cyclic order
e1, f1, e2, f2 around the crossing.  Summed over internal matchings the
piece behaves like the crossing with a -1 on matchings using both edges:

    pm(piece)                     = 1    neither e nor f used
    pm(piece minus e-endpoints)   = 1    e used, f not
    pm(piece minus f-endpoints)   = 1    f used, e not
    pm(piece minus all four)      = -1   both used
    every other removal pattern   = 0

No concrete realization is prescribed, so one is found by a bounded
exhaustive search over small weighted graphs and frozen under data/.
`find_sign_crossing_gadget` loads the frozen piece and re-verifies it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations

import networkx as nx

from .core import (
    Edge,
    GraphFormatError,
    WeightedGraph,
    delete_vertices,
    edge_key,
    format_rational,
    parse_rational,
    serialize_graph,
)
from .count import count_pm_exact, iter_perfect_matchings, matching_weight

F0 = Fraction(0)
F1 = Fraction(1)

# Boundary labels in cyclic order around the crossing disk; opposite
# labels belong to the same original edge.
ATTACHMENT_LABELS = ("e1", "f1", "e2", "f2")

GadgetSignature = dict[frozenset[str], Fraction]

SEARCH_WEIGHTS = (
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
)


class SearchExhausted(RuntimeError):
    """No gadget with the requested signature in the searched space."""


class WeightedCrossingEdge(ValueError):
    """A crossing edge must carry weight 1 at insertion time."""


def _pattern_signature(both: Fraction) -> GadgetSignature:
    sig: GadgetSignature = {}
    for r in range(5):
        for t in combinations(ATTACHMENT_LABELS, r):
            sig[frozenset(t)] = F0
    sig[frozenset()] = F1
    sig[frozenset({"e1", "e2"})] = F1
    sig[frozenset({"f1", "f2"})] = F1
    sig[frozenset(ATTACHMENT_LABELS)] = both
    return sig


SIGN_CROSSING_SIGNATURE: GadgetSignature = _pattern_signature(Fraction(-1))
# The impossible variant: a crossing resolved with no sign at all.
PLANARIZER_SIGNATURE: GadgetSignature = _pattern_signature(Fraction(1))


@dataclass(frozen=True, eq=False)
class SignCrossingGadget:
    """A weighted piece with four distinguished boundary vertices."""

    graph: WeightedGraph
    attachments: dict[str, int]  # label -> vertex

    def boundary(self) -> tuple[int, int, int, int]:
        """Attachment vertices in the cyclic order e1, f1, e2, f2."""
        a, b, c, d = (self.attachments[lbl] for lbl in ATTACHMENT_LABELS)
        return (a, b, c, d)


def compute_signature(
    graph: WeightedGraph, attachments: dict[str, int]
) -> GadgetSignature:
    """value(T) = weighted matching count of the piece with the
    attachment vertices named by T deleted (their stubs being matched
    externally)."""
    verts = [attachments[lbl] for lbl in ATTACHMENT_LABELS]
    if len(set(verts)) != 4:
        raise ValueError("attachment vertices must be distinct")
    sig: GadgetSignature = {}
    for r in range(5):
        for t in combinations(ATTACHMENT_LABELS, r):
            removed = [attachments[lbl] for lbl in t]
            rest, _ = delete_vertices(graph, removed)
            sig[frozenset(t)] = count_pm_exact(rest)
    return sig


def has_boundary_cycle_embedding(
    graph: WeightedGraph, attachments: dict[str, int]
) -> bool:
    """Whether the piece fits in a disk with its four attachment vertices
    on the boundary in the order e1, f1, e2, f2 (either orientation).

    Tested as planarity of the piece plus a subdivided cycle through the
    four vertices in that order plus an apex joined to the subdivision
    vertices.  The apex pins the cycle as the disk boundary: without it,
    an edge between two attachments could route around the outside and a
    crossing pair like e1-e2, f1-f2 would slip through.
    """
    ng = nx.Graph()
    ng.add_nodes_from(range(graph.n))
    ng.add_edges_from(graph.edges())
    ring = [attachments[lbl] for lbl in ATTACHMENT_LABELS]
    fresh = graph.n
    apex = graph.n + 4
    for i, v in enumerate(ring):
        u = ring[(i + 1) % 4]
        ng.add_edge(v, fresh)
        ng.add_edge(fresh, u)
        ng.add_edge(fresh, apex)
        fresh += 1
    ok, _ = nx.check_planarity(ng)
    return bool(ok)


# -- storage ------------------------------------------------------------------


def serialize_gadget(gadget: SignCrossingGadget) -> str:
    out = [serialize_graph(gadget.graph)]
    for lbl in ATTACHMENT_LABELS:
        out.append(f"{lbl} {gadget.attachments[lbl]}\n")
    return "".join(out)


def parse_gadget(text: str) -> SignCrossingGadget:
    """Graph file followed by four '<label> <vertex>' attachment lines."""
    rows: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            rows.append((no, s))
    if not rows:
        raise GraphFormatError("empty gadget file", 1)
    no, head = rows[0]
    parts = head.split()
    if len(parts) != 2:
        raise GraphFormatError("expected 'n m' header", no)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("header fields must be integers", no) from None
    if len(rows) != 1 + m + 4:
        raise GraphFormatError(
            f"expected {m} edge lines plus 4 attachment lines", no
        )
    edges: list[tuple[int, int, Fraction]] = []
    for no2, s in rows[1 : 1 + m]:
        p = s.split()
        if len(p) != 3:
            raise GraphFormatError("expected 'u v w' edge line", no2)
        try:
            edges.append((int(p[0]), int(p[1]), parse_rational(p[2])))
        except ValueError as exc:
            raise GraphFormatError(str(exc), no2) from None
    attachments: dict[str, int] = {}
    for no2, s in rows[1 + m :]:
        p = s.split()
        if len(p) != 2 or p[0] not in ATTACHMENT_LABELS:
            raise GraphFormatError("expected '<label> <vertex>' line", no2)
        if p[0] in attachments:
            raise GraphFormatError(f"duplicate attachment {p[0]}", no2)
        try:
            attachments[p[0]] = int(p[1])
        except ValueError:
            raise GraphFormatError("attachment vertex must be an integer", no2) from None
    try:
        g = WeightedGraph(n, edges)
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    for lbl, v in attachments.items():
        if not 0 <= v < n:
            raise GraphFormatError(f"attachment {lbl} out of range")
    if len(set(attachments.values())) != 4:
        raise GraphFormatError("attachment vertices must be distinct")
    return SignCrossingGadget(graph=g, attachments=attachments)


def load_shipped_gadget() -> SignCrossingGadget:
    text = (
        resources.files(__package__)
        .joinpath("data")
        .joinpath("sign_crossing.gadget")
        .read_text()
    )
    return parse_gadget(text)


def find_sign_crossing_gadget() -> SignCrossingGadget:
    """The frozen search result, re-verified on every load."""
    gadget = load_shipped_gadget()
    sig = compute_signature(gadget.graph, gadget.attachments)
    assert sig == SIGN_CROSSING_SIGNATURE, "shipped gadget signature drifted"
    assert has_boundary_cycle_embedding(gadget.graph, gadget.attachments)
    return gadget


# -- bounded exhaustive search -------------------------------------------------


def _bucket_matchings(
    n: int, support: tuple[Edge, ...]
) -> dict[int, list[tuple[int, ...]]]:
    """All matchings covering every internal vertex, grouped by the
    bitmask of attachment vertices (0..3) they also cover.  Matchings are
    tuples of support indices."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(support):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    buckets: dict[int, list[tuple[int, ...]]] = {}
    chosen: list[int] = []

    def rec(v: int, covered: int) -> None:
        if v == n:
            mask = covered & 0b1111
            buckets.setdefault(mask, []).append(tuple(chosen))
            return
        if covered >> v & 1:
            rec(v + 1, covered)
            return
        if v < 4:
            # Attachments may stay exposed (their stub matches outside).
            rec(v + 1, covered)
        for u, idx in adj[v]:
            # Each edge is chosen at its lower endpoint only.
            if u > v and not covered >> u & 1:
                chosen.append(idx)
                rec(v + 1, covered | 1 << v | 1 << u)
                chosen.pop()

    rec(0, 0)
    return buckets


def _requirements(target: GadgetSignature) -> dict[int, Fraction]:
    """Target signature keyed by the bitmask of attachments left in place."""
    label_bit = {lbl: 1 << i for i, lbl in enumerate(ATTACHMENT_LABELS)}
    req: dict[int, Fraction] = {}
    for t, val in target.items():
        if len(t) % 2 == 1:
            if val != 0:
                raise SearchExhausted(
                    "odd removal patterns are unreachable by parity"
                )
            continue
        removed = 0
        for lbl in t:
            removed |= label_bit[lbl]
        req[0b1111 ^ removed] = val
    return req


def search_sign_crossing_gadget(
    target: GadgetSignature = SIGN_CROSSING_SIGNATURE,
    *,
    max_internal: int = 6,
    weights: tuple[Fraction, ...] = SEARCH_WEIGHTS,
    max_edges: int | None = None,
    require_embedding: bool = True,
) -> SignCrossingGadget:
    """First-hit exhaustive search for a piece matching `target`.

    Vertices 0..3 are the attachments e1, f1, e2, f2; internal vertices
    follow.  Edge supports are enumerated by (internal count, edge count,
    lexicographic edge list); per support, weight assignments by number
    of negative edges ascending (each negative edge later costs one
    interpolation point when weights are stripped), negative positions
    lexicographic, magnitudes depth-first in the order given.  The first
    hit is therefore deterministic.  Supports containing an edge used by
    no internal-covering matching are skipped: such an edge cannot
    affect the signature and the stripped support was already visited.
    """
    req = _requirements(target)
    nonzero_masks = [mask for mask, val in req.items() if val != 0]
    for k in range(0, max_internal + 1, 2):
        n = 4 + k
        all_pairs = [
            (u, v) for u in range(n) for v in range(u + 1, n)
        ]
        cap = len(all_pairs) if max_edges is None else min(max_edges, len(all_pairs))
        for m in range(1, cap + 1):
            for support in combinations(all_pairs, m):
                hit = _try_support(
                    n, support, req, nonzero_masks, weights, require_embedding
                )
                if hit is not None:
                    return hit
    raise SearchExhausted(
        f"no gadget matches the target within internals<={max_internal}, "
        f"edges<={max_edges if max_edges is not None else 'all'}, "
        f"weights {tuple(format_rational(w) for w in weights)}"
    )


def _try_support(
    n: int,
    support: tuple[Edge, ...],
    req: dict[int, Fraction],
    nonzero_masks: list[int],
    weights: tuple[Fraction, ...],
    require_embedding: bool,
) -> SignCrossingGadget | None:
    m = len(support)
    deg = [0] * n
    for (u, v) in support:
        deg[u] += 1
        deg[v] += 1
    if nonzero_masks:
        if any(deg[v] == 0 for v in range(4, n)):
            return None
        for x in range(4):
            if deg[x] == 0 and any(mask >> x & 1 for mask in nonzero_masks):
                return None

    buckets = _bucket_matchings(n, support)
    used: set[int] = set()
    for mask, val in req.items():
        lst = buckets.get(mask, [])
        if val != 0 and not lst:
            return None
        if val == 0 and len(lst) == 1:
            # A single product of nonzero weights cannot vanish.
            return None
    for lst in buckets.values():
        for match in lst:
            used.update(match)
    if len(used) != m:
        return None

    attachments = {lbl: i for i, lbl in enumerate(ATTACHMENT_LABELS)}
    if require_embedding:
        # Embeddability ignores weights; test it before the weight DFS.
        shape = WeightedGraph(n, [(u, v, F1) for (u, v) in support])
        if not has_boundary_cycle_embedding(shape, attachments):
            return None

    # Clear all denominators so the DFS runs on plain integers: with
    # D = lcm of weight denominators and K the largest matching in a
    # bucket, sum Prod(w) = req  <=>  sum Prod(D w) D^(K-|M|) = req D^K.
    denom = 1
    for w in weights:
        denom = denom * w.denominator // math.gcd(denom, w.denominator)
    scaled = tuple(int(w * denom) for w in weights)
    constraints: list[tuple[list[tuple[tuple[int, ...], int]], Fraction]] = []
    for mask, val in req.items():
        lst = buckets.get(mask, [])
        if not lst:
            continue
        big = max(len(match) for match in lst)
        terms = [(match, denom ** (big - len(match))) for match in lst]
        rhs = val * denom**big
        if not any(terms[i][0] for i in range(len(terms))):
            if rhs != len(lst):
                return None
            continue
        constraints.append((terms, rhs))

    # Assign edges in an order that completes constraints early, smallest
    # open constraint first; ties by edge index keep determinism.
    order: list[int] = []
    placed = [False] * m
    remaining = [set(e for t in c[0] for e in t[0]) for c in constraints]
    while len(order) < m:
        open_cs = [s for s in remaining if s]
        if not open_cs:
            order.extend(i for i in range(m) if not placed[i])
            break
        picked = sorted(min(open_cs, key=lambda s: (len(s), min(s))))
        for e in picked:
            order.append(e)
            placed[e] = True
        for s in remaining:
            s.difference_update(picked)
    pos = {e: i for i, e in enumerate(order)}
    checks_at: list[list[int]] = [[] for _ in range(m)]
    for ci, (terms, _) in enumerate(constraints):
        last = max(pos[e] for t in terms for e in t[0])
        checks_at[last].append(ci)

    neg_scaled = tuple(w for w in scaled if w < 0)
    pos_scaled = tuple(w for w in scaled if w > 0)
    assign = [0] * m  # scaled integer weights, indexed by support position

    def dfs(i: int, neg_mask: int) -> bool:
        if i == m:
            return True
        e = order[i]
        for w in neg_scaled if neg_mask >> e & 1 else pos_scaled:
            assign[e] = w
            ok = True
            for ci in checks_at[i]:
                terms, rhs = constraints[ci]
                total = 0
                for match, mult in terms:
                    prod = mult
                    for ei in match:
                        prod *= assign[ei]
                    total += prod
                if total != rhs:
                    ok = False
                    break
            if ok and dfs(i + 1, neg_mask):
                return True
        return False

    # Negative edges cost downstream (weight stripping interpolates once
    # per negative edge), so sign patterns are tried fewest-negatives
    # first, positions lexicographic, magnitudes depth-first.
    for k_neg in range(0, m + 1):
        if k_neg > 0 and not neg_scaled:
            break
        if k_neg < m and not pos_scaled:
            continue
        for neg_positions in combinations(range(m), k_neg):
            neg_mask = 0
            for e in neg_positions:
                neg_mask |= 1 << e
            if dfs(0, neg_mask):
                candidate = WeightedGraph(
                    n,
                    [
                        (u, v, Fraction(assign[i], denom))
                        for i, (u, v) in enumerate(support)
                    ],
                )
                return SignCrossingGadget(
                    graph=candidate, attachments=attachments
                )
    return None


# -- insertion -----------------------------------------------------------------


@dataclass(frozen=True)
class CrossingSite:
    """One crossing between two disjoint edges.

    Positions index each edge's current stub sequence when crossings are
    processed one at a time (an edge already split by earlier insertions
    carries its remaining crossings on its stubs).
    """

    e: Edge
    f: Edge
    pos_e: int = 0
    pos_f: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", edge_key(*self.e))
        object.__setattr__(self, "f", edge_key(*self.f))
        if self.e == self.f or set(self.e) & set(self.f):
            raise ValueError("crossing edges must be distinct and disjoint")


@dataclass(frozen=True)
class GadgetInsertion:
    """Result of one splice.

    e_stubs/f_stubs list the two replacement edges per cut edge, the one
    containing the edge's first endpoint first; both carry weight 1.
    """

    graph: WeightedGraph
    e_stubs: tuple[Edge, Edge]
    f_stubs: tuple[Edge, Edge]
    attachment_ids: dict[str, int] = field(default_factory=dict)


def insert_gadget(
    g: WeightedGraph, site: CrossingSite, gadget: SignCrossingGadget
) -> GadgetInsertion:
    """Cut e and f at the site and splice the piece in between.

    e1/e2 attach toward e's lower/higher endpoint, f1/f2 toward f's; all
    four stubs get weight 1.
    """
    for edge in (site.e, site.f):
        if not g.has_edge(*edge):
            raise ValueError(f"edge {edge} not present")
        if g.weight(*edge) != 1:
            raise WeightedCrossingEdge(
                f"crossing edge {edge} has weight "
                f"{format_rational(g.weight(*edge))}, expected 1"
            )
    base = g.n
    ids = {lbl: base + gadget.attachments[lbl] for lbl in ATTACHMENT_LABELS}
    edges: list[tuple[int, int, Fraction]] = []
    for (u, v) in g.edges():
        if (u, v) != site.e and (u, v) != site.f:
            edges.append((u, v, g.weight(u, v)))
    for (u, v) in gadget.graph.edges():
        edges.append((base + u, base + v, gadget.graph.weight(u, v)))
    u1, u2 = site.e
    v1, v2 = site.f
    e_stubs = (edge_key(u1, ids["e1"]), edge_key(ids["e2"], u2))
    f_stubs = (edge_key(v1, ids["f1"]), edge_key(ids["f2"], v2))
    for (x, y) in e_stubs + f_stubs:
        edges.append((x, y, F1))
    return GadgetInsertion(
        graph=WeightedGraph(base + gadget.graph.n, edges),
        e_stubs=e_stubs,
        f_stubs=f_stubs,
        attachment_ids=ids,
    )


def insert_gadgets(
    g: WeightedGraph, sites: list[CrossingSite], gadget: SignCrossingGadget
) -> WeightedGraph:
    """Insert one piece per site in order, routing each site to the stub
    its position selects.  The resulting count does not depend on the
    positions; they only decide where along each edge the pieces sit."""
    chains: dict[Edge, list[Edge]] = {}
    cur = g
    for site in sites:
        chain_e = chains.setdefault(site.e, [site.e])
        chain_f = chains.setdefault(site.f, [site.f])
        stub_e = chain_e[site.pos_e]
        stub_f = chain_f[site.pos_f]
        ins = insert_gadget(cur, CrossingSite(stub_e, stub_f), gadget)
        cur = ins.graph
        chain_e[site.pos_e : site.pos_e + 1] = list(ins.e_stubs)
        chain_f[site.pos_f : site.pos_f + 1] = list(ins.f_stubs)
    return cur


def signed_count(
    g: WeightedGraph, pairs: list[tuple[Edge, Edge]]
) -> Fraction:
    """Reference oracle: sum of matching weights, each matching negated
    once per listed pair it fully contains."""
    total = F0
    for matching in iter_perfect_matchings(g):
        mset = set(matching)
        val = matching_weight(g, matching)
        for (e, f) in pairs:
            if edge_key(*e) in mset and edge_key(*f) in mset:
                val = -val
        total += val
    return total
