"""Simple rings: triangulation, clique-sum decomposition, certificates.

A simple ring is a plane graph with a designated outer face whose
remaining vertices form a clique on at most three vertices.  Blowups of
simple rings are where the Hadwiger-number question lives, and this
module supplies the evidence: `make_simple` shrinks any ring blowup
with a clique model onto a simple one without losing the model, and
`certify_simple_ring_blowup` decomposes a simple ring along clique-sums
into pieces whose blowups visibly exclude a complete minor of order
eight.  The decomposition is emitted as a certificate that
`check_certificate` can replay without re-deriving anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    ONE,
    Edge,
    GraphFormatError,
    Verdict,
    WeightedGraph,
    complete_graph,
    edge_key,
    induced_subgraph,
    parse_graph,
    serialize_graph,
)
from .minors import MinorModel, blowup, has_minor, verify_minor_model
from .reduce import RingBlowup, embeds_in_disk_with_boundary, verify_ring_blowup


class NonTriangulated(ValueError):
    """Raised when an operation needs every bounded face to be a triangle."""


class CaseViolation(RuntimeError):
    """An input contradicts a structural case that valid inputs satisfy.

    Seeing this means a bug upstream, not a property of the instance.
    """


class InvalidModel(ValueError):
    """The supplied minor model does not fit the supplied graph."""


class InnerCliqueTooLarge(RuntimeError):
    """More than three branch sets avoid the doubled ring vertices.

    The planar bound caps that number at three for models of order at
    least five, so this is surfaced as a diagnostic instead of patched.
    """


# -- simple rings --------------------------------------------------------------


@dataclass(frozen=True)
class SimpleRing:
    """A plane graph with outer face `outer` and a small inner clique.

    `outer` lists the outer-face vertices in cyclic order; every other
    vertex is inner, and the inner vertices must be pairwise adjacent
    with at most three of them.
    """

    graph: WeightedGraph
    outer: tuple[int, ...]

    @property
    def inner(self) -> tuple[int, ...]:
        ring = set(self.outer)
        return tuple(v for v in range(self.graph.n) if v not in ring)


def verify_simple_ring(q: SimpleRing) -> Verdict:
    g = q.graph
    if not g.is_unweighted():
        return Verdict(False, "simple rings are unweighted")
    if len(set(q.outer)) != len(q.outer):
        return Verdict(False, "repeated outer vertex")
    for v in q.outer:
        if not 0 <= v < g.n:
            return Verdict(False, f"outer vertex {v} out of range")
    w = q.inner
    if len(w) > 3:
        return Verdict(False, f"{len(w)} inner vertices, at most 3 allowed")
    for a, b in combinations(w, 2):
        if not g.has_edge(a, b):
            return Verdict(False, f"inner vertices {a},{b} are not adjacent")
    if not embeds_in_disk_with_boundary(g, list(q.outer)):
        return Verdict(False, "no disk embedding with the outer order on the boundary")
    return Verdict(True)


def serialize_simple_ring(q: SimpleRing) -> str:
    head = "outer " + " ".join(str(v) for v in q.outer)
    return serialize_graph(q.graph) + head.rstrip() + "\n"


def parse_simple_ring(data: str | bytes) -> SimpleRing:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = []
    for raw in data.splitlines():
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append(text)
    if not lines or not lines[-1].startswith("outer"):
        raise GraphFormatError("a simple ring file ends with an 'outer ...' line")
    outer = tuple(int(tok) for tok in lines[-1].split()[1:])
    return SimpleRing(parse_graph("\n".join(lines[:-1])), outer)


# -- triangulated rings ----------------------------------------------------------


def _is_connected(g: WeightedGraph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for u in g.neighbors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def _addable_edge(g: WeightedGraph, outer: tuple[int, ...]) -> Edge | None:
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            if verify_simple_ring(SimpleRing(g.with_edge(u, v, ONE), outer)):
                return (u, v)
    return None


def is_triangulated(q: SimpleRing) -> bool:
    """Whether the ring's disk drawing is fully triangulated.

    With the outer cycle present and the graph connected, a disk
    drawing has all bounded faces triangular exactly when the edge
    count meets 3n - 3 - |outer|; this is embedding-free.  Rings with
    fewer than three outer vertices count as triangulated when no edge
    can be added without breaking validity.
    """
    g = q.graph
    if not verify_simple_ring(q) or not _is_connected(g):
        return False
    k = len(q.outer)
    if k >= 3:
        for i in range(k):
            if not g.has_edge(q.outer[i], q.outer[(i + 1) % k]):
                return False
        return g.m == 3 * g.n - 3 - k
    if k == 2 and not g.has_edge(q.outer[0], q.outer[1]):
        return False
    return _addable_edge(g, q.outer) is None


# -- complications ---------------------------------------------------------------


@dataclass(frozen=True)
class Complication:
    """One obstruction to the endgame cases.

    kind "chord": an edge between non-consecutive outer vertices; the
    witness is that edge.  kind "extra-neighbor": an inner vertex with
    three or more outer neighbors; the witness pairs the inner vertex
    with one neighbor beyond its first two in outer order.
    """

    kind: str
    witness: tuple[int, int]


def find_complications(q: SimpleRing) -> list[Complication]:
    g = q.graph
    k = len(q.outer)
    pos = {v: i for i, v in enumerate(q.outer)}
    out: list[Complication] = []
    if k >= 4:
        for u, v in g.edges():
            if u in pos and v in pos:
                gap = (pos[v] - pos[u]) % k
                if gap not in (1, k - 1):
                    out.append(Complication("chord", (u, v)))
    for w in q.inner:
        ring_nbrs = [o for o in q.outer if g.has_edge(w, o)]
        for o in ring_nbrs[2:]:
            out.append(Complication("extra-neighbor", (w, o)))
    return out


# -- triangulation ---------------------------------------------------------------


def triangulate(q: SimpleRing) -> SimpleRing:
    """Add edges until every bounded face of the disk drawing is a
    triangle.

    Keeps all vertices, all edges, and the outer order: edges are added
    greedily in id order whenever the ring stays valid.  The additions
    may introduce chords and inner attachments; the decomposition
    treats those like any others.
    """
    chk = verify_simple_ring(q)
    if not chk:
        raise ValueError(chk.why)
    g = q.graph
    for _ in range(3 * g.n + 7):
        e = _addable_edge(g, q.outer)
        if e is None:
            break
        g = g.with_edge(e[0], e[1], ONE)
    else:
        raise CaseViolation("triangulation failed to converge")
    out = SimpleRing(g, q.outer)
    if not is_triangulated(out):
        raise CaseViolation("a maximal ring missed the triangulation count")
    return out


# -- clique-sum decomposition ------------------------------------------------------


@dataclass
class CliqueSumSplit:
    """A node of the clique-sum decomposition tree.

    Leaves carry a `verdict` tag and no parts.  A split node glues its
    parts along the `interface` clique and then deletes the listed
    interface edges (edges present in parts but not in the node).  Each
    part comes with its vertex map back into this node's ids.
    """

    ring: SimpleRing
    verdict: str = ""
    interface: tuple[int, ...] = ()
    deletions: tuple[Edge, ...] = ()
    parts: tuple[tuple["CliqueSumSplit", tuple[int, ...]], ...] = ()

    def leaves(self) -> list["CliqueSumSplit"]:
        if not self.parts:
            return [self]
        out: list[CliqueSumSplit] = []
        for child, _ in self.parts:
            out.extend(child.leaves())
        return out

    def split_count(self) -> int:
        if not self.parts:
            return 0
        return 1 + sum(child.split_count() for child, _ in self.parts)


LEAF_NO_INNER = "no-inner"
LEAF_SHORT_RING = "short-ring"
LEAF_OCTAHEDRON = "octahedron"
LEAF_SMALL_BLOWUP = "small-blowup"


@dataclass(frozen=True)
class LeafVerdict:
    """Why a complication-free ring's blowup is safe, by proof case."""

    case: str
    detail: str


def check_complication_free(q: SimpleRing) -> LeafVerdict:
    """Classify a triangulated, complication-free ring into the cases
    that bound its blowup's Hadwiger number by 7."""
    chk = verify_simple_ring(q)
    if not chk:
        raise CaseViolation(chk.why)
    if not is_triangulated(q):
        raise CaseViolation("ring is not triangulated")
    if find_complications(q):
        raise CaseViolation("ring still has complications")
    g, o, w = q.graph, q.outer, q.inner
    if not w:
        if g.n > 3:
            raise CaseViolation(f"no inner clique but {g.n} vertices in a sealed ring")
        return LeafVerdict(LEAF_NO_INNER, f"blowup has {2 * g.n} <= 6 vertices")
    if len(w) <= 2:
        if len(o) > 2:
            raise CaseViolation("a short inner clique forces at most two ring vertices")
        return LeafVerdict(LEAF_SHORT_RING, f"blowup has {g.n + len(o)} <= 6 vertices")
    if len(o) < 3:
        if g.n + len(o) > 7:
            raise CaseViolation("squeezed inner triangle with an oversized blowup")
        return LeafVerdict(LEAF_SHORT_RING, f"blowup has {g.n + len(o)} <= 7 vertices")
    if len(o) > 3:
        raise CaseViolation("a full inner triangle forces exactly three ring vertices")
    z, _, _ = blowup(g, o)
    if z.n != 9 or z.m != 30:
        raise CaseViolation(f"sealed blowup has {z.n} vertices, {z.m} edges; wanted 9, 30")
    if min(z.degree(v) for v in range(z.n)) < 6:
        raise CaseViolation("sealed blowup has a vertex of degree below 6")
    for u, v in z.edges():
        if not _edge_in_k4(z, u, v):
            raise CaseViolation(f"blowup edge ({u},{v}) lies in no 4-clique")
    if has_minor(z, complete_graph(8)) is not None:
        raise CaseViolation("sealed blowup contains a complete minor of order 8")
    return LeafVerdict(
        LEAF_OCTAHEDRON,
        "9 vertices, 30 edges, min degree 6, every edge in a 4-clique: "
        "one deletion or contraction leaves at most 27 < 28 edges",
    )


def _edge_in_k4(g: WeightedGraph, u: int, v: int) -> bool:
    common = [x for x in g.neighbors(u) if g.has_edge(x, v)]
    return any(
        g.has_edge(x, y) for i, x in enumerate(common) for y in common[i + 1 :]
    )


def decompose(q: SimpleRing) -> CliqueSumSplit:
    """Split a triangulated ring along clique-sums until every piece is
    either complication-free or too small for a minor of order eight.

    Chords split the disk in two; an inner vertex with three or more
    ring neighbors sheds a 4-clique over a window of its fan.  Each
    split strictly lowers the recursed part's complication count.
    """
    if not is_triangulated(q):
        raise NonTriangulated("decompose needs a triangulated ring")
    return _decompose(q)


def _decompose(q: SimpleRing) -> CliqueSumSplit:
    comps = find_complications(q)
    if not comps:
        verdict = check_complication_free(q)
        return CliqueSumSplit(ring=q, verdict=verdict.case)
    chords = [c for c in comps if c.kind == "chord"]
    if chords:
        return _split_chord(q, *chords[0].witness, before=len(comps))
    return _split_fan(q, comps[0].witness[0], before=len(comps))


def _assert_part(child: SimpleRing, before: int) -> None:
    chk = verify_simple_ring(child)
    if not chk:
        raise CaseViolation("split produced an invalid ring: " + chk.why)
    if not is_triangulated(child):
        raise CaseViolation("split broke the triangulation")
    if len(find_complications(child)) >= before:
        raise CaseViolation("split failed to lower the complication count")


def _split_chord(q: SimpleRing, u: int, v: int, before: int) -> CliqueSumSplit:
    g, o = q.graph, q.outer
    iu, iv = o.index(u), o.index(v)
    if iu > iv:
        iu, iv, u, v = iv, iu, v, u
    arc1 = o[iu : iv + 1]
    arc2 = o[iv:] + o[: iu + 1]
    inner = q.inner
    strict1 = set(arc1[1:-1])
    strict2 = set(arc2[1:-1])
    touch1 = any(g.has_edge(w, x) for w in inner for x in strict1)
    touch2 = any(g.has_edge(w, x) for w in inner for x in strict2)
    if touch1 and touch2:
        raise CaseViolation("inner clique attached on both sides of a chord")
    keep1 = set(arc1) | (set() if touch2 else set(inner))
    keep2 = set(arc2) | (set(inner) if touch2 else set())
    for a, b in g.edges():
        if not (
            (a in keep1 and b in keep1) or (a in keep2 and b in keep2)
        ):
            raise CaseViolation(f"edge ({a},{b}) straddles the chord split")
    parts = []
    for keep, arc in ((keep1, arc1), (keep2, arc2)):
        sub, back = induced_subgraph(g, keep)
        fwd = {old: new for new, old in enumerate(back)}
        child = SimpleRing(sub, tuple(fwd[x] for x in arc))
        _assert_part(child, before)
        parts.append((_decompose(child), tuple(back)))
    return CliqueSumSplit(
        ring=q, interface=edge_key(u, v), deletions=(), parts=tuple(parts)
    )


def _split_fan(q: SimpleRing, w: int, before: int) -> CliqueSumSplit:
    g, o = q.graph, q.outer
    k = len(o)
    posns = sorted(i for i, x in enumerate(o) if g.has_edge(w, x))
    r = len(posns)
    pset = set(posns)
    starts = [p for p in posns if (p - 1) % k not in pset]
    if len(starts) > 1:
        raise CaseViolation("ring neighbors of an inner vertex are not contiguous")
    start = starts[0] if starts else posns[0]
    arc = [o[(start + t) % k] for t in range(r)]
    # window center: a fan vertex whose whole neighborhood is the window
    window = None
    centers = range(r) if r == k else range(1, r - 1)
    for j in centers:
        u1, u2, u3 = arc[(j - 1) % r], arc[j], arc[(j + 1) % r]
        if set(g.neighbors(u2)) == {u1, u3, w}:
            window = (u1, u2, u3)
            break
    if window is None:
        raise CaseViolation("no fan window with a clean center")
    u1, u2, u3 = window
    # the shed piece: window plus the inner vertex, always a 4-clique
    sub, back = induced_subgraph(g, (w, u1, u2, u3))
    fwd = {old: new for new, old in enumerate(back)}
    piece_g = sub
    if not piece_g.has_edge(fwd[u1], fwd[u3]):
        piece_g = piece_g.with_edge(fwd[u1], fwd[u3], ONE)
    piece = SimpleRing(piece_g, (fwd[u1], fwd[u2], fwd[u3]))
    chk = verify_simple_ring(piece)
    if not chk or piece.graph.n + len(piece.outer) != 7:
        raise CaseViolation("shed piece is not the expected 4-clique")
    piece_node = CliqueSumSplit(ring=piece, verdict=LEAF_SMALL_BLOWUP)
    # the body: remove the window center and seal the gap
    keep = [x for x in range(g.n) if x != u2]
    body_g, back_b = induced_subgraph(g, keep)
    fwd_b = {old: new for new, old in enumerate(back_b)}
    if not body_g.has_edge(fwd_b[u1], fwd_b[u3]):
        body_g = body_g.with_edge(fwd_b[u1], fwd_b[u3], ONE)
    body = SimpleRing(body_g, tuple(fwd_b[x] for x in o if x != u2))
    _assert_part(body, before)
    deletions = () if g.has_edge(u1, u3) else (edge_key(u1, u3),)
    return CliqueSumSplit(
        ring=q,
        interface=tuple(sorted((w, u1, u3))),
        deletions=deletions,
        parts=((piece_node, tuple(back)), (_decompose(body), tuple(back_b))),
    )


# -- certificates ------------------------------------------------------------------


@dataclass
class Certificate:
    """Replayable evidence that a simple ring's blowup has Hadwiger
    number at most 7.

    `tree` is rooted at a triangulation of `ring`; its splits compose
    the ring from leaves whose blowups visibly exclude a complete minor
    of order eight."""

    ring: SimpleRing
    tree: CliqueSumSplit


def certify_simple_ring_blowup(q: SimpleRing) -> Certificate:
    """Triangulate, decompose, and check every leaf of a simple ring."""
    chk = verify_simple_ring(q)
    if not chk:
        raise ValueError(chk.why)
    cert = Certificate(ring=q, tree=decompose(triangulate(q)))
    ok = check_certificate(cert)
    if not ok:
        raise CaseViolation("built an invalid certificate: " + ok.why)
    return cert


def check_certificate(cert: Certificate) -> Verdict:
    """Validate a certificate without re-running the decomposition.

    Checks that the tree's root is the input ring plus added edges only,
    that every split is a genuine clique-sum of its parts with the part
    rings' outer orders inherited from the parent, and that every leaf
    is one of the safe shapes.  With the clique-sum bound on Hadwiger
    numbers, a passing certificate gives eta(blowup(ring)) <= 7.
    """
    chk = verify_simple_ring(cert.ring)
    if not chk:
        return Verdict(False, "input ring: " + chk.why)
    root = cert.tree.ring
    if root.graph.n != cert.ring.graph.n or root.outer != cert.ring.outer:
        return Verdict(False, "root ring does not match the input ring")
    for e in cert.ring.graph.edges():
        if not root.graph.has_edge(*e):
            return Verdict(False, f"root ring lost input edge {e}")
    return _check_node(cert.tree, "root")


def _check_leaf(node: CliqueSumSplit, where: str) -> Verdict:
    q = node.ring
    n_blow = q.graph.n + len(q.outer)
    tag = node.verdict
    if tag == LEAF_NO_INNER:
        if q.inner or q.graph.n > 3:
            return Verdict(False, f"{where}: not a bare ring on <=3 vertices")
        return Verdict(True)
    if tag in (LEAF_SHORT_RING, LEAF_SMALL_BLOWUP):
        if n_blow > 7:
            return Verdict(False, f"{where}: blowup has {n_blow} > 7 vertices")
        return Verdict(True)
    if tag == LEAF_OCTAHEDRON:
        z, _, _ = blowup(q.graph, q.outer)
        if z.n != 9 or z.m != 30:
            return Verdict(False, f"{where}: blowup is not the 9/30 graph")
        if min(z.degree(v) for v in range(z.n)) < 6:
            return Verdict(False, f"{where}: blowup degree below 6")
        for u, v in z.edges():
            if not _edge_in_k4(z, u, v):
                return Verdict(False, f"{where}: blowup edge outside every 4-clique")
        return Verdict(True)
    return Verdict(False, f"{where}: unknown leaf verdict {tag!r}")


def _check_node(node: CliqueSumSplit, where: str) -> Verdict:
    q = node.ring
    chk = verify_simple_ring(q)
    if not chk:
        return Verdict(False, f"{where}: {chk.why}")
    if not node.parts:
        return _check_leaf(node, where)
    if node.verdict:
        return Verdict(False, f"{where}: split node carries a leaf verdict")
    if len(node.parts) < 2:
        return Verdict(False, f"{where}: split with fewer than two parts")
    s = set(node.interface)
    if not s or not s <= set(range(q.graph.n)):
        return Verdict(False, f"{where}: bad interface")
    images = []
    for idx, (child, to_parent) in enumerate(node.parts):
        tag = f"{where}/{idx}"
        cg = child.ring.graph
        if len(to_parent) != cg.n or len(set(to_parent)) != cg.n:
            return Verdict(False, f"{tag}: part map is not injective on the part")
        if not set(to_parent) <= set(range(q.graph.n)):
            return Verdict(False, f"{tag}: part map leaves the ring")
        img = set(to_parent)
        images.append(img)
        back = {p: c for c, p in enumerate(to_parent)}
        pout = [to_parent[x] for x in child.ring.outer]
        want = [x for x in q.outer if x in img]
        if sorted(pout) != sorted(want):
            return Verdict(False, f"{tag}: part outer misses ring vertices")
        if not _cyclic_suborder(pout, q.outer):
            return Verdict(False, f"{tag}: part outer order disagrees with the ring")
        if not s <= img:
            return Verdict(False, f"{tag}: interface missing from the part")
        for a, b in combinations(sorted(s), 2):
            if not cg.has_edge(back[a], back[b]):
                return Verdict(False, f"{tag}: interface is not a clique in the part")
    for i, j in combinations(range(len(images)), 2):
        if images[i] & images[j] != s:
            return Verdict(False, f"{where}: parts {i},{j} overlap off the interface")
    if set().union(*images) != set(range(q.graph.n)):
        return Verdict(False, f"{where}: parts do not cover the ring")
    present = set(q.graph.edges())
    dels = set(node.deletions)
    for e in dels:
        if not set(e) <= s:
            return Verdict(False, f"{where}: deleted edge {e} outside the interface")
        if e in present:
            return Verdict(False, f"{where}: deleted edge {e} still in the ring")
    covered: set[Edge] = set()
    for child, to_parent in node.parts:
        for a, b in child.ring.graph.edges():
            e = edge_key(to_parent[a], to_parent[b])
            covered.add(e)
            if e not in present and e not in dels:
                return Verdict(False, f"{where}: part edge {e} is neither kept nor deleted")
    for e in q.graph.edges():
        if e not in covered:
            return Verdict(False, f"{where}: ring edge {e} appears in no part")
    for idx, (child, _) in enumerate(node.parts):
        sub = _check_node(child, f"{where}/{idx}")
        if not sub:
            return sub
    return Verdict(True)


def _cyclic_suborder(sub: list[int], full: tuple[int, ...]) -> bool:
    if len(sub) <= 2:
        return True
    k = len(full)
    at = {v: i for i, v in enumerate(full)}
    for cand in (sub, sub[::-1]):
        pos = [at[v] for v in cand]
        steps = [(pos[(i + 1) % len(pos)] - pos[i]) % k for i in range(len(pos))]
        if all(st >= 1 for st in steps) and sum(steps) == k:
            return True
    return False


# -- certificate files ---------------------------------------------------------


def serialize_certificate(cert: Certificate) -> str:
    out = ["ring"]
    out.extend(serialize_simple_ring(cert.ring).rstrip("\n").split("\n"))
    out.append("tree")
    _write_node(cert.tree, 1, out)
    return "\n".join(out) + "\n"


def _write_node(node: CliqueSumSplit, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    if node.parts:
        ints = ",".join(str(v) for v in node.interface)
        dels = ";".join(f"{u}-{v}" for u, v in node.deletions)
        out.append(
            f"{pad}split parts={len(node.parts)} interface={ints} deletions={dels}"
        )
    else:
        out.append(f"{pad}leaf {node.verdict}")
    for line in serialize_simple_ring(node.ring).rstrip("\n").split("\n"):
        out.append(pad + "  " + line)
    for child, to_parent in node.parts:
        out.append(f"{pad}part map={','.join(str(v) for v in to_parent)}")
        _write_node(child, depth + 1, out)


def parse_certificate(data: str | bytes) -> Certificate:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = []
    for raw in data.splitlines():
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append(text)
    if not lines or lines[0] != "ring":
        raise GraphFormatError("certificate must start with a 'ring' section")

    def ring_block(i: int) -> tuple[SimpleRing, int]:
        head = lines[i].split()
        if len(head) != 2:
            raise GraphFormatError("expected a graph header inside the certificate")
        m = int(head[1])
        stop = i + 1 + m
        block = lines[i : stop + 1]
        if len(block) != m + 2 or not block[-1].startswith("outer"):
            raise GraphFormatError("truncated ring block in the certificate")
        return parse_simple_ring("\n".join(block)), stop + 1

    ring, i = ring_block(1)
    if i >= len(lines) or lines[i] != "tree":
        raise GraphFormatError("certificate is missing the 'tree' section")

    def node(i: int) -> tuple[CliqueSumSplit, int]:
        head = lines[i]
        if head.startswith("leaf"):
            ring, j = ring_block(i + 1)
            return CliqueSumSplit(ring=ring, verdict=head.split(None, 1)[1]), j
        if not head.startswith("split "):
            raise GraphFormatError(f"unexpected certificate line {head!r}")
        fields = dict(tok.split("=", 1) for tok in head[6:].split())
        count = int(fields["parts"])
        interface = tuple(int(x) for x in fields["interface"].split(",") if x)
        deletions = tuple(
            edge_key(*(int(x) for x in d.split("-")))
            for d in fields["deletions"].split(";")
            if d
        )
        ring, j = ring_block(i + 1)
        parts = []
        for _ in range(count):
            if j >= len(lines) or not lines[j].startswith("part map="):
                raise GraphFormatError("certificate split is missing a part map")
            to_parent = tuple(
                int(x) for x in lines[j].split("=", 1)[1].split(",") if x
            )
            child, j = node(j + 1)
            parts.append((child, to_parent))
        return (
            CliqueSumSplit(
                ring=ring,
                interface=interface,
                deletions=deletions,
                parts=tuple(parts),
            ),
            j,
        )

    tree, i = node(i + 1)
    if i != len(lines):
        raise GraphFormatError("trailing lines after the certificate tree")
    return Certificate(ring=ring, tree=tree)


# -- ring blowups of simple rings ---------------------------------------------------


def ring_blowup_of(q: SimpleRing) -> RingBlowup:
    """The full blowup of a simple ring, packaged with its reduct data."""
    g, clones, inner = blowup(q.graph, q.outer)
    return RingBlowup(
        graph=g,
        reduct=q.graph,
        outer=q.outer,
        clones={p: tuple(c) for p, c in clones.items()},
        inner=inner,
    )


def verify_simple_ring_blowup(r: RingBlowup) -> Verdict:
    chk = verify_ring_blowup(r)
    if not chk:
        return chk
    chk = verify_simple_ring(SimpleRing(r.reduct, r.outer))
    if not chk:
        return Verdict(False, "reduct: " + chk.why)
    return Verdict(True)


# -- shrinking a ring blowup onto a model -------------------------------------------


def _stock_small_instance(t: int) -> tuple[RingBlowup, MinorModel]:
    # the blowup of a single outer edge is a 4-clique, enough for t <= 4
    ring = SimpleRing(WeightedGraph(2, [(0, 1)]), (0, 1))
    return ring_blowup_of(ring), MinorModel(tuple((i,) for i in range(t)))


def make_simple(r: RingBlowup, model: MinorModel) -> tuple[RingBlowup, MinorModel]:
    """Shrink a ring blowup onto a clique model without losing the model.

    Vertices outside every branch set are deleted; branch sets that
    avoid the doubled ring vertices collapse to single inner vertices
    (at most three of them fit, else InnerCliqueTooLarge); every other
    vertex is absorbed into a doubled ring vertex of its own branch
    set.  The result is a ring blowup whose reduct is a simple ring,
    together with the model the operations carry along.  Models of
    order at most four are served by a fixed stock instance.
    """
    t = model.order
    if t < 1:
        raise InvalidModel("empty model")
    if t <= 4:
        return _stock_small_instance(t)
    chk = verify_ring_blowup(r)
    if not chk:
        raise InvalidModel("ring blowup: " + chk.why)
    chk = verify_minor_model(r.graph, complete_graph(t), model)
    if not chk:
        raise InvalidModel(chk.why)
    blow = r.blowup_vertices()
    role = r.roles()
    # class of every kept vertex: ("ring", doubled vertex) or ("inner", set index)
    cls: dict[int, tuple[str, int]] = {}
    inner_sets: list[int] = []
    for si, branch in enumerate(model.sets):
        members = set(branch)
        seeds = sorted(v for v in branch if v in blow)
        if not seeds:
            inner_sets.append(si)
            for v in branch:
                cls[v] = ("inner", si)
            continue
        # absorb every other member into its nearest seed, ties to the
        # smallest seed id; each class stays connected by its search tree
        owner = {v: v for v in seeds}
        layer = list(seeds)
        while layer:
            claims: dict[int, int] = {}
            for v in layer:
                for u in r.graph.neighbors(v):
                    if u in members and u not in owner:
                        if u not in claims or owner[v] < claims[u]:
                            claims[u] = owner[v]
            for u, own in claims.items():
                owner[u] = own
            layer = sorted(claims)
        if len(owner) != len(members):
            raise InvalidModel(f"branch set {si} is not connected")
        for v in branch:
            cls[v] = ("ring", owner[v])
    if len(inner_sets) > 3:
        raise InnerCliqueTooLarge(
            f"{len(inner_sets)} branch sets avoid the doubled ring vertices"
        )
    # lay out the quotient: surviving ring positions first, in ring order
    keep_copies: dict[int, list[int]] = {}
    for key in set(cls.values()):
        if key[0] == "ring":
            keep_copies.setdefault(role[key[1]][0], []).append(key[1])
    new_outer_ps = [p for p in r.outer if p in keep_copies]
    gid: dict[tuple[str, int], int] = {}
    clones: dict[int, tuple[int, ...]] = {}
    nid = 0
    for rp, p in enumerate(new_outer_ps):
        ids = []
        for v in sorted(keep_copies[p]):
            gid[("ring", v)] = nid
            ids.append(nid)
            nid += 1
        clones[rp] = tuple(ids)
    inner_map: dict[int, int] = {}
    for j, si in enumerate(sorted(inner_sets)):
        gid[("inner", si)] = nid
        inner_map[len(new_outer_ps) + j] = nid
        nid += 1
    edges = set()
    for a, b in r.graph.edges():
        if a in cls and b in cls:
            ka, kb = gid[cls[a]], gid[cls[b]]
            if ka != kb:
                edges.add(edge_key(ka, kb))
    new_g = WeightedGraph(nid, sorted(edges))
    red_of: dict[int, int] = {}
    for rp, ids in clones.items():
        for x in ids:
            red_of[x] = rp
    for rp, x in inner_map.items():
        red_of[x] = rp
    red_edges = set()
    for a, b in new_g.edges():
        ra, rb = red_of[a], red_of[b]
        if ra != rb:
            red_edges.add(edge_key(ra, rb))
    reduct = WeightedGraph(len(new_outer_ps) + len(inner_sets), sorted(red_edges))
    out = RingBlowup(
        graph=new_g,
        reduct=reduct,
        outer=tuple(range(len(new_outer_ps))),
        clones=clones,
        inner=inner_map,
    )
    carried = MinorModel(
        tuple(tuple(sorted({gid[cls[v]] for v in branch})) for branch in model.sets)
    )
    chk = verify_simple_ring_blowup(out)
    if not chk:
        raise CaseViolation("shrunk blowup fails the structural check: " + chk.why)
    chk = verify_minor_model(new_g, complete_graph(t), carried)
    if not chk:
        raise CaseViolation("shrinking lost the model: " + chk.why)
    return out, carried
