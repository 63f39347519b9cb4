"""Exact graphs over rational arithmetic plus the shared plain-text format.

Vertices are dense integer indices 0..n-1.  Edge weights are
`fractions.Fraction`, so every quantity in the package is exact; nothing
here ever touches floating point.  Graphs are treated as immutable: every
transformation returns a fresh graph, usually together with a relabelling
map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]

ONE = Fraction(1)


class GraphFormatError(ValueError):
    """Malformed graph text.  `line` is the 1-based offending line if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Verdict:
    """Boolean with an attached diagnostic."""

    ok: bool
    why: str = ""

    def __bool__(self) -> bool:
        return self.ok


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def parse_rational(token: str, line: int | None = None) -> Fraction:
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise GraphFormatError(f"zero denominator in weight {token!r}", line) from None
    except ValueError:
        raise GraphFormatError(f"bad rational {token!r}", line) from None


def format_rational(x: Fraction) -> str:
    # Fraction's str() is already canonical: lowest terms, no "/1" on integers.
    return str(Fraction(x))


class WeightedGraph:
    """Undirected simple graph with exact rational edge weights."""

    __slots__ = ("n", "weights", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        self.weights: dict[Edge, Fraction] = {}
        self._adj: list[dict[int, Fraction]] = [dict() for _ in range(n)]
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = ONE
            else:
                u, v, w = item
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = edge_key(u, v)
            if key in self.weights:
                raise ValueError(f"duplicate edge {key}")
            w = Fraction(w)
            self.weights[key] = w
            self._adj[u][v] = w
            self._adj[v][u] = w

    # -- accessors ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.weights)

    def edges(self) -> list[Edge]:
        return sorted(self.weights)

    def weight(self, u: int, v: int) -> Fraction:
        return self.weights[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.weights

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adj(self, v: int) -> dict[int, Fraction]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.weights.values())

    def vertices(self) -> range:
        return range(self.n)

    # -- small constructive edits (each returns a new graph) ---------------

    def with_weight(self, u: int, v: int, w) -> "WeightedGraph":
        items = [(a, b, ww) for (a, b), ww in self.weights.items() if (a, b) != edge_key(u, v)]
        items.append((u, v, Fraction(w)))
        return WeightedGraph(self.n, items)

    def with_edge(self, u: int, v: int, w=ONE) -> "WeightedGraph":
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) already present")
        items = [(a, b, ww) for (a, b), ww in self.weights.items()]
        items.append((u, v, Fraction(w)))
        return WeightedGraph(self.n, items)

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        key = edge_key(u, v)
        if key not in self.weights:
            raise ValueError(f"no edge {key}")
        items = [(a, b, ww) for (a, b), ww in self.weights.items() if (a, b) != key]
        return WeightedGraph(self.n, items)

    def unweighted_copy(self) -> "WeightedGraph":
        return WeightedGraph(self.n, [(u, v, ONE) for (u, v) in self.weights])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self.n == other.n
            and self.weights == other.weights
        )

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


# -- file format ------------------------------------------------------------
#
# Header "n m", then m lines "u v w" with w an integer or "p/q".  Comments
# start with "#" and run to end of line.  Serialization is canonical: edges
# sorted with u < v, weights in lowest terms, newline-terminated.


def parse_graph(data: str | bytes) -> WeightedGraph:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    rows: list[tuple[int, list[str]]] = []
    for i, raw in enumerate(data.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            rows.append((i, text.split()))
    if not rows:
        raise GraphFormatError("missing header")
    line, head = rows[0]
    if len(head) != 2:
        raise GraphFormatError("header must be 'n m'", line)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header must be two integers", line) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", line)
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}", line)
    edges = []
    seen: set[Edge] = set()
    for line, toks in body:
        if len(toks) != 3:
            raise GraphFormatError("edge line must be 'u v w'", line)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError("endpoints must be integers", line) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", line)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", line)
        key = edge_key(u, v)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", line)
        seen.add(key)
        edges.append((u, v, parse_rational(toks[2], line)))
    return WeightedGraph(n, edges)


def serialize_graph(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    for u, v in g.edges():
        out.append(f"{u} {v} {format_rational(g.weights[(u, v)])}")
    return "\n".join(out) + "\n"


# -- transformations --------------------------------------------------------


def induced_subgraph(g: WeightedGraph, keep: Iterable[int]) -> tuple[WeightedGraph, list[int]]:
    """Induced subgraph on `keep`.  Returns (subgraph, new-id -> old-id map)."""
    order = sorted(set(keep))
    for v in order:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    index = {old: new for new, old in enumerate(order)}
    edges = [
        (index[u], index[v], w)
        for (u, v), w in g.weights.items()
        if u in index and v in index
    ]
    return WeightedGraph(len(order), edges), order


def delete_vertices(g: WeightedGraph, drop: Iterable[int]) -> tuple[WeightedGraph, list[int]]:
    dropped = set(drop)
    return induced_subgraph(g, (v for v in range(g.n) if v not in dropped))


def contract_edge(g: WeightedGraph, u: int, v: int) -> tuple[WeightedGraph, list[int]]:
    """Contract the edge uv (minor semantics, unweighted graphs only).

    Parallel edges arising from the merge collapse to a single edge and the
    loop is dropped.  Returns (graph, old-id -> new-id map).
    """
    if not g.has_edge(u, v):
        raise ValueError(f"no edge ({u},{v}) to contract")
    if not g.is_unweighted():
        raise ValueError("contraction is only defined for unit-weight graphs")
    lo, hi = edge_key(u, v)
    mapping = []
    for x in range(g.n):
        if x == hi:
            mapping.append(lo if lo < hi else lo - 1)
        else:
            mapping.append(x if x < hi else x - 1)
    edges = set()
    for (a, b) in g.weights:
        na, nb = mapping[a], mapping[b]
        if na != nb:
            edges.add(edge_key(na, nb))
    return WeightedGraph(g.n - 1, [(a, b, ONE) for a, b in sorted(edges)]), mapping


def relabel(g: WeightedGraph, new_id: Sequence[int]) -> WeightedGraph:
    """Apply the permutation old-id -> new_id[old-id]."""
    if sorted(new_id) != list(range(g.n)):
        raise ValueError("not a permutation")
    return WeightedGraph(
        g.n, [(new_id[u], new_id[v], w) for (u, v), w in g.weights.items()]
    )


def disjoint_union(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    off = g.n
    edges = [(u, v, w) for (u, v), w in g.weights.items()]
    edges += [(u + off, v + off, w) for (u, v), w in h.weights.items()]
    return WeightedGraph(g.n + h.n, edges)


# -- small families used throughout the tests and docs ----------------------


def empty_graph(n: int) -> WeightedGraph:
    return WeightedGraph(n)


def complete_graph(k: int) -> WeightedGraph:
    return WeightedGraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def cycle_graph(k: int) -> WeightedGraph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return WeightedGraph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> WeightedGraph:
    return WeightedGraph(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> WeightedGraph:
    return WeightedGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def iter_set_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
