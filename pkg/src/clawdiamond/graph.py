"""Simple undirected graphs with bitmask adjacency, plus the line-oriented file format.

Vertices are the integers ``0..n-1``. Edges are normalized tuples ``(u, v)`` with
``u < v``; an edge set is any iterable of such tuples (a ``frozenset`` by
convention). Files use 1-based ids in the DIMACS style::

    c optional comment
    p edge 4 3
    e 1 2
    e 1 3
    e 1 4
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph/instance text. ``lineno`` is 1-based, 0 for whole-file problems."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ContractError(ValueError):
    """An operation was called outside its precondition (e.g. deleting a non-edge)."""


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple graph on ``range(n)``.

    ``adj[v]`` is an int bitmask of the neighbors of ``v``, so adjacency tests
    and neighborhood intersections are single integer operations.
    """

    __slots__ = ("n", "adj", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            normalized.add(edge(u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj: tuple[int, ...] = tuple(adj)
        self.edges: frozenset[Edge] = frozenset(normalized)

    @classmethod
    def from_adjacency(cls, adj: list[int]) -> Graph:
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(adj)
        g.edges = frozenset((u, v) for u in range(len(adj)) for v in bits(adj[u] >> (u + 1) << (u + 1)))
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adj), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def edges_within(self, vertices: Iterable[int]) -> frozenset[Edge]:
        """E(S): the edges with both endpoints in ``vertices``."""
        mask = to_mask(vertices)
        return frozenset(e for e in self.edges if mask >> e[0] & 1 and mask >> e[1] & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def delete_edges(g: Graph, f: Iterable[tuple[int, int]]) -> Graph:
    """G - F. Every element of ``f`` must be an edge of ``g``."""
    adj = list(g.adj)
    for u, v in f:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise ContractError(f"({u}, {v}) is not an edge of the graph")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph.from_adjacency(adj)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """G[S] relabelled to ``0..|S|-1`` in ascending id order, with the old->new id map."""
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ContractError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(keep)}
    sub = Graph(len(keep), ((index[u], index[v]) for u, v in g.edges if u in index and v in index))
    return sub, index


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    mask = to_mask(vertices)
    return all((g.adj[v] | 1 << v) & mask == mask for v in bits(mask))


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff N(v) is a clique (vacuously for degree 0 and 1)."""
    nbrs = g.adj[v]
    return all((g.adj[u] | 1 << u) & nbrs == nbrs for u in bits(nbrs))


# --- named small graphs -------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def claw_graph() -> Graph:
    """K_{1,3} with center 0."""
    return Graph(4, [(0, 1), (0, 2), (0, 3)])


def diamond_graph() -> Graph:
    """Diamond on u=0, v=1, w=2, x=3: edges uv, uw, vw, vx, wx."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


def line_graph(h: Graph) -> tuple[Graph, list[Edge]]:
    """L(H): one vertex per edge of H (in sorted edge order), adjacent iff the edges meet."""
    order = h.sorted_edges()
    at = [[] for _ in range(h.n)]
    for i, (a, b) in enumerate(order):
        at[a].append(i)
        at[b].append(i)
    pairs = ((i, j) for group in at for x, i in enumerate(group) for j in group[x + 1:])
    return Graph(len(order), pairs), order


# --- file format --------------------------------------------------------------

def _tokens(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if parts and parts[0] != "c":
            yield lineno, parts


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", lineno) from None


def parse_records(text: str | bytes, extra: Iterable[str] = ()) -> tuple[Graph, dict[str, list[tuple[int, list[int]]]]]:
    """Parse the graph part of ``text`` and collect records whose tag is in ``extra``.

    Returns the graph and, per extra tag, ``(lineno, int fields)`` in file order.
    Used by the annotated-instance and kernel readers, which add ``s``/``k`` lines.
    """
    extra = set(extra)
    n = declared_m = None
    edges: list[Edge] = []
    records: dict[str, list[tuple[int, list[int]]]] = {tag: [] for tag in extra}
    for lineno, parts in _tokens(text):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError("header must be 'p edge <n> <m>'", lineno)
            n, declared_m = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or declared_m < 0:
                raise GraphFormatError("negative count in header", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphFormatError(f"vertex id {x} out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            edges.append(edge(u - 1, v - 1))
        elif tag in extra:
            if n is None:
                raise GraphFormatError(f"'{tag}' line before header", lineno)
            records[tag].append((lineno, [_int(t, lineno) for t in parts[1:]]))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    # the header counts edge lines; duplicate lines still collapse to one edge
    if len(edges) != declared_m:
        raise GraphFormatError(f"header declares {declared_m} edges, found {len(edges)} edge lines")
    return Graph(n, edges), records


def parse_graph(text: str | bytes) -> Graph:
    return parse_records(text)[0]


def write_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_instance(text: str | bytes) -> tuple[Graph, int | None]:
    """A graph file optionally followed by one ``k <int>`` line (kernel output)."""
    g, records = parse_records(text, extra=("k",))
    ks = records["k"]
    if len(ks) > 1:
        raise GraphFormatError("more than one 'k' line", ks[1][0])
    if not ks:
        return g, None
    lineno, fields = ks[0]
    if len(fields) != 1 or fields[0] < 0:
        raise GraphFormatError("'k' line must hold one non-negative integer", lineno)
    return g, fields[0]


def write_instance(g: Graph, k: int) -> str:
    return write_graph(g) + f"k {k}\n"


def parse_edge_list(text: str | bytes, tag: str = "d") -> list[Edge]:
    """Read ``d <u> <v>`` lines (1-based). Lines with other leading tokens are ignored."""
    out = []
    for lineno, parts in _tokens(text):
        if parts[0] != tag:
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"'{tag}' line must be '{tag} <u> <v>'", lineno)
        u, v = _int(parts[1], lineno), _int(parts[2], lineno)
        if u < 1 or v < 1 or u == v:
            raise GraphFormatError(f"invalid edge {u} {v}", lineno)
        out.append(edge(u - 1, v - 1))
    return out
