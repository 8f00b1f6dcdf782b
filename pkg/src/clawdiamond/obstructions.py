"""Induced claws and diamonds, HDS checks, and the greedy modulator.

Both obstructions have a vertex adjacent to the other three (the claw center, or
either degree-3 vertex of a diamond). So every candidate 4-set is a vertex ``c``
plus three of its neighbors, and ``G`` is {claw, diamond}-free exactly when every
neighborhood ``G[N(c)]`` is a disjoint union of at most two cliques.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .graph import ContractError, Edge, Graph, bits, edge

CLAW = "claw"
DIAMOND = "diamond"


@dataclass(frozen=True)
class Obstruction:
    """An induced claw or diamond.

    ``roles`` is ``(c, u, v, w)`` for a claw (center first, leaves ascending) and
    ``(u, v, w, x)`` for a diamond, where ``u < x`` is the non-adjacent pair and
    ``v < w`` the adjacent degree-3 pair.
    """

    kind: str
    roles: tuple[int, int, int, int]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.roles))

    @property
    def edges(self) -> frozenset[Edge]:
        if self.kind == CLAW:
            c, u, v, w = self.roles
            return frozenset({edge(c, u), edge(c, v), edge(c, w)})
        u, v, w, x = self.roles
        return frozenset({edge(u, v), edge(u, w), edge(v, w), edge(v, x), edge(w, x)})

    @property
    def non_edges(self) -> frozenset[Edge]:
        quad = self.vertices
        return frozenset(edge(a, b) for a, b in combinations(quad, 2)) - self.edges


def classify(adj: Sequence[int], quad: Iterable[int]) -> Obstruction | None:
    """The obstruction induced on four vertices, if any (a 4-set induces at most one)."""
    quad = tuple(sorted(quad))
    present = [(a, b) for a, b in combinations(quad, 2) if adj[a] >> b & 1]
    if len(present) == 3:
        deg = {v: 0 for v in quad}
        for a, b in present:
            deg[a] += 1
            deg[b] += 1
        centers = [v for v in quad if deg[v] == 3]
        if not centers:
            return None  # path or triangle plus isolated vertex
        c = centers[0]
        leaves = tuple(v for v in quad if v != c)
        return Obstruction(CLAW, (c, *leaves))
    if len(present) == 5:
        u, x = next((a, b) for a, b in combinations(quad, 2) if not adj[a] >> b & 1)
        v, w = (t for t in quad if t not in (u, x))
        return Obstruction(DIAMOND, (u, v, w, x))
    return None


def _candidate_quads(adj: Sequence[int]) -> list[tuple[int, ...]]:
    """Sorted 4-sets that induce a claw or diamond, found from their dominating vertex."""
    found = set()
    for c, nbrs in enumerate(adj):
        if nbrs.bit_count() < 3:
            continue
        for a, b, d in combinations(list(bits(nbrs)), 3):
            ab, ad, bd = adj[a] >> b & 1, adj[a] >> d & 1, adj[b] >> d & 1
            if ab + ad + bd in (0, 2):
                found.add(tuple(sorted((c, a, b, d))))
    return sorted(found)


def iter_obstructions(g: Graph, forbidden: Iterable[Edge] = ()) -> Iterator[Obstruction]:
    """All induced obstructions of ``g`` avoiding ``forbidden``, in canonical order.

    Canonical order is lexicographic on the sorted vertex tuple.
    """
    forbidden = frozenset(forbidden)
    for quad in _candidate_quads(g.adj):
        obs = classify(g.adj, quad)
        if obs is not None and not (forbidden and obs.edges & forbidden):
            yield obs


def find_obstruction(g: Graph, forbidden: Iterable[Edge] = ()) -> Obstruction | None:
    """The canonically first induced claw/diamond of ``g`` that uses no forbidden edge."""
    return next(iter_obstructions(g, forbidden), None)


def iter_obstructions_through(
    adj: Sequence[int], must: Sequence[int], pool: int
) -> Iterator[Obstruction]:
    """Obstructions ``H`` with ``must ⊆ V(H)`` and ``V(H) - must`` inside bitmask ``pool``.

    Canonical order as in :func:`iter_obstructions`. ``pool`` must not meet ``must``.
    """
    must = tuple(sorted(must))
    need = 4 - len(must)
    common = pool
    for m in must:
        common &= adj[m]
    quads = set()
    for c in (*must, *bits(common)):
        if any(m != c and not adj[c] >> m & 1 for m in must):
            continue
        rest = tuple(m for m in must if m != c)
        take = need - (c not in must)
        room = [v for v in bits(adj[c] & pool) if v != c]
        for extra in combinations(room, take):
            quads.add(tuple(sorted((c, *rest, *extra))))
    for quad in sorted(quads):
        obs = classify(adj, quad)
        if obs is not None:
            yield obs


def obstruction_free(adj: Sequence[int]) -> bool:
    """True iff every neighborhood induces at most two disjoint cliques."""
    for nbrs in adj:
        rest = nbrs
        parts = 0
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            part = adj[v] & nbrs | low
            probe = part ^ low
            while probe:
                bit = probe & -probe
                if adj[bit.bit_length() - 1] & nbrs | bit != part:
                    return False
                probe ^= bit
            parts += 1
            if parts > 2:
                return False
            rest &= ~part
    return True


def k4_diamond_free(adj: Sequence[int]) -> bool:
    """True iff there is no K4 and no induced diamond: every ``G[N(c)]`` is a matching."""
    for nbrs in adj:
        for v in bits(nbrs):
            inside = adj[v] & nbrs
            if inside.bit_count() > 1:
                return False
    return True


def is_claw_diamond_free(g: Graph) -> bool:
    return obstruction_free(g.adj)


def is_hds(g: Graph, f: Iterable[Edge]) -> bool:
    """True iff ``g - f`` has no induced claw and no induced diamond."""
    adj = list(g.adj)
    for u, v in f:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.adj[u] >> v & 1:
            raise ContractError(f"({u}, {v}) is not an edge of the graph")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return obstruction_free(adj)


def greedy_packing(g: Graph, limit: int | None = None) -> list[Obstruction]:
    """Maximal edge-disjoint packing of induced obstructions in canonical order.

    Stops early once ``limit`` obstructions are packed. Equivalent to calling
    :func:`find_obstruction` repeatedly with all used edges forbidden.
    """
    used: set[Edge] = set()
    packing = []
    for obs in iter_obstructions(g):
        if obs.edges.isdisjoint(used):
            packing.append(obs)
            used |= obs.edges
            if limit is not None and len(packing) >= limit:
                break
    return packing


@dataclass(frozen=True)
class Modulator:
    packing: tuple[Obstruction, ...]
    x: frozenset[int]


@dataclass(frozen=True)
class NoInstance:
    """More than ``k`` edge-disjoint obstructions: ``packing`` certifies that no HDS of size ``k`` exists."""

    packing: tuple[Obstruction, ...]


def build_modulator(g: Graph, k: int) -> Modulator | NoInstance:
    if k < 0:
        raise ValueError("budget must be non-negative")
    packing = greedy_packing(g, limit=k + 1)
    if len(packing) > k:
        return NoInstance(tuple(packing))
    x = frozenset(v for obs in packing for v in obs.roles)
    return Modulator(tuple(packing), x)
