"""Seeded instance generators. Equal arguments always give identical output."""

from __future__ import annotations

import random

from .graph import Graph, edge, line_graph
from .sat import CnfFormula


def gen_random(seed: int, n: int, p: float) -> Graph:
    """G(n, p): each pair (in lexicographic order) is an edge with probability ``p``."""
    rng = random.Random(seed)
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def triangle_free(seed: int, n: int, p: float) -> Graph:
    """Random triangle-free graph: G(n, p) edges are added in random order, skipping
    any edge that would close a triangle."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    rng.shuffle(pairs)
    adj = [0] * n
    for u, v in pairs:
        if adj[u] & adj[v]:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph.from_adjacency(adj)


def gen_domino(seed: int, n: int, p: float) -> Graph:
    """Line graph of a random triangle-free graph on ``n`` vertices; always claw- and diamond-free."""
    return line_graph(triangle_free(seed, n, p))[0]


def perturb(g: Graph, seed: int, edits: int) -> Graph:
    """Toggle ``edits`` distinct random vertex pairs of ``g``."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    edges = set(g.edges)
    for u, v in rng.sample(pairs, min(edits, len(pairs))):
        edges ^= {edge(u, v)}
    return Graph(g.n, edges)


def gen_near_domino(seed: int, n: int, p: float, edits: int) -> Graph:
    """A linear domino with a few toggled pairs: few obstructions, so small budgets matter."""
    return perturb(gen_domino(seed, n, p), seed + 1, edits)


def gen_3sat(seed: int, n: int, m: int) -> CnfFormula:
    """Uniform strict 3SAT: each clause picks 3 distinct variables of ``1..n`` and random signs."""
    if m > 0 and n < 3:
        raise ValueError("strict 3SAT clauses need at least 3 variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        chosen = sorted(rng.sample(range(1, n + 1), 3))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return CnfFormula(n, tuple(clauses))
