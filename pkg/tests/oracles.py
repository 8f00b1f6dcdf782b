"""Slow reference implementations, written independently of the package internals.

Graphs here are plain ``(n, set of frozenset pairs)``; nothing below touches the
bitmask adjacency used by the library.
"""

from __future__ import annotations

from itertools import combinations, product


def pairs(g):
    return g.n, {frozenset(e) for e in g.edges}


def quad_kind(edges, quad):
    """'claw', 'diamond' or None for the subgraph induced on four vertices."""
    present = [frozenset(p) for p in combinations(quad, 2) if frozenset(p) in edges]
    degree = {v: sum(v in e for e in present) for v in quad}
    degs = sorted(degree.values())
    if len(present) == 3 and degs == [1, 1, 1, 3]:
        return "claw"
    if len(present) == 5:
        return "diamond"
    return None


def naive_obstructions(n, edges):
    return [(q, quad_kind(edges, q)) for q in combinations(range(n), 4) if quad_kind(edges, q)]


def naive_free(n, edges):
    return all(quad_kind(edges, q) is None for q in combinations(range(n), 4))


def naive_k4_diamond_free(n, edges):
    for q in combinations(range(n), 4):
        if sum(frozenset(p) in edges for p in combinations(q, 2)) >= 5:
            return False
    return True


def naive_min_hds(n, edges, k, allowed=None):
    """(answer, list of inclusion-minimal HDSs of size <= k) by full subset enumeration."""
    pool = sorted(tuple(sorted(e)) for e in edges if allowed is None or e <= allowed)
    hits = []
    for r in range(k + 1):
        for f in combinations(pool, r):
            fs = {frozenset(e) for e in f}
            if naive_free(n, edges - fs):
                hits.append(frozenset(f))
    minimal = [f for f in hits if not any(h < f for h in hits)]
    return bool(hits), minimal


def truth_table_sat(num_vars, clauses):
    for bits in product((False, True), repeat=num_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def maximal_cliques(n, edges):
    """Bron-Kerbosch without pivoting."""
    nbr = {v: {u for u in range(n) if frozenset((u, v)) in edges} for v in range(n)}
    out = []

    def grow(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        for v in sorted(p):
            grow(r | {v}, p & nbr[v], x & nbr[v])
            p = p - {v}
            x = x | {v}

    grow(set(), set(range(n)), set())
    return out


_COLUMNS: dict[int, list[int]] = {}


def _columns(n):
    """Column ``v`` has bit ``a`` set iff assignment ``a`` makes variable ``v + 1`` true."""
    if n not in _COLUMNS:
        size = 1 << n
        cols = []
        for v in range(n):
            block = (1 << (1 << v)) - 1  # 2^v ones
            period = block << (1 << v)  # then 2^v zeros below them
            col = 0
            for start in range(0, size, 1 << (v + 1)):
                col |= period << start
            cols.append(col)
        _COLUMNS[n] = cols
    return _COLUMNS[n]


def bitset_sat(num_vars, clauses):
    """Exhaustive satisfiability with Python ints as bitsets over all 2^n assignments."""
    if any(len(c) == 0 for c in clauses):
        return False
    full = (1 << (1 << num_vars)) - 1
    cols = _columns(num_vars)
    alive = full
    for c in clauses:
        acc = 0
        for lit in c:
            col = cols[abs(lit) - 1]
            acc |= col if lit > 0 else full ^ col
        alive &= acc
        if not alive:
            return False
    return True
