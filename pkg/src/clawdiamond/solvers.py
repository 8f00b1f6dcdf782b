"""Exact decision procedures for {claw, diamond}-free edge deletion.

``solve_branching`` is the bounded search tree: pick an obstruction, branch on
deleting each of its (at most five) edges. ``brute_force_min_hds`` enumerates
edge subsets and is the ground truth the other procedures are checked against.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .graph import Edge, Graph, delete_edges, to_mask
from .obstructions import greedy_packing, is_hds, iter_obstructions, obstruction_free


class ScaleGuardError(RuntimeError):
    """The requested exhaustive search exceeds the configured limit."""


@dataclass
class SolveStats:
    nodes: int = 0
    depth: int = 0


@dataclass
class SolveResult:
    answer: bool
    witness: frozenset[Edge] | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    def __bool__(self) -> bool:
        return self.answer


def _search(g: Graph, k: int, deletable: frozenset[Edge] | None, stats: SolveStats, depth: int) -> frozenset[Edge] | None:
    stats.nodes += 1
    stats.depth = max(stats.depth, depth)
    found = list(iter_obstructions(g))
    if not found:
        return frozenset()
    if k == 0:
        return None
    if deletable is not None and any(not obs.edges & deletable for obs in found):
        return None
    # an HDS needs one edge from each of these pairwise edge-disjoint obstructions
    if len(greedy_packing(g, limit=k + 1)) > k:
        return None
    options = found[0].edges if deletable is None else found[0].edges & deletable
    for e in sorted(options):
        rest = _search(delete_edges(g, [e]), k - 1, deletable, stats, depth + 1)
        if rest is not None:
            return rest | {e}
    return None


def solve_branching(g: Graph, k: int) -> SolveResult:
    """Bounded search tree with at most ``5**k`` leaves."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    stats = SolveStats()
    witness = _search(g, k, None, stats, 0)
    return SolveResult(witness is not None, witness, stats)


def solve_annotated(instance) -> SolveResult:
    """Branching restricted to deletions inside E(S) of an :class:`AnnotatedInstance`."""
    g, k = instance.graph, instance.k
    if k < 0:
        raise ValueError("budget must be non-negative")
    deletable = g.edges_within(instance.s_set)
    stats = SolveStats()
    witness = _search(g, k, frozenset(deletable), stats, 0)
    return SolveResult(witness is not None, witness, stats)


@dataclass
class BruteForceResult:
    result: SolveResult
    minimal: list[frozenset[Edge]]
    checked: int

    @property
    def answer(self) -> bool:
        return self.result.answer


def subset_count(m: int, k: int) -> int:
    return sum(comb(m, i) for i in range(min(k, m) + 1))


def brute_force_min_hds(
    g: Graph,
    k: int,
    restrict: Iterable[int] | None = None,
    max_subsets: int = 2_000_000,
) -> BruteForceResult:
    """Enumerate every edge subset of size <= k, in size-then-lex order.

    Returns the first HDS found as the witness and every inclusion-minimal HDS of
    size <= k. With ``restrict`` only subsets of E(restrict) are considered.
    Raises :class:`ScaleGuardError` when more than ``max_subsets`` subsets would
    be enumerated.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    pool = sorted(g.edges if restrict is None else g.edges_within(restrict))
    total = subset_count(len(pool), k)
    if total > max_subsets:
        raise ScaleGuardError(f"{total} subsets exceed the limit of {max_subsets}")
    base = list(g.adj)
    minimal: list[frozenset[Edge]] = []
    checked = 0
    for size in range(min(k, len(pool)) + 1):
        for subset in combinations(pool, size):
            checked += 1
            chosen = frozenset(subset)
            if any(m <= chosen for m in minimal):
                continue
            adj = base.copy()
            for u, v in subset:
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
            if obstruction_free(adj):
                minimal.append(chosen)
    witness = minimal[0] if minimal else None
    return BruteForceResult(SolveResult(witness is not None, witness), minimal, checked)


def is_valid_witness(g: Graph, k: int, witness: Iterable[Edge], s_set: Iterable[int] | None = None) -> bool:
    witness = frozenset(witness)
    if len(witness) > k or not witness <= g.edges:
        return False
    if s_set is not None:
        mask = to_mask(s_set)
        if any(not (mask >> u & 1 and mask >> v & 1) for u, v in witness):
            return False
    return is_hds(g, witness)
