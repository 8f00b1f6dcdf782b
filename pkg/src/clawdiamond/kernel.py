"""Compression to an annotated instance and the full polynomial kernel.

Pipeline for ``(G, k)``:

1. greedy modulator ``X`` (``|X| <= 4k``), or a certified no-instance;
2. bags of ``G - X`` and their attachment to ``X``;
3. marking of small bags, giving ``S`` with every minimal HDS of size <= k inside E(S);
4. ``U ⊇ S`` keeping one witness obstruction per (M ⊆ S, F ⊆ E(M)) pattern;
5. optionally: annotated instance -> CNF -> strict 3SAT -> graph.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

from .domino import AttachmentMap, BagDecomposition, compute_attachment, decompose_outside
from .graph import (
    Edge,
    Graph,
    GraphFormatError,
    claw_graph,
    induced_subgraph,
    parse_records,
    to_mask,
    write_graph,
)
from .obstructions import Modulator, NoInstance, build_modulator, iter_obstructions_through
from .reductions import GadgetLayout, annotated_to_cnf, cnf_to_3sat, sat3_to_graph
from .sat import CnfFormula

C = 4  # vertices of the largest obstruction


class KernelBoundError(AssertionError):
    """A size bound that holds by construction was violated."""


@dataclass(frozen=True)
class AnnotatedInstance:
    """Is there an HDS of ``graph`` of size <= k using only edges inside ``s_set``?

    ``origin[i]`` is the id in the input graph of vertex ``i`` (empty when the
    instance is one of the canonical trivial ones). ``status`` is ``"yes"`` or
    ``"no"`` for the trivial instances and None otherwise.
    """

    graph: Graph
    s_set: frozenset[int]
    k: int
    origin: tuple[int, ...] = ()
    status: str | None = None

    def __post_init__(self):
        if any(not 0 <= v < self.graph.n for v in self.s_set):
            raise ValueError("annotated set must be inside the vertex set")
        if self.k < 0:
            raise ValueError("budget must be non-negative")

    def deletable(self) -> frozenset[Edge]:
        return self.graph.edges_within(self.s_set)

    def lift(self, f: Iterable[Edge]) -> frozenset[Edge]:
        """Map a deletion set of this instance back to input-graph ids."""
        return frozenset(tuple(sorted((self.origin[u], self.origin[v]))) for u, v in f)


TRIVIAL_YES = AnnotatedInstance(Graph(0), frozenset(), 0, status="yes")
TRIVIAL_NO = AnnotatedInstance(claw_graph(), frozenset(), 0, status="no")


# --- marking ---------------------------------------------------------------------

RULE_ATTACHED = 1
RULE_NEXT_TO_ATTACHED = 2
RULE_PAIR = 3


@dataclass(frozen=True)
class MarkingResult:
    small_threshold: int
    marks: dict[int, int]  # bag id -> rule that marked it first
    pair_marks: dict[tuple[int, int], tuple[int, ...]]  # {x, y} -> bags chosen for the pair
    s_set: frozenset[int]
    x: frozenset[int]
    decomposition: BagDecomposition = field(repr=False)
    attachment: AttachmentMap = field(repr=False)

    def marked_bound(self, k: int) -> int:
        x = len(self.x)
        return 2 * x + 2 * x * (2 * k + 1) + x * x * (k + 1)

    def s_bound(self, k: int) -> int:
        return len(self.x) + self.marked_bound(k) * (2 * k + 1)


def mark_and_extract_s(g: Graph, modulator: Modulator, k: int) -> MarkingResult:
    """Mark small bags of ``G - X`` and return S = X plus the marked bags' vertices.

    A bag is small if it has fewer than ``2k + 2`` vertices. Marked are: every
    small attached bag; every small unattached bag meeting a small attached bag;
    and, for each pair ``x, y`` in X, the first ``k + 1`` small unattached bags of
    size >= 2 with a vertex in ``N(x) ∩ N(y)``, ordered by (smallest vertex, bag id).
    """
    x_set = modulator.x
    d = decompose_outside(g, x_set, check=False)
    attachment = compute_attachment(g, x_set, d)
    threshold = 2 * k + 2
    small = [len(bag) < threshold for bag in d.bags]
    attached = attachment.attached_bags()

    marks: dict[int, int] = {}
    for b in sorted(attached):
        if small[b]:
            marks[b] = RULE_ATTACHED
    near = to_mask(v for b in marks for v in d.bags[b])
    for b, bag in enumerate(d.bags):
        if small[b] and b not in attached and to_mask(bag) & near:
            marks.setdefault(b, RULE_NEXT_TO_ATTACHED)

    candidates = sorted(
        (b for b, bag in enumerate(d.bags) if small[b] and b not in attached and len(bag) >= 2),
        key=lambda b: (min(d.bags[b]), b),
    )
    masks = {b: to_mask(d.bags[b]) for b in candidates}
    pair_marks = {}
    for x, y in combinations(sorted(x_set), 2):
        common = g.adj[x] & g.adj[y]
        chosen = tuple([b for b in candidates if masks[b] & common][: k + 1])
        pair_marks[(x, y)] = chosen
        for b in chosen:
            marks.setdefault(b, RULE_PAIR)

    s_set = frozenset(x_set) | {v for b in marks for v in d.bags[b]}
    result = MarkingResult(threshold, marks, pair_marks, s_set, frozenset(x_set), d, attachment)
    if len(marks) > result.marked_bound(k) or len(s_set) > result.s_bound(k):
        raise KernelBoundError("marking exceeded its size bound")
    return result


# --- U construction ----------------------------------------------------------------


def u_bound(s_size: int) -> int:
    """|S| + c^2 * 2^C(c-1, 2) * |S|^(c-1) with c = 4."""
    return s_size + C * C * 2 ** 3 * s_size ** (C - 1)


def build_u_set(g: Graph, s_set: Iterable[int]) -> frozenset[int]:
    """S plus, for each M ⊆ S with |M| <= 3 and each F ⊆ E(M), the vertices of the
    first obstruction H of ``G - F`` with V(H) ∩ S = M (if one exists)."""
    s_sorted = sorted(set(s_set))
    pool = to_mask(range(g.n)) & ~to_mask(s_sorted)
    u = set(s_sorted)
    for size in range(C):
        for m in combinations(s_sorted, size):
            inner = [(a, b) for a, b in combinations(m, 2) if g.adj[a] >> b & 1]
            for r in range(len(inner) + 1):
                for f in combinations(inner, r):
                    adj = list(g.adj)
                    for a, b in f:
                        adj[a] &= ~(1 << b)
                        adj[b] &= ~(1 << a)
                    witness = next(iter_obstructions_through(adj, m, pool), None)
                    if witness is not None:
                        u.update(witness.roles)
    return frozenset(u)


def build_u(g: Graph, s_set: Iterable[int], k: int) -> AnnotatedInstance:
    """The annotated instance (G[U], S, k); equivalent to (G, k) when every minimal
    HDS of size <= k lies in E(S)."""
    s_set = frozenset(s_set)
    u = build_u_set(g, s_set)
    sub, index = induced_subgraph(g, u)
    return AnnotatedInstance(sub, frozenset(index[v] for v in s_set), k, tuple(sorted(u)))


# --- compression -------------------------------------------------------------------


@dataclass(frozen=True)
class Compression:
    instance: AnnotatedInstance
    modulator: Modulator | NoInstance
    marking: MarkingResult | None = None

    @property
    def status(self) -> str | None:
        return self.instance.status

    def sizes(self) -> dict[str, int]:
        if self.marking is None:
            return {}
        return {"x": len(self.marking.x), "s": len(self.marking.s_set), "u": self.instance.graph.n}


def compress_report(g: Graph, k: int) -> Compression:
    """Compression with the intermediate modulator and marking kept for inspection."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    modulator = build_modulator(g, k)
    if isinstance(modulator, NoInstance):
        return Compression(TRIVIAL_NO, modulator)
    if not modulator.packing:
        return Compression(TRIVIAL_YES, modulator)
    marking = mark_and_extract_s(g, modulator, k)
    instance = build_u(g, marking.s_set, k)
    x, s, u = len(marking.x), len(marking.s_set), instance.graph.n
    if x > C * k or s > marking.s_bound(k) or u > u_bound(s):
        raise KernelBoundError(f"size chain violated: |X|={x}, |S|={s}, |U|={u}")
    return Compression(instance, modulator, marking)


def compress(g: Graph, k: int) -> AnnotatedInstance:
    return compress_report(g, k).instance


# --- full kernel -------------------------------------------------------------------


@dataclass(frozen=True)
class KernelResult:
    graph: Graph
    k: int
    compression: Compression
    cnf: CnfFormula | None = None
    var_map: dict[int, Edge] | None = None
    cnf3: CnfFormula | None = None
    layout: GadgetLayout | None = None


def kernelize_full(g: Graph, k: int, max_quads: int | None = 5_000_000) -> KernelResult:
    """An equivalent instance of the same problem whose size is polynomial in ``k``.

    Trivial outcomes map to fixed instances: yes -> (empty graph, 0), no -> (claw, 0).
    """
    comp = compress_report(g, k)
    if comp.status == "yes":
        return KernelResult(Graph(0), 0, comp)
    if comp.status == "no":
        return KernelResult(claw_graph(), 0, comp)
    cnf, var_map = annotated_to_cnf(comp.instance, max_quads=max_quads)
    cnf3 = cnf_to_3sat(cnf)
    if not cnf3.clauses:
        return KernelResult(Graph(0), 0, comp, cnf, var_map, cnf3)
    graph, budget, layout = sat3_to_graph(cnf3)
    return KernelResult(graph, budget, comp, cnf, var_map, cnf3, layout)


# --- annotated instance file format -------------------------------------------------


def write_annotated(a: AnnotatedInstance) -> str:
    lines = [write_graph(a.graph).rstrip("\n")]
    lines.extend(f"s {v + 1}" for v in sorted(a.s_set))
    lines.append(f"k {a.k}")
    return "\n".join(lines) + "\n"


def parse_annotated(text: str | bytes) -> AnnotatedInstance:
    g, records = parse_records(text, extra=("s", "k"))
    s_set = set()
    for lineno, fields in records["s"]:
        if len(fields) != 1 or not 1 <= fields[0] <= g.n:
            raise GraphFormatError("'s' line must hold one vertex id in range", lineno)
        s_set.add(fields[0] - 1)
    ks = records["k"]
    if len(ks) != 1:
        raise GraphFormatError("annotated instance needs exactly one 'k' line", ks[1][0] if ks else 0)
    lineno, fields = ks[0]
    if len(fields) != 1 or fields[0] < 0:
        raise GraphFormatError("'k' line must hold one non-negative integer", lineno)
    return AnnotatedInstance(g, frozenset(s_set), fields[0], tuple(range(g.n)))
