"""Bag decomposition of linear dominoes and attachment of modulator vertices to bags.

For a {claw, diamond}-free graph the bags are its maximal cliques plus one
singleton ``{v}`` per simplicial vertex. Bags here always carry the ids of the
host graph, so a decomposition of ``G - X`` is addressed with ``G``'s vertex ids.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Edge, Graph, bits, edge, induced_subgraph, is_clique, is_simplicial, to_mask
from .obstructions import Obstruction, find_obstruction


class NotDominoError(ValueError):
    def __init__(self, witness: Obstruction):
        self.witness = witness
        super().__init__(f"graph contains an induced {witness.kind} on {list(witness.vertices)}")


class ModulatorViolation(ValueError):
    """The attachment structure contradicts the modulator precondition."""


@dataclass(frozen=True)
class BagDecomposition:
    """Bags over ``vertices`` (a subset of the host ids).

    ``vertex_bags[v]`` lists the bag ids containing ``v``; ``edge_bag[e]`` is the bag
    holding edge ``e``.
    """

    vertices: frozenset[int]
    bags: tuple[frozenset[int], ...]
    vertex_bags: dict[int, tuple[int, ...]] = field(repr=False)
    edge_bag: dict[Edge, int] = field(repr=False)

    @classmethod
    def from_bags(cls, vertices: Iterable[int], bags: Iterable[Iterable[int]]) -> BagDecomposition:
        """Index an arbitrary bag family; no validity check."""
        bags = tuple(frozenset(b) for b in bags)
        vertices = frozenset(vertices)
        vertex_bags: dict[int, list[int]] = {v: [] for v in vertices}
        edge_bag: dict[Edge, int] = {}
        for i, bag in enumerate(bags):
            for v in bag:
                vertex_bags.setdefault(v, []).append(i)
            for a, b in combinations(sorted(bag), 2):
                edge_bag.setdefault((a, b), i)
        return cls(vertices, bags, {v: tuple(ids) for v, ids in vertex_bags.items()}, edge_bag)

    def __len__(self) -> int:
        return len(self.bags)

    def other_bag(self, v: int, bag_id: int) -> int | None:
        """The second bag containing ``v``, or None for isolated vertices."""
        rest = [b for b in self.vertex_bags[v] if b != bag_id]
        return rest[0] if rest else None

    def relabel(self, mapping: dict[int, int]) -> BagDecomposition:
        bags = [frozenset(mapping[v] for v in bag) for bag in self.bags]
        return BagDecomposition.from_bags((mapping[v] for v in self.vertices), bags)


def bag_decomposition(g: Graph, check: bool = True) -> BagDecomposition:
    """B(g): singletons for simplicial vertices, then the maximal clique of every edge.

    Raises :class:`NotDominoError` with a witness if ``g`` has an induced claw or
    diamond. With ``check`` the result is also validated (O(bags^2)).
    """
    witness = find_obstruction(g)
    if witness is not None:
        raise NotDominoError(witness)
    bags: list[frozenset[int]] = [frozenset({v}) for v in g.vertices() if is_simplicial(g, v)]
    covered: set[Edge] = set()
    for u, v in g.sorted_edges():
        if (u, v) in covered:
            continue
        clique = [u, v]
        for w in bits(g.adj[u] & g.adj[v]):
            if all(g.adj[w] >> c & 1 for c in clique):
                clique.append(w)
        covered.update(edge(a, b) for a, b in combinations(clique, 2))
        bags.append(frozenset(clique))
    d = BagDecomposition.from_bags(g.vertices(), bags)
    if check:
        report = validate_decomposition(g, d)
        if not report.ok:
            raise AssertionError(f"bag decomposition failed its own check: {report}")
    return d


def decompose_outside(g: Graph, x: Iterable[int], check: bool = True) -> BagDecomposition:
    """B(G - X) expressed with the vertex ids of ``g``."""
    x = set(x)
    sub, index = induced_subgraph(g, (v for v in g.vertices() if v not in x))
    back = {new: old for old, new in index.items()}
    return bag_decomposition(sub, check=check).relabel(back)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    prop: str | None = None
    witness: tuple = ()
    message: str = ""

    def __str__(self) -> str:
        return "pass" if self.ok else f"fail ({self.prop}): {self.message} {self.witness}"


def validate_decomposition(g: Graph, d: BagDecomposition) -> ValidationReport:
    """Check the bag properties on the subgraph of ``g`` induced by ``d.vertices``.

    Properties, in checking order: ``b`` every edge in exactly one bag; ``a`` every
    non-isolated vertex in exactly two bags and every isolated vertex in exactly
    one; ``c`` two bags share at most one vertex; ``d`` bags sharing ``v`` have no
    edge between ``A - v`` and ``B - v``; ``size`` at most ``|V| + |E|`` bags;
    ``clique`` every bag is a clique.
    """
    universe = to_mask(d.vertices)
    adj = [g.adj[v] & universe if universe >> v & 1 else 0 for v in range(g.n)]
    edges = [(u, v) for u, v in g.sorted_edges() if universe >> u & 1 and universe >> v & 1]
    containing: dict[int, list[int]] = {v: [] for v in d.vertices}
    for i, bag in enumerate(d.bags):
        for v in bag:
            if v not in containing:
                return ValidationReport(False, "a", (v,), "bag holds a vertex outside the graph")
            containing[v].append(i)

    for u, v in edges:
        holders = [i for i in containing[u] if v in d.bags[i]]
        if len(holders) != 1:
            return ValidationReport(False, "b", ((u, v), tuple(holders)), f"edge lies in {len(holders)} bags")

    for v in sorted(d.vertices):
        want = 2 if adj[v] else 1
        if len(containing[v]) != want:
            return ValidationReport(
                False, "a", (v, tuple(containing[v])), f"vertex lies in {len(containing[v])} bags, expected {want}"
            )

    for i, j in combinations(range(len(d.bags)), 2):
        shared = d.bags[i] & d.bags[j]
        if len(shared) > 1:
            return ValidationReport(False, "c", (i, j, tuple(sorted(shared))), "bags share more than one vertex")
        if shared:
            (v,) = shared
            left = to_mask(d.bags[i] - shared)
            right = to_mask(d.bags[j] - shared)
            for a in bits(left):
                if adj[a] & right:
                    b = next(bits(adj[a] & right))
                    return ValidationReport(False, "d", (i, j, (a, b)), "edge between bags sharing a vertex")

    if len(d.bags) > len(d.vertices) + len(edges):
        return ValidationReport(False, "size", (len(d.bags),), "more than |V| + |E| bags")

    for i, bag in enumerate(d.bags):
        if not is_clique(g, bag):
            return ValidationReport(False, "clique", (i,), "bag is not a clique")
    return ValidationReport(True)


@dataclass(frozen=True)
class AttachmentMap:
    attached: dict[int, tuple[int, ...]]

    def is_attached(self, x: int, bag_id: int) -> bool:
        return bag_id in self.attached.get(x, ())

    def attached_bags(self) -> frozenset[int]:
        return frozenset(b for ids in self.attached.values() for b in ids)


def _fully_adjacent(g: Graph, x: int, bag: frozenset[int]) -> bool:
    mask = to_mask(bag)
    return g.adj[x] & mask == mask


def compute_attachment(g: Graph, x_set: Iterable[int], d: BagDecomposition) -> AttachmentMap:
    """Bags attached to each modulator vertex.

    ``B`` is attached to ``x`` if it is fully adjacent to ``x`` and, when ``B = {v}``
    with ``v`` not isolated in ``G - X``, the other bag of ``v`` is not fully
    adjacent to ``x``. Raises :class:`ModulatorViolation` if some ``x`` has more
    than two attached bags or some neighbor of ``x`` outside X does not have
    exactly one attached bag.
    """
    x_set = sorted(set(x_set))
    attached: dict[int, tuple[int, ...]] = {}
    for x in x_set:
        ids = []
        for i, bag in enumerate(d.bags):
            if not _fully_adjacent(g, x, bag):
                continue
            if len(bag) == 1:
                (v,) = bag
                other = d.other_bag(v, i)
                if other is not None and _fully_adjacent(g, x, d.bags[other]):
                    continue
            ids.append(i)
        if len(ids) > 2:
            raise ModulatorViolation(f"vertex {x} has {len(ids)} attached bags")
        for v in bits(g.adj[x] & to_mask(d.vertices)):
            hits = [b for b in d.vertex_bags[v] if b in ids]
            if len(hits) != 1:
                raise ModulatorViolation(f"neighbor {v} of {x} lies in {len(hits)} attached bags")
        attached[x] = tuple(ids)
    return AttachmentMap(attached)
