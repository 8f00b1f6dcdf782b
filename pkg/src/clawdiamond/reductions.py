"""SAT legs of the kernel: annotated instance -> CNF -> strict 3SAT -> graph.

The 3SAT -> graph construction builds, per clause, a 19-vertex gadget of nine
triangles, and per variable a cycle through the "thick" edges of its clause
gadgets with a pendant ``s`` vertex on every cycle vertex. The budget is
``7m + sum(p(x) + q(x) + 1) = 10m + n``.

Vertex ids are laid out clause by clause (``u`` then, per literal in clause
order, ``v, v~, w, w~, t, t~, s, s~``), followed per variable in ascending order
by ``t_top, t_bot, s_top, s_bot``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .graph import Edge, Graph, edge
from .obstructions import CLAW, Obstruction, obstruction_free
from .sat import FALSE, CnfFormula, FormulaError
from .solvers import ScaleGuardError

# --- CNF -> strict 3SAT -----------------------------------------------------------


def cnf_to_3sat(phi: CnfFormula) -> CnfFormula:
    """Equisatisfiable formula whose clauses have exactly 3 literals over 3 distinct variables.

    Duplicate literals are merged and tautologies dropped. Clauses with ``r < 3``
    variables get ``3 - r`` fresh variables in all sign combinations; longer
    clauses are chained through fresh variables.
    """
    next_var = phi.num_vars
    out: list[tuple[int, ...]] = []

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var

    for clause in phi.clauses:
        lits = list(dict.fromkeys(clause))
        if any(-l in lits for l in lits):
            continue
        if len(lits) == 3:
            out.append(tuple(lits))
        elif len(lits) < 3:
            pads = [fresh() for _ in range(3 - len(lits))]
            for signs in product((1, -1), repeat=len(pads)):
                out.append(tuple(lits) + tuple(s * p for s, p in zip(signs, pads)))
        else:
            link = fresh()
            out.append((lits[0], lits[1], link))
            for lit in lits[2:-2]:
                nxt = fresh()
                out.append((-link, lit, nxt))
                link = nxt
            out.append((-link, lits[-2], lits[-1]))
    return CnfFormula(next_var, tuple(out))


def is_strict_3sat(phi: CnfFormula) -> bool:
    return not phi.is_false and all(len(c) == 3 and len({abs(l) for l in c}) == 3 for c in phi.clauses)


# --- annotated instance -> CNF ----------------------------------------------------


def at_most_k(lits: list[int], k: int, next_var: int) -> tuple[list[tuple[int, ...]], int]:
    """Sequential-counter clauses for ``sum(lits) <= k``; returns clauses and the last used variable.

    Auxiliary ``s[i][j]`` means "at least ``j + 1`` of the first ``i + 1`` literals hold".
    """
    n = len(lits)
    if k >= n:
        return [], next_var
    if k == 0:
        return [(-x,) for x in lits], next_var
    s = [[next_var + i * k + j + 1 for j in range(k)] for i in range(n - 1)]
    next_var += (n - 1) * k
    out: list[tuple[int, ...]] = [(-lits[0], s[0][0])]
    out.extend((-s[0][j],) for j in range(1, k))
    for i in range(1, n - 1):
        x = lits[i]
        out.append((-x, s[i][0]))
        out.append((-s[i - 1][0], s[i][0]))
        for j in range(1, k):
            out.append((-x, -s[i - 1][j - 1], s[i][j]))
            out.append((-s[i - 1][j], s[i][j]))
        out.append((-x, -s[i - 1][k - 1]))
    out.append((-lits[n - 1], -s[n - 2][k - 1]))
    return out, next_var


def _quad_is_obstruction(quad: tuple[int, ...], remaining: Iterable[Edge]) -> bool:
    remaining = list(remaining)
    if len(remaining) == 5:
        return True
    if len(remaining) != 3:
        return False
    deg = dict.fromkeys(quad, 0)
    for a, b in remaining:
        deg[a] += 1
        deg[b] += 1
    return 3 in deg.values()


def annotated_to_cnf(instance, max_quads: int | None = 5_000_000) -> tuple[CnfFormula, dict[int, Edge]]:
    """CNF satisfiable iff ``instance`` (an :class:`AnnotatedInstance`) is a yes-instance.

    Variable ``i`` (1-based, in sorted edge order) means "delete the i-th edge of
    E(S)". For every 4-set ``W`` and deletion pattern ``D`` within ``E(W) ∩ E(S)``
    that leaves an induced claw or diamond, one clause forbids exactly that
    pattern. A sequential counter enforces at most ``k`` deletions. Returns the
    formula and the variable -> edge map; an undeletable obstruction yields the
    canonical FALSE formula.
    """
    g, k = instance.graph, instance.k
    if max_quads is not None and comb(g.n, 4) > max_quads:
        raise ScaleGuardError(f"{comb(g.n, 4)} vertex 4-sets exceed the limit of {max_quads}")
    deletable = sorted(g.edges_within(instance.s_set))
    var_of = {e: i + 1 for i, e in enumerate(deletable)}
    clauses: set[tuple[int, ...]] = set()
    for quad in combinations(range(g.n), 4):
        present = [(a, b) for a, b in combinations(quad, 2) if g.adj[a] >> b & 1]
        if len(present) < 3:
            continue
        free = [e for e in present if e in var_of]
        for size in range(len(free) + 1):
            for dropped in combinations(free, size):
                rest = [e for e in present if e not in dropped]
                if not _quad_is_obstruction(quad, rest):
                    continue
                kept = [e for e in free if e not in dropped]
                clause = tuple(sorted([-var_of[e] for e in dropped] + [var_of[e] for e in kept], key=abs))
                if not clause:
                    return FALSE, {}
                clauses.add(clause)
    counter, num_vars = at_most_k([var_of[e] for e in deletable], k, len(deletable))
    ordered = sorted(clauses, key=lambda c: (len(c), [abs(l) for l in c], c)) + counter
    return CnfFormula(num_vars, tuple(ordered)), {v: e for e, v in var_of.items()}


def decode_deletions(model: dict[int, bool], var_map: dict[int, Edge]) -> frozenset[Edge]:
    return frozenset(e for v, e in var_map.items() if model.get(v))


# --- strict 3SAT -> graph ---------------------------------------------------------


@dataclass(frozen=True)
class Occurrence:
    """The six gadget vertices of one variable in one clause, plus its two pendants."""

    var: int
    positive: bool
    v: int
    v_t: int
    w: int
    w_t: int
    t: int
    t_t: int
    s: int
    s_t: int

    @property
    def thick(self) -> Edge:
        return edge(self.t, self.t_t)


@dataclass(frozen=True)
class ClauseGadget:
    u: int
    occurrences: tuple[Occurrence, ...]

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for o in self.occurrences:
            out += [(self.u, o.v, o.v_t), (o.v, o.w, o.w_t), (o.v, o.t, o.t_t)]
        return out

    def edges(self) -> frozenset[Edge]:
        return frozenset(edge(a, b) for tri in self.triangles() for a, b in combinations(tri, 2))

    def thick_edges(self) -> frozenset[Edge]:
        return frozenset(o.thick for o in self.occurrences)

    def vertices(self) -> list[int]:
        return [self.u] + [x for o in self.occurrences for x in (o.v, o.v_t, o.w, o.w_t, o.t, o.t_t)]

    def lower_bound_claws(self) -> list[Obstruction]:
        """Seven edge-disjoint induced claws avoiding the thick edges."""
        claws = [Obstruction(CLAW, (self.u, *sorted(o.v_t for o in self.occurrences)))]
        for o in self.occurrences:
            claws.append(Obstruction(CLAW, (o.v, *sorted((self.u, o.w, o.t)))))
            claws.append(Obstruction(CLAW, (o.v, *sorted((o.v_t, o.w_t, o.t_t)))))
        return claws


@dataclass(frozen=True)
class VariableGadget:
    var: int
    t_top: int
    t_bot: int
    s_top: int
    s_bot: int
    cycle: tuple[int, ...]
    pendant: dict[int, int]  # cycle vertex -> its s vertex
    positive: int
    negative: int

    def cycle_edges(self) -> list[Edge]:
        """Cycle edges in order; edge ``i`` (1-based) joins ``cycle[i-1]`` and ``cycle[i]``."""
        c = self.cycle
        return [edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    @property
    def false_edges(self) -> frozenset[Edge]:
        """E_bot: the even cycle edges (thick edges of positive occurrences)."""
        return frozenset(self.cycle_edges()[1::2])

    @property
    def true_edges(self) -> frozenset[Edge]:
        """E_top: the odd cycle edges (thick edges of negative occurrences)."""
        return frozenset(self.cycle_edges()[0::2])

    def edges_for(self, value: bool) -> frozenset[Edge]:
        return self.true_edges if value else self.false_edges

    def edges(self) -> frozenset[Edge]:
        return frozenset(self.cycle_edges()) | {edge(t, s) for t, s in self.pendant.items()}

    def vertices(self) -> list[int]:
        return list(self.cycle) + [self.pendant[t] for t in self.cycle]

    def lower_bound_claws(self) -> list[Obstruction]:
        """``p + q + 1`` claws centered at every other cycle vertex; pairwise edge-disjoint."""
        c = self.cycle
        return [
            Obstruction(CLAW, (c[i], *sorted((c[i - 1], c[(i + 1) % len(c)], self.pendant[c[i]]))))
            for i in range(0, len(c), 2)
        ]


@dataclass(frozen=True)
class GadgetLayout:
    clauses: tuple[ClauseGadget, ...]
    variables: dict[int, VariableGadget]
    free_vars: tuple[int, ...]

    def lower_bound_claws(self) -> list[Obstruction]:
        out = [c for cg in self.clauses for c in cg.lower_bound_claws()]
        for var in sorted(self.variables):
            out += self.variables[var].lower_bound_claws()
        return out


def sat3_to_graph(phi: CnfFormula) -> tuple[Graph, int, GadgetLayout]:
    """Graph ``G`` and budget ``k`` with ``(G, k)`` a yes-instance iff ``phi`` is satisfiable.

    ``phi`` must be strict 3SAT (run :func:`cnf_to_3sat` first). Variables that
    occur in no clause get no gadget and are listed in ``layout.free_vars``.
    """
    if phi.is_false or not is_strict_3sat(phi):
        raise FormulaError("expected strict 3SAT: exactly three literals over distinct variables per clause")
    nxt = 0

    def new() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    clause_gadgets = []
    pos_occ: dict[int, list[Occurrence]] = {}
    neg_occ: dict[int, list[Occurrence]] = {}
    for clause in phi.clauses:
        u = new()
        occs = []
        for lit in clause:
            o = Occurrence(abs(lit), lit > 0, *(new() for _ in range(8)))
            occs.append(o)
            (pos_occ if lit > 0 else neg_occ).setdefault(abs(lit), []).append(o)
        clause_gadgets.append(ClauseGadget(u, tuple(occs)))

    used = sorted(set(pos_occ) | set(neg_occ))
    variables = {}
    for var in used:
        t_top, t_bot, s_top, s_bot = (new() for _ in range(4))
        pos, neg = pos_occ.get(var, []), neg_occ.get(var, [])
        cycle = [t_top]
        for o in pos:
            cycle += [o.t, o.t_t]
        cycle.append(t_bot)
        for o in neg:
            cycle += [o.t, o.t_t]
        pendant = {t_top: s_top, t_bot: s_bot}
        for o in pos + neg:
            pendant[o.t], pendant[o.t_t] = o.s, o.s_t
        variables[var] = VariableGadget(var, t_top, t_bot, s_top, s_bot, tuple(cycle), pendant, len(pos), len(neg))

    layout = GadgetLayout(tuple(clause_gadgets), variables, tuple(v for v in range(1, phi.num_vars + 1) if v not in variables))
    edges = set()
    for cg in clause_gadgets:
        edges |= cg.edges()
    for vg in variables.values():
        edges |= vg.edges()
    k = 7 * len(clause_gadgets) + sum(vg.positive + vg.negative + 1 for vg in variables.values())
    return Graph(nxt, edges), k, layout


def explicit_solution(phi: CnfFormula, layout: GadgetLayout, assignment: dict[int, bool]) -> frozenset[Edge]:
    """The deletion set built from a satisfying assignment; it has exactly ``k`` edges.

    Per variable the cycle edges ``E_{b(x)}``; per clause, with ``y`` its first
    satisfied literal's variable, the triangle ``u v^y v~^y`` and the edges
    ``v^x t^x``, ``v^x t~^x`` for the other two variables.
    """
    f = set()
    for var, vg in layout.variables.items():
        f |= vg.edges_for(assignment.get(var, False))
    for cg in layout.clauses:
        sat = [o for o in cg.occurrences if assignment.get(o.var, False) == o.positive]
        if not sat:
            raise ValueError("assignment does not satisfy every clause")
        y = sat[0]
        f |= {edge(cg.u, y.v), edge(cg.u, y.v_t), edge(y.v, y.v_t)}
        for o in cg.occurrences:
            if o is not y:
                f |= {edge(o.v, o.t), edge(o.v, o.t_t)}
    return frozenset(f)


# --- claim checkers -----------------------------------------------------------------


def _local_free(vertices: list[int], edges: Iterable[Edge]) -> bool:
    index = {v: i for i, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for a, b in edges:
        adj[index[a]] |= 1 << index[b]
        adj[index[b]] |= 1 << index[a]
    return obstruction_free(adj)


@dataclass(frozen=True)
class ClauseGadgetReport:
    is_hds: bool
    hits_all_claws: bool
    non_thick_deleted: int
    all_thick_deleted: bool

    @property
    def bound_holds(self) -> bool:
        """At least 7 non-thick deletions, and with exactly 7 some thick edge survives."""
        return self.non_thick_deleted >= 7 and not (self.non_thick_deleted == 7 and self.all_thick_deleted)

    @property
    def passed(self) -> bool:
        return self.is_hds and self.hits_all_claws and self.bound_holds


def verify_clause_gadget(layout: GadgetLayout, clause: int, f: Iterable[Edge]) -> ClauseGadgetReport:
    """Check a deletion set against the isolated gadget of clause ``clause`` (0-based)."""
    cg = layout.clauses[clause]
    mine = cg.edges()
    f = frozenset(edge(*e) for e in f) & mine
    thick = cg.thick_edges()
    return ClauseGadgetReport(
        is_hds=_local_free(cg.vertices(), mine - f),
        hits_all_claws=all(c.edges & f for c in cg.lower_bound_claws()),
        non_thick_deleted=len(f - thick),
        all_thick_deleted=thick <= f,
    )


@dataclass(frozen=True)
class VariableGadgetReport:
    is_hds: bool
    size: int
    lower_bound: int
    is_parity_class: bool

    @property
    def passed(self) -> bool:
        if not self.is_hds:
            return False
        return self.size > self.lower_bound or (self.size == self.lower_bound and self.is_parity_class)


def verify_variable_gadget(layout: GadgetLayout, var: int, f: Iterable[Edge]) -> VariableGadgetReport:
    """Check a deletion set inside the gadget of ``var``: at least ``p + q + 1`` edges,
    and with exactly that many it must be the even or the odd cycle edges."""
    vg = layout.variables[var]
    mine = vg.edges()
    f = frozenset(edge(*e) for e in f) & mine
    return VariableGadgetReport(
        is_hds=_local_free(vg.vertices(), mine - f),
        size=len(f),
        lower_bound=vg.positive + vg.negative + 1,
        is_parity_class=f in (vg.false_edges, vg.true_edges),
    )


# --- layout sidecar ---------------------------------------------------------------


def write_layout(layout: GadgetLayout) -> str:
    """Line-oriented description of the gadget vertex ids (1-based ids and clause numbers)."""
    lines = []
    for ci, cg in enumerate(layout.clauses, start=1):
        lines.append(f"u {ci} {cg.u + 1}")
        for o in cg.occurrences:
            sign = "+" if o.positive else "-"
            lines.append(f"v {ci} {o.var} {o.v + 1} {o.v_t + 1}")
            lines.append(f"w {ci} {o.var} {o.w + 1} {o.w_t + 1}")
            lines.append(f"t {ci} {o.var} {o.t + 1} {o.t_t + 1}")
            lines.append(f"s {ci} {o.var} {o.s + 1} {o.s_t + 1}")
            lines.append(f"lit {ci} {o.var} {sign}")
    for var in sorted(layout.variables):
        vg = layout.variables[var]
        lines.append(f"x {var} {vg.t_top + 1} {vg.t_bot + 1} {vg.s_top + 1} {vg.s_bot + 1}")
        lines.append(f"cycle {var} " + " ".join(str(t + 1) for t in vg.cycle))
    lines.extend(f"free {var}" for var in layout.free_vars)
    return "\n".join(lines) + "\n"
