import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clawdiamond import generators
from clawdiamond.graph import Graph, claw_graph, complete_graph, edge
from clawdiamond.kernel import AnnotatedInstance
from clawdiamond.obstructions import is_hds, k4_diamond_free
from clawdiamond.reductions import (
    annotated_to_cnf,
    at_most_k,
    cnf_to_3sat,
    decode_deletions,
    explicit_solution,
    is_strict_3sat,
    sat3_to_graph,
    verify_clause_gadget,
    verify_variable_gadget,
    write_layout,
)
from clawdiamond.sat import FALSE, CnfFormula, FormulaError, brute_force_sat
from clawdiamond.solvers import ScaleGuardError, solve_annotated

from oracles import bitset_sat, naive_k4_diamond_free, pairs, truth_table_sat

ONE_CLAUSE = CnfFormula(3, ((1, 2, 3),))


class TestCnfTo3Sat:
    def test_unchanged(self):
        assert cnf_to_3sat(ONE_CLAUSE) == ONE_CLAUSE

    def test_unit(self):
        out = cnf_to_3sat(CnfFormula(1, ((1,),)))
        assert out.num_vars == 3
        assert sorted(out.clauses) == sorted((1, a * 2, b * 3) for a in (1, -1) for b in (1, -1))

    def test_long(self):
        out = cnf_to_3sat(CnfFormula(4, ((1, 2, 3, 4),)))
        assert out.clauses == ((1, 2, 5), (-5, 3, 4))

    def test_degenerate_clauses(self):
        out = cnf_to_3sat(CnfFormula(2, ((1, 1, 2), (1, -1, 2))))
        assert is_strict_3sat(out)
        assert len(out.clauses) == 2  # tautology dropped, (1 2) padded twice

    def test_false(self):
        out = cnf_to_3sat(FALSE)
        assert is_strict_3sat(out) and brute_force_sat(out) is None

    @settings(max_examples=300)
    @given(st.integers(1, 5), st.data())
    def test_equisatisfiable(self, n, data):
        lit = st.integers(1, n).flatmap(lambda v: st.sampled_from((v, -v)))
        clauses = data.draw(st.lists(st.lists(lit, min_size=1, max_size=6).map(tuple), max_size=4))
        out = cnf_to_3sat(CnfFormula(n, tuple(clauses)))
        assert is_strict_3sat(out)
        assert bitset_sat(out.num_vars, out.clauses) == truth_table_sat(n, clauses)


class TestAtMostK:
    @pytest.mark.parametrize("n, k", [(1, 0), (3, 1), (4, 2), (5, 2), (4, 4), (5, 3)])
    def test_counts(self, n, k):
        lits = list(range(1, n + 1))
        clauses, top = at_most_k(lits, k, n)
        for weight in range(n + 1):
            for ones in combinations(lits, weight):
                forced = clauses + [(v,) if v in ones else (-v,) for v in lits]
                assert bitset_sat(top, forced) == (weight <= k)


class TestAnnotatedToCnf:
    def test_free_graph_no_clauses(self):
        phi, var_map = annotated_to_cnf(AnnotatedInstance(complete_graph(4), frozenset(), 0))
        assert phi.clauses == () and var_map == {}

    def test_claw_budget_zero(self):
        phi, var_map = annotated_to_cnf(AnnotatedInstance(claw_graph(), frozenset(range(4)), 0))
        assert len(var_map) == 3 and brute_force_sat(phi) is None

    def test_claw_undeletable(self):
        phi, _ = annotated_to_cnf(AnnotatedInstance(claw_graph(), frozenset(), 3))
        assert phi.is_false

    def test_model_decodes_to_hds(self):
        a = AnnotatedInstance(claw_graph(), frozenset(range(4)), 1)
        phi, var_map = annotated_to_cnf(a)
        f = decode_deletions(brute_force_sat(phi), var_map)
        assert len(f) == 1 and is_hds(a.graph, f)

    def test_scale_guard(self):
        with pytest.raises(ScaleGuardError):
            annotated_to_cnf(AnnotatedInstance(Graph(30), frozenset(), 0), max_quads=10)

    @pytest.mark.parametrize("seed", range(60))
    def test_matches_solver(self, seed):
        rng = random.Random(seed)
        g = generators.gen_random(seed, rng.randint(4, 8), 0.5)
        s = frozenset(v for v in range(g.n) if rng.random() < 0.6)
        a = AnnotatedInstance(g, s, rng.randint(0, 2))
        if len(a.deletable()) > 7:
            return
        phi, _ = annotated_to_cnf(a)
        assert (brute_force_sat(phi) is not None) == solve_annotated(a).answer


class TestSat3ToGraph:
    def test_one_clause_counts(self):
        g, k, layout = sat3_to_graph(ONE_CLAUSE)
        # each thick edge t t~ is shared by a clause triangle and a variable cycle
        assert (g.n, g.m, k) == (37, 48, 13)
        cg = layout.clauses[0]
        assert len(cg.vertices()) == 19 and len(cg.edges()) == 27 and len(cg.triangles()) == 9

    def test_one_clause_degrees_and_freeness(self):
        g, _, layout = sat3_to_graph(ONE_CLAUSE)
        cg = layout.clauses[0]
        assert g.degree(cg.u) == 6
        assert all(g.degree(o.v) == 6 and g.degree(o.v_t) == 2 for o in cg.occurrences)
        pendants = [s for vg in layout.variables.values() for s in vg.pendant.values()]
        assert len(pendants) == 12 and all(g.degree(s) == 1 for s in pendants)
        assert g.max_degree() == 6
        assert naive_k4_diamond_free(*pairs(g)) and k4_diamond_free(g.adj)

    def test_explicit_solution(self):
        g, k, layout = sat3_to_graph(ONE_CLAUSE)
        for bits in range(1, 8):
            model = {v: bool(bits >> (v - 1) & 1) for v in (1, 2, 3)}
            f = explicit_solution(ONE_CLAUSE, layout, model)
            assert len(f) == k and is_hds(g, f)
        with pytest.raises(ValueError):
            explicit_solution(ONE_CLAUSE, layout, {1: False, 2: False, 3: False})

    def test_layout_invariants(self):
        phi = CnfFormula(4, ((1, -2, 3), (-1, 2, 4), (1, 2, -4)))
        g, k, layout = sat3_to_graph(phi)
        assert g.n == 25 * 3 + 4 * 4 and k == 10 * 3 + 4
        for vg in layout.variables.values():
            assert len(vg.cycle) == 2 + 2 * vg.positive + 2 * vg.negative
            assert vg.false_edges | vg.true_edges == set(vg.cycle_edges())
            assert not vg.false_edges & vg.true_edges
        for cg in layout.clauses:
            for o in cg.occurrences:
                vg = layout.variables[o.var]
                assert (o.thick in vg.false_edges) == o.positive
                for value in (False, True):
                    satisfied = value == o.positive
                    assert satisfied == (o.thick not in vg.edges_for(value))

    def test_free_variables_dropped(self):
        g, k, layout = sat3_to_graph(CnfFormula(5, ((1, 2, 3),)))
        assert layout.free_vars == (4, 5) and (g.n, k) == (37, 13)

    @pytest.mark.parametrize("bad", [CnfFormula(3, ((1, 2),)), CnfFormula(3, ((1, -1, 2),)), FALSE])
    def test_precondition(self, bad):
        with pytest.raises(FormulaError):
            sat3_to_graph(bad)

    def test_layout_sidecar(self):
        _, _, layout = sat3_to_graph(ONE_CLAUSE)
        text = write_layout(layout)
        assert text.splitlines()[0] == "u 1 1"
        assert "lit 1 1 +" in text
        assert any(line.startswith("cycle 1 ") for line in text.splitlines())


class TestGadgetChecks:
    def setup_method(self):
        self.g, self.k, self.layout = sat3_to_graph(ONE_CLAUSE)
        self.cg = self.layout.clauses[0]

    def test_empty_fails(self):
        report = verify_clause_gadget(self.layout, 0, set())
        assert not report.passed and not report.is_hds and not report.hits_all_claws

    def test_proof_set_passes(self):
        y, *others = self.cg.occurrences
        f = {edge(self.cg.u, y.v), edge(self.cg.u, y.v_t), edge(y.v, y.v_t)}
        for o in others:
            f |= {edge(o.v, o.t), edge(o.v, o.t_t)}
        # the two other thick edges go with their variables' cycles in the full solution
        f |= {o.thick for o in others}
        report = verify_clause_gadget(self.layout, 0, f)
        assert report.passed and report.non_thick_deleted == 7 and not report.all_thick_deleted

    def test_seven_claws_disjoint(self):
        claws = self.cg.lower_bound_claws()
        assert len(claws) == 7
        assert sum(len(c.edges) for c in claws) == len(set().union(*(c.edges for c in claws))) == 21
        assert not set().union(*(c.edges for c in claws)) & self.cg.thick_edges()

    def test_variable_parity_classes(self):
        vg = self.layout.variables[1]
        assert verify_variable_gadget(self.layout, 1, vg.false_edges).passed
        assert verify_variable_gadget(self.layout, 1, vg.true_edges).passed
        one = verify_variable_gadget(self.layout, 1, [vg.cycle_edges()[0]])
        assert not one.is_hds and not one.passed

    def test_variable_bound_random_sets(self):
        vg = self.layout.variables[2]
        edges = sorted(vg.edges())
        for r in range(len(edges) + 1):
            for f in combinations(edges, r):
                report = verify_variable_gadget(self.layout, 2, f)
                if report.is_hds:
                    assert report.passed


@pytest.mark.parametrize("seed", range(25))
def test_random_formulas(seed):
    rng = random.Random(seed)
    phi = generators.gen_3sat(seed, rng.randint(3, 8), rng.randint(1, 5))
    g, k, layout = sat3_to_graph(phi)
    used = len(phi.occurring_vars())
    assert g.n == 25 * len(phi.clauses) + 4 * used and k == 10 * len(phi.clauses) + used
    assert g.m == 36 * len(phi.clauses) + 4 * used
    assert k4_diamond_free(g.adj) and g.max_degree() == 6
    model = brute_force_sat(phi)
    if model is not None:
        f = explicit_solution(phi, layout, model)
        assert len(f) == k and is_hds(g, f)
