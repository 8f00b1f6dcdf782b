"""From a 3SAT formula to an edge deletion instance with budget 10m + n."""

# %%
from clawdiamond.obstructions import is_hds, k4_diamond_free
from clawdiamond.reductions import explicit_solution, sat3_to_graph, verify_clause_gadget, verify_variable_gadget
from clawdiamond.sat import CnfFormula, brute_force_sat

phi = CnfFormula(4, ((1, -2, 3), (-1, 2, 4), (2, 3, -4)))
g, k, layout = sat3_to_graph(phi)
print(f"m={phi.num_clauses}, n={phi.num_vars}: |V|={g.n}, |E|={g.m}, k={k}, max degree {g.max_degree()}")
print("no K4 and no diamond:", k4_diamond_free(g.adj))

# %% A satisfying assignment gives a deletion set of size exactly k
model = brute_force_sat(phi)
f = explicit_solution(phi, layout, model)
print("assignment:", model)
print("deletion set size:", len(f), " HDS:", is_hds(g, f))

# %% Per-gadget accounting: 7 per clause, p + q + 1 per variable
for i in range(len(layout.clauses)):
    r = verify_clause_gadget(layout, i, f)
    print(f"clause {i}: {r.non_thick_deleted} non-thick deletions, passed={r.passed}")
for var, vg in layout.variables.items():
    r = verify_variable_gadget(layout, var, f)
    side = "true" if f & vg.true_edges == vg.true_edges else "false"
    print(f"x{var}: {r.size} cycle/pendant deletions (bound {r.lower_bound}), side={side}")

# %% Edge-disjoint claws certify that no smaller deletion set exists
claws = layout.lower_bound_claws()
print(len(claws), "edge-disjoint claws, k =", k)
