"""The full kernel: compress, encode in CNF, normalize to 3SAT, and build a graph again."""

# %%
from clawdiamond import generators
from clawdiamond.kernel import kernelize_full
from clawdiamond.obstructions import is_hds
from clawdiamond.reductions import decode_deletions, explicit_solution
from clawdiamond.sat import solve_cdcl
from clawdiamond.solvers import solve_branching

g = generators.gen_near_domino(seed=2, n=6, p=0.6, edits=2)
k = 1
res = kernelize_full(g, k)
print(f"input: {g.n} vertices, k={k}, answer {solve_branching(g, k).answer}")
if res.compression.status:
    print("trivial:", res.compression.status, "->", res.graph, res.k)
else:
    print(f"annotated instance: {res.compression.instance.graph.n} vertices")
    print(f"CNF: {res.cnf.num_vars} variables, {res.cnf.num_clauses} clauses")
    print(f"3SAT: {res.cnf3.num_vars} variables, {res.cnf3.num_clauses} clauses")
    print(f"output graph: {res.graph.n} vertices, k={res.k}")

    # Satisfiability carries the answer across every stage.
    model = solve_cdcl(res.cnf)
    print("CNF satisfiable:", model is not None)
    if model is not None:
        picked = res.compression.instance.lift(decode_deletions(model, res.var_map))
        print("decoded deletions on the input:", sorted(picked), is_hds(g, picked))
        model3 = solve_cdcl(res.cnf3)
        f = explicit_solution(res.cnf3, res.layout, model3)
        print("output instance solved with", len(f), "deletions:", is_hds(res.graph, f))
