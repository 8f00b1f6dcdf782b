"""Compressing (G, k) to an annotated instance whose size depends on k only."""

# %%
from clawdiamond import generators
from clawdiamond.kernel import compress_report
from clawdiamond.solvers import solve_annotated, solve_branching

# A long linear domino with two local defects: most of the graph is irrelevant.
g = generators.gen_near_domino(seed=24, n=40, p=0.3, edits=2)
k = 2
print(f"input: {g.n} vertices, {g.m} edges, k={k}")

# %% Modulator X, marked bags and the annotated set S
comp = compress_report(g, k)
if comp.marking is None:
    print("trivial outcome:", comp.status)
else:
    m = comp.marking
    print(f"|X|={len(m.x)}, marked bags={len(m.marks)}, |S|={len(m.s_set)}, |U|={comp.instance.graph.n}")
    print("bounds:", {"S": m.s_bound(k), "marked": m.marked_bound(k)})
    rules = {1: "attached", 2: "next to attached", 3: "pair witness"}
    for b, rule in sorted(m.marks.items()):
        print(f"  bag {sorted(m.decomposition.bags[b])} marked as {rules[rule]}")

# %% Same answer, smaller instance
direct = solve_branching(g, k)
small = solve_annotated(comp.instance)
print("answer on G:", direct.answer, " answer on the annotated instance:", small.answer)
if small.answer:
    print("lifted witness:", sorted(comp.instance.lift(small.witness)))
