"""Claws, diamonds, and deciding whether k edge deletions remove them all."""

# %% A claw and a diamond, found as induced subgraphs
from clawdiamond.graph import Graph, claw_graph, diamond_graph, disjoint_union
from clawdiamond.obstructions import build_modulator, find_obstruction, is_hds
from clawdiamond.solvers import brute_force_min_hds, solve_branching

g = disjoint_union(claw_graph(), diamond_graph())
print("first obstruction:", find_obstruction(g))
print("with the claw's legs forbidden:", find_obstruction(g, [(0, 1), (0, 2), (0, 3)]))

# %% Deletion sets
print("delete one leg and one diamond edge:", is_hds(g, [(0, 1), (5, 6)]))
print("delete only the leg:", is_hds(g, [(0, 1)]))

# %% Search tree versus exhaustive enumeration
for k in range(3):
    fast = solve_branching(g, k)
    slow = brute_force_min_hds(g, k)
    print(f"k={k}: branching {fast.answer} ({fast.stats.nodes} nodes), brute force {slow.answer}, "
          f"{len(slow.minimal)} minimal sets")

# %% The greedy modulator: edge-disjoint obstructions, or a certificate of "no"
print(build_modulator(g, 2))
print(build_modulator(g, 1))

# %% A wheel-like graph where the answer needs more thought
wheel = Graph(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
result = solve_branching(wheel, 3)
print("5-wheel, k=3:", result.answer, sorted(result.witness or ()))
