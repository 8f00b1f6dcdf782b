"""Linear dominoes (line graphs of triangle-free graphs) and their bags."""

# %%
from clawdiamond import generators
from clawdiamond.domino import bag_decomposition, compute_attachment, decompose_outside, validate_decomposition
from clawdiamond.graph import cycle_graph, line_graph
from clawdiamond.obstructions import build_modulator

# The line graph of a triangle-free graph never contains a claw or a diamond.
h = generators.triangle_free(seed=4, n=7, p=0.6)
g, order = line_graph(h)
print(f"H has {h.n} vertices and {h.m} edges; L(H) has {g.n} vertices and {g.m} edges")

# %% Bags: maximal cliques plus singletons of simplicial vertices
d = bag_decomposition(g)
for i, bag in enumerate(d.bags):
    print(f"bag {i}: {sorted(bag)}")
print("validation:", validate_decomposition(g, d))

# %% Every vertex sits in exactly two bags; they correspond to the endpoints of its edge in H
v = 0
print(f"vertex {v} = edge {order[v]} of H lies in bags {d.vertex_bags[v]}")

# %% Attachment: which bags of G - X a modulator vertex is fully adjacent to
noisy = generators.perturb(cycle_graph(8), seed=4, edits=2)
mod = build_modulator(noisy, 2)
print("modulator:", sorted(mod.x))
outside = decompose_outside(noisy, mod.x)
att = compute_attachment(noisy, mod.x, outside)
for x, ids in att.attached.items():
    print(f"x={x}: attached bags {[sorted(outside.bags[b]) for b in ids]}")
