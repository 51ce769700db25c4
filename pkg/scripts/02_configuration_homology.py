# %% [markdown]
# # Homology of configuration spaces on ribbon graphs
#
# A ribbon graph encodes a surface with boundary. Cells of the unordered
# configuration space of n points on the graph are products of vertices and
# open edge simplices. This walk-through builds the standard model of a
# genus-one surface with one boundary circle and computes homology.

# %%
from math import comb

from heisenberg_homology import StandardWedgeOracle, bm_homology, build_complex, concentration_report, standard_model, surface_invariants
from heisenberg_homology.homology_engine import Linearized, Scalar, TrivialInt

G, A = standard_model(1, 1)
inv = surface_invariants(G)
print(f"genus {inv.g}, boundary components {inv.m}, euler characteristic {inv.chi}")

# %% [markdown]
# ## Cells and the boundary map
#
# With two points, the absolute complex has cells in degrees 0, 1, 2.
# The wedge oracle supplies group-ring coefficients on the boundary map.

# %%
cx = build_complex(G, 2, None, StandardWedgeOracle(1, 1, 2))
for k in sorted(cx.cells):
    print(f"degree {k}: {cx.count(k)} cells")
print("d^2 = 0:", cx.is_chain_complex())

# %% [markdown]
# ## Absolute homology under several coefficient choices

# %%
for spec in (TrivialInt(), Scalar.of(-1, a1=2, b1=3), Linearized()):
    rep = bm_homology(cx, spec)
    print("\n".join([rep.coefficients] + ["   " + line for line in rep.lines()]))

# %% [markdown]
# ## Relative complex
#
# Relative to the boundary arc A, homology sits in the top degree only.
# Its rank is a binomial coefficient.

# %%
for g, m, n in [(1, 1, 2), (1, 2, 2), (2, 1, 3)]:
    G, A = standard_model(g, m)
    r = concentration_report(build_complex(G, n, A))
    print(f"g={g} m={m} n={n}: rank {r}, binomial {comb(2 * g + m + n - 2, n)}")
