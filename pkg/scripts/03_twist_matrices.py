# %% [markdown]
# # Dehn twists acting on twisted homology
#
# On the torus with one boundary circle, the relative homology with two
# points has rank 3 over Z[H]. Dehn twists about the two core curves act by
# 3x3 matrices paired with automorphisms of H.

# %%
from heisenberg_homology import aut_from_twist, decompose_cycle, twist_matrix, verify_identities
from heisenberg_homology.mcg_action import BASIS_NAMES, check_intertwiner, render_matrix

print("basis:", ", ".join(BASIS_NAMES))
for T in "ab":
    print(f"M_{T}:")
    for row in render_matrix(twist_matrix(T)):
        print("   ", row)

# %% [markdown]
# ## Where the columns come from
#
# A column is the image of a basis cycle, written back in the basis. The twist
# about the first curve sends b1 to the curve word "b A a", and the cycle
# decomposes as follows.

# %%
for kind, curves in (("w", ["b A a"]), ("v", ["a", "b A a"])):
    parts = decompose_cycle(kind, curves)
    print(kind, curves, "->", {k: str(v) for k, v in parts.items()})

# %% [markdown]
# ## Automorphisms of H

# %%
for T in "ab":
    tau = aut_from_twist(T)
    images = ", ".join(f"{g} -> {h.pair_str()}" for g, h in zip(("a1", "b1"), tau.generator_images()))
    print(f"twist {T}: {images}")
    print("   linearized intertwiner holds:", check_intertwiner(tau))

# %% [markdown]
# ## Mapping class group relations
#
# Composition follows (M1, t1)(M2, t2) = (M1 t1(M2), t1 t2).

# %%
for check in verify_identities():
    print("PASS" if check.passed else "FAIL", check.name)
