# %% [markdown]
# # Arithmetic in the Heisenberg group
#
# Elements are pairs (k, x) with k an integer and x a vector in Z^{2g+m-1}.
# The product twists the central coordinate by the intersection form:
# (k, x)(l, y) = (k + l + <x, y>, x + y).

# %%
from heisenberg_homology import GroupRingElement, HeisenbergElement, SurfaceParams, parse_word, phi_eval

torus = SurfaceParams(1, 1)
a = HeisenbergElement.generator(torus, "a1")
b = HeisenbergElement.generator(torus, "b1")
u = HeisenbergElement.central(torus)

# %% [markdown]
# The generators do not commute; their commutator is a power of the
# central element.

# %%
print("ab =", a * b, "  as a pair:", (a * b).pair_str())
print("ba =", b * a, "  as a pair:", (b * a).pair_str())
print("aba^-1b^-1 == u^2:", a * b * a.inverse() * b.inverse() == u ** 2)

# %% [markdown]
# ## Group ring
#
# Integer combinations of group elements multiply by convolution. Parsing
# accepts the same monomial notation that printing produces.

# %%
x = GroupRingElement.parse("1 - u a1", torus)
y = GroupRingElement.parse("a1 + u^-1 b1", torus)
print("x*y =", x * y)
print("y*x =", y * x)
print("augmentation of x*y:", (x * y).augmentation())

# %% [markdown]
# ## Braid words
#
# A word in the surface braid group is sent to H by forgetting the
# strand permutation. Generators s_i go to u, surface loops to their
# homology classes.

# %%
for text in ("s1", "a1 s1 b1", "s1 a1 s1 b1 s1"):
    h = phi_eval(parse_word(text), torus, 2)
    print(f"{text:16s} -> {h.pair_str():12s} {h}")
