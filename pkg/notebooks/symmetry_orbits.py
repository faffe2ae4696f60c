# %% [markdown]
# # Symmetry orbits
# The three involutions T (transpose), L (left-right) and Z (0 <-> 2 swap)
# commute, so they generate an elementary abelian group of order 8.

# %%
import numpy as np

from acc_ybe import acc, catalog, symmetry

# %%
words, table = symmetry.multiplication_table()
print("     " + " ".join(f"{str(w):>4}" for w in words))
for w, row in zip(words, table):
    print(f"{str(w):>4} " + " ".join(f"{str(words[k]):>4}" for k in row))
print("abelian:", symmetry.is_abelian(table), " orders:", symmetry.element_orders(table))

# %% a generic matrix has 8 distinct images
rng = np.random.default_rng(0)
generic = acc.AccParams.from_array(rng.normal(size=19) + 1j * rng.normal(size=19))
print("generic orbit size:", len(symmetry.orbit(generic.tensor())))

# %% images of a solution stay solutions
p = catalog.instantiate(catalog.random_instance("Case5_5_1_1", seed=2))
for w, img in symmetry.orbit(p.tensor(), with_words=True):
    q = acc.extract_params(img, "rlex")
    print(f"{str(w):>4}  anomaly {acc.anomaly_residual(img):.1e}  a13={q.a13:.3f}  d13={q.d13:.3f}")

# %% action on x-patterns
for letter in symmetry.LETTERS:
    print(letter, sorted(symmetry.xpattern_action(letter, {"x1", "x3"})))
