# %% [markdown]
# # Hecke and Temperley-Lieb tower
# For the generic family, R - 1 has rank one, and the braid generators on
# (C^3)^n generate a Temperley-Lieb quotient.  Multiplicities of the
# two-row irreducibles follow Fibonacci numbers of even index.

# %%
import time

from acc_ybe import catalog, hecke

# %%
inst = catalog.FamilyInstance("Case1", {"a": -1, "x1": 1, "x3": 1}, {"branch": "plus"})
m = catalog.instantiate(inst).tensor()
h = hecke.hecke_extract(m)
print("lambda2 =", h.lambda2, " q =", h.q, " multiplicity k =", h.multiplicity)
print("loop parameter =", hecke.loop_parameter(m))

# %%
t0 = time.perf_counter()
tab = hecke.multiplicity_table(m, n_max=6)
print(f"table to n=6 in {time.perf_counter() - t0:.2f} s")
for n in range(2, 7):
    print(n, tab.levels[n])
print("top row:", tab.top_sequence())

# %% the TL projector residual stays at rounding level
for n in (3, 4, 5):
    print(n, hecke.tl_projector_residual(m, n) / hecke.tl_scale(m))
