# %% [markdown]
# # Catalog tour
# Instantiate each solution family, check the braid relation and compare
# the measured spectrum with the family template.

# %%
import numpy as np

from acc_ybe import acc, catalog, numerics

# %%
for row in catalog.list_families():
    print(f"{row['id']:<14} {row['kind']:<12} {row.get('spectrum', '')}")

# %% one instance per family
for fid in catalog.TABLE_FAMILIES:
    inst = catalog.random_instance(fid, seed=0)
    m = catalog.instantiate(inst).tensor()
    spec = catalog.expected_spectrum(inst)
    rep = numerics.spectrum_report(m, [v for v, _ in spec], tol=1e-8)
    print(f"{fid:<14} anomaly {acc.anomaly_residual(m):.1e}  multiplicities {sorted(rep.multiplicities().values())}")

# %% the generic family: b is a root of a quadratic, off-root values break the relation
a, x1, x3 = -1, 1, 1
b = catalog.case1_solve_b(a, x1, x3, "plus")
for scale in (1.0, 1.01, 1.1):
    m = catalog.case1_params(a, x1, x3, scale * b).tensor()
    print(f"b * {scale}: anomaly {acc.anomaly_residual(m):.2e}")

# %% block form in graded ordering
p = catalog.instantiate(catalog.FamilyInstance("Case5_7", {"b": 1, "x2": 1, "x3": 1}, {"epsilon": -1}))
for block in acc.BlockForm.from_params(p).blocks:
    print(np.round(block, 3), end="\n\n")
