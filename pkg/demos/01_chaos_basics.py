"""Chaos expansion basics on functions with known answers.

Builds a total-order Legendre basis, fits a least-squares expansion to the
Ishigami function and compares the resulting Sobol indices to their closed
form. Nothing here touches the fuel model.
"""
# %%
import math

import numpy as np

from pcerod import PolynomialFamily, build_basis, fit_expansion, required_sample_count, sobol_table
from pcerod.sampling import unit_samples

# %% [markdown]
# A total-order basis in n variables up to degree p has C(n+p, p) terms.
# The multi-indices are graded, then reverse-lexicographic within a degree.

# %%
basis = build_basis(PolynomialFamily.legendre(), 2, 3)
print(len(basis), "terms:", basis.indices)

# %% [markdown]
# Ishigami on [-pi, pi]^3, written in terms of xi in [-1, 1]^3.

# %%
a, b = 7.0, 0.1
basis = build_basis(PolynomialFamily.legendre(), 3, 9)
m = required_sample_count(basis)
xi = 2.0 * unit_samples("latin_hypercube", m, 3, seed=0) - 1.0
x = math.pi * xi
y = np.sin(x[:, 0]) + a * np.sin(x[:, 1]) ** 2 + b * x[:, 2] ** 4 * np.sin(x[:, 0])

exp = fit_expansion(basis, xi, y[:, None, None], ("y",), [0.0])
table = sobol_table(exp, ["x1", "x2", "x3"])

v1 = 0.5 * (1 + b * math.pi ** 4 / 5) ** 2
v2 = a * a / 8
v13 = b * b * math.pi ** 8 * (1 / 18 - 1 / 50)
exact = np.array([v1, v2, 0.0]) / (v1 + v2 + v13)

print(f"P+1 = {len(basis)}, m = {m}, condition = {exp.diagnostics['condition']:.3g}")
print("mean     ", exp.mean()[0, 0], "exact", a / 2)
print("S1 (PCE) ", np.round(table.first_order[0, 0], 4))
print("S1 exact ", np.round(exact, 4))
print("ST (PCE) ", np.round(table.total_order[0, 0], 4))
