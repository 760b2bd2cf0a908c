"""Tabulate the material correlations over their working ranges."""
# %%
import numpy as np

from pcerod import materials as mat

# %%
T = np.array([400.0, 600.0, 800.0, 1000.0, 1200.0])
print("T [K]            ", T)
print("UO2 cp [J/kg-K]  ", np.round(mat.uo2_specific_heat(T, 2.0), 2))
print("U3Si2 cp (WHITE) ", np.round(mat.u3si2_specific_heat(T, "WHITE"), 2))
print("SiC cp           ", np.round(mat.sic_specific_heat(T), 2))
print("SiC alpha [1/K]  ", mat.sic_cte(T))
print("UO2 dL/L         ", mat.fthexp_strain(T, "UO2"))

# %% [markdown]
# Densification depends on burnup and temperature; swelling on burnup only.

# %%
bu = np.array([0.0, 0.01, 0.02, 0.04])
print("FIMA                 ", bu)
print("UO2 densification    ", mat.escore_densification(bu, 600.0))
print("U3Si2 swelling       ", mat.u3si2_fission_swelling(bu))

# %% [markdown]
# Irradiation swelling of SiC saturates with fast fluence (inputs in n/cm^2).

# %%
S, gamma = 0.0, 0.0
for d_gamma in (0.1, 0.4, 1.0, 2.5):
    S = mat.katoh_swelling_step(S, gamma * 1e21, d_gamma * 1e21, 773.0)
    gamma += d_gamma
    print(f"fluence {gamma:4.1f}e21 n/cm^2  swelling {S:.5f}")

# %%
print(mat.constants_report()["elastic"])
