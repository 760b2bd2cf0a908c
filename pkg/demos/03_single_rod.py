"""One deterministic run of the rod model for each fuel at nominal inputs."""
# %%
import numpy as np

from pcerod.config import CLAD_DEFAULTS, FUEL_DEFAULTS
from pcerod.rodsim import RodInputs, coolant_film_coefficient, OperatingConditions, simulate

print(f"coolant film coefficient {coolant_film_coefficient(OperatingConditions()):.0f} W/m2-K")

# %%
runs = {}
for fuel in ("UO2", "U3Si2"):
    runs[fuel] = simulate(inputs=RodInputs(fuel, **FUEL_DEFAULTS[fuel], **CLAD_DEFAULTS))

# %% [markdown]
# Compare the two fuels at the start of the power plateau and at end of life.

# %%
grid = runs["UO2"].time_grid
for t in (1e6, grid[-1]):
    i = int(np.argmin(np.abs(np.log(grid / t))))
    print(f"\nt = {grid[i]:.3e} s")
    for name in ("max_fuel_centerline_T", "max_clad_surface_T", "avg_burnup", "plenum_pressure"):
        print(f"  {name:22s} UO2 {runs['UO2'][name][i]:12.5g}   U3Si2 {runs['U3Si2'][name][i]:12.5g}")
print("\nflags:", {f: s.flags for f, s in runs.items()})
