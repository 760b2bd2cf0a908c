"""U3Si2 fuel correlations."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import DomainError
from . import constants as c
from ._util import as_float, require

CP_MODELS = tuple(c.U3SI2_CP)


def u3si2_specific_heat(T, model: str = "WHITE"):
    """Linear heat-capacity forms (J/kg-K)."""
    if model not in c.U3SI2_CP:
        raise ValueError(f"unknown U3Si2 heat-capacity model {model!r}; expected one of {CP_MODELS}")
    T, out = as_float(T)
    require(T > 0, "temperature must be positive (K)")
    k = c.U3SI2_CP[model]
    if model == "WHITE":
        val = k[0] + k[1] * T
    elif model == "IAEA":
        val = k[0] + k[1] * (T - 273.15)
    else:
        val = k[0] * (k[1] * T + k[2])
    return out(val)


class Elasticity(NamedTuple):
    E: float  # GPa
    G: float  # GPa
    nu: float
    porosity: float  # percent


def u3si2_elasticity(rho_current: float) -> Elasticity:
    """Porosity-dependent Young's and shear moduli."""
    k = c.U3SI2_ELASTIC
    if not 0.0 < rho_current <= k["rho_theor"]:
        raise DomainError(f"density {rho_current} outside (0, {k['rho_theor']}] kg/m^3")
    p = (1.0 - rho_current / k["rho_theor"]) * 100.0
    E = k["E_slope"] * p + k["E0"]
    G = k["G_slope"] * p + k["G0"]
    if G <= 0 or E <= 0:
        raise DomainError(f"porosity {p:.3g}% gives non-positive moduli")
    return Elasticity(E, G, E / (2.0 * G) - 1.0, p)


def u3si2_creep_rate(sigma, T, d: float = c.YINGLING["d"]):
    """Yingling creep rate (1/s). The exponential carries a positive sign,
    exactly as the correlation is printed."""
    sigma, out = as_float(sigma)
    require(sigma >= 0, "effective stress must be non-negative")
    require(np.asarray(T) > 0, "temperature must be positive (K)")
    require(np.asarray(d) > 0, "grain size must be positive")
    y = c.YINGLING
    return out(y["A"] * sigma ** y["n"] * np.power(d, y["m"]) * np.exp(y["Q"] / (c.R_GAS * np.asarray(T))))


def u3si2_fission_swelling(Bu):
    """Cumulative fission-product volumetric strain, Bu in FIMA."""
    Bu, out = as_float(Bu)
    require(Bu >= 0, "burnup must be non-negative")
    f = c.FINLAY
    return out(f["total2"] * Bu**2 + f["total1"] * Bu)


def u3si2_fission_swelling_parts(Bu):
    """(solid, gaseous) split of the same strain."""
    Bu, out = as_float(Bu)
    require(Bu >= 0, "burnup must be non-negative")
    f = c.FINLAY
    return out(f["solid"] * Bu), out(f["gas2"] * Bu**2 + f["gas1"] * Bu)


def u3si2_thermal_strain(T, T_ref: float, cte: float = c.U3SI2_CTE):
    """Linear thermal strain for a constant expansion coefficient."""
    T, out = as_float(T)
    return out(cte * (T - T_ref))
