"""UO2 (and PuO2 expansion) correlations. SI units unless noted."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import constants as c
from ._util import as_float, require

AVOGADRO = 6.02214076e23
URANIUM_MOLAR_MASS = 0.23803  # kg/mol


def uo2_specific_heat(T, Y: float = c.UO2_CP["Y"]):
    """Heat capacity in the constant table's units (J/kg-K).

    The phonon, linear and defect-formation terms are summed as printed.
    """
    T, out = as_float(T)
    require(T > 0, "temperature must be positive (K)")
    k = c.UO2_CP
    th, ed = k["theta"], k["E_D"]
    e = np.exp(th / T)
    phonon = k["K1"] * th**2 * e / (T**2 * (e - 1.0) ** 2)
    defect = Y * k["K3"] * ed / (2.0 * c.R_CP * T**2) * np.exp(-ed / (c.R_CP * T))
    return out(phonon + k["K2"] * T + defect)


def _stoichiometry_factor(x):
    return 1.0 / (np.exp(-20.0 / np.log(x - 2.0) - 8.0) + 1.0)


def uo2_creep_rate(sigma, T, D, G, F_dot, x):
    """FCREEP thermal plus irradiation creep rate (1/s).

    sigma in Pa, T in K, D in % theoretical density, G grain size in um,
    F_dot in fissions/m^3-s, x the oxygen-to-metal ratio. The activation
    energies are printed in kJ/mol and converted to J/mol here.
    """
    sigma, out = as_float(sigma)
    T = np.asarray(T, dtype=float)
    require(sigma >= 0, "effective stress must be non-negative")
    require(T > 0, "temperature must be positive (K)")
    require(np.asarray(G) > 0, "grain size must be positive")
    require(np.asarray(F_dot) >= 0, "fission rate must be non-negative")
    require(np.asarray(x) > 2.0, "oxygen-to-metal ratio must exceed 2 for f(x)")
    # the (A6 + D) denominator changes sign at D = 90.5
    require(np.asarray(D) > -c.FCREEP["A6"], "density must exceed 90.5 % theoretical")
    a, q = c.FCREEP, c.FCREEP_Q
    f = _stoichiometry_factor(np.asarray(x, dtype=float))
    q1 = (q["Q1_slope"] * f + q["Q1_offset"]) * 1e3
    q2 = (q["Q2_slope"] * f + q["Q2_offset"]) * 1e3
    thermal = (a["A1"] + a["A2"] * F_dot) / ((a["A3"] + D) * G**2) * sigma * np.exp(-q1 / (c.R_GAS * T))
    power_law = a["A4"] / (a["A6"] + D) * sigma**4.5 * np.exp(-q2 / (c.R_GAS * T))
    return out(thermal + power_law + a["A7"] * F_dot * sigma)


def fthexp_strain(T, material: str = "UO2"):
    """Solid-phase linear thermal strain dL/L0."""
    if material not in c.FTHEXP:
        raise ValueError(f"unknown FTHEXP material {material!r}")
    T, out = as_float(T)
    require(T > 0, "temperature must be positive (K)")
    p = c.FTHEXP[material]
    return out(p["P1"] * T - p["P2"] + p["P3"] * np.exp(-p["P_ED"] / (c.K_BOLTZMANN * T)))


def mwd_per_kgu_to_fima(burnup, fission_energy: float = 3.20e-11,
                        uranium_molar_mass: float = URANIUM_MOLAR_MASS) -> float:
    """Convert MWd/kgU to fissions per initial uranium atom."""
    fissions_per_kg = burnup * 86400e6 / fission_energy
    return fissions_per_kg * uranium_molar_mass / AVOGADRO


ESCORE_BU_D = mwd_per_kgu_to_fima(c.ESCORE["bu_d_mwd_per_kgu"])


def escore_cd(T_celsius, material: str = "UO2"):
    """Temperature factor C_D. The UO2 branch takes Celsius; the U3Si2
    polynomial is evaluated in Kelvin (T + 273.15)."""
    T, out = as_float(T_celsius)
    hot = T >= c.ESCORE["transition_celsius"]
    if material == "UO2":
        k = c.ESCORE_CD_UO2
        cold = k["a"] - k["b"] * (T - k["t0"]) / k["scale"]
    elif material == "U3Si2":
        k = c.ESCORE_CD_U3SI2
        tk = T + 273.15
        require(tk > 0, "temperature below absolute zero")
        cold = k["a"] + k["b"] * tk - k["c"] / tk**2
    else:
        raise ValueError(f"unknown densification material {material!r}")
    cd = np.where(hot, 1.0, cold)
    require(cd > 0, "C_D must be positive in the cold branch")
    return out(cd)


def escore_densification(Bu, T, delta_rho0: float = c.ESCORE["delta_rho0"],
                         Bu_D: float = ESCORE_BU_D, material: str = "UO2"):
    """Volumetric densification strain in [-delta_rho0, 0]. T in Celsius, Bu in FIMA."""
    Bu = np.asarray(Bu, dtype=float)
    require(Bu >= 0, "burnup must be non-negative")
    require(np.asarray(Bu_D) > 0, "Bu_D must be positive")
    cd = np.asarray(escore_cd(T, material))
    val = delta_rho0 * np.expm1(Bu * np.log(0.01) / (cd * Bu_D))
    return float(val) if val.ndim == 0 else val


class SwellingIncrement(NamedTuple):
    solid: object
    gaseous: object
    above_limit: bool  # True when any T >= 2800 K had its gaseous term zeroed


def uo2_fission_swelling(rho, Bu, dBu, T) -> SwellingIncrement:
    """Solid and gaseous fission-product volumetric swelling increments."""
    T, out = as_float(T)
    require(np.asarray(rho) > 0, "density must be positive")
    require(np.asarray(dBu) >= 0, "burnup increment must be non-negative")
    s = c.SWELLING_UO2
    solid = s["solid"] * rho * dBu
    hot = T >= s["t_limit"]
    dt = np.where(hot, 0.0, s["t_limit"] - T)
    gas = (s["gas"] * rho * dBu * dt ** s["gas_power"] * np.exp(-s["gas_exp"] * dt)
           * np.exp(-s["gas_burnup_exp"] * rho * Bu))
    gas = np.where(hot, 0.0, gas)
    return SwellingIncrement(float(solid) if np.ndim(solid) == 0 else solid, out(gas), bool(np.any(hot)))
