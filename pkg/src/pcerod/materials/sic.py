"""SiC and SiC/SiC composite cladding correlations."""
from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import trapezoid

from ..errors import CorrelationRangeError, RangeClampWarning
from . import constants as c
from ._util import as_float, require


def sic_specific_heat(T):
    """Monolithic SiC heat capacity (J/kg-K)."""
    T, out = as_float(T)
    require(T > 0, "temperature must be positive (K)")
    k = c.SIC_CP
    return out(k["c0"] + k["c1"] * T + k["c2"] * T**2 + k["cm2"] / T**2)


def sic_cte(T, clamp: bool = False):
    """Linear expansion coefficient (1/K), valid for 294 < T <= 1273 K.

    With ``clamp=True`` out-of-range temperatures are pulled to the nearest
    bound and a ``RangeClampWarning`` is emitted instead of raising.
    """
    T, out = as_float(T)
    k = c.SIC_CTE
    bad = (T <= k["t_min"]) | (T > k["t_max"])
    if np.any(bad):
        if not clamp:
            raise CorrelationRangeError(
                f"SiC expansion coefficient valid for {k['t_min']} < T <= {k['t_max']} K, got {T[bad].ravel()[0]:g}")
        warnings.warn(f"SiC expansion temperature clamped into [{k['t_min']}, {k['t_max']}] K",
                      RangeClampWarning, stacklevel=2)
        T = np.clip(T, k["t_min"], k["t_max"])
    return out(k["scale"] * (k["c0"] + k["c1"] * T + k["c2"] * T**2 + k["c3"] * T**3))


def sic_thermal_strain_step(eps_prev, T_prev, T_curt, clamp: bool = False):
    """Advance the thermal strain with the step-averaged coefficient."""
    if T_curt == T_prev:
        return eps_prev
    alpha = sic_cte(np.array([T_prev, T_curt], dtype=float), clamp=clamp)
    return eps_prev + (T_curt - T_prev) * 0.5 * (alpha[0] + alpha[1])


def katoh_rate_constant(T):
    """k(T) of the swelling rate equation."""
    T, out = as_float(T)
    return out(np.polynomial.polynomial.polyval(T, c.KATOH_K))


def katoh_saturation_fluence(T):
    """gamma_sc(T), in units of 1e21 n/cm^2."""
    T, out = as_float(T)
    return out(np.polynomial.polynomial.polyval(T, c.KATOH_GSC))


def katoh_swelling_step(S_prev: float, gamma_prev: float, d_gamma: float, T: float,
                        low_fluence_steps: int = c.KATOH_STEPS, substeps: int = 4000) -> float:
    """Integrate dS/dgamma = k gamma^(-1/3) exp(-gamma/gamma_sc) over one fluence increment.

    Fluences are in n/cm^2. An increment starting at zero fluence is split
    into ``low_fluence_steps`` pieces on which gamma^(-1/3) is integrated
    exactly and the exponential taken at the piece midpoint; later
    increments use the composite trapezoid rule on ``substeps`` pieces.
    """
    if d_gamma < 0:
        raise CorrelationRangeError("fluence increment must be non-negative")
    if gamma_prev < 0:
        raise CorrelationRangeError("fluence must be non-negative")
    if d_gamma == 0:
        return S_prev
    k = katoh_rate_constant(T)
    gsc = katoh_saturation_fluence(T)
    if gsc <= 0:
        raise CorrelationRangeError(f"characteristic fluence is non-positive at T={T:g} K")
    a = gamma_prev / c.KATOH_FLUENCE_UNIT
    b = (gamma_prev + d_gamma) / c.KATOH_FLUENCE_UNIT
    if a == 0.0:
        edges = np.linspace(0.0, b, low_fluence_steps + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        inc = 1.5 * np.sum(np.diff(edges ** (2.0 / 3.0)) * np.exp(-mid / gsc))
    else:
        x = np.linspace(a, b, substeps + 1)
        inc = trapezoid(x ** (-1.0 / 3.0) * np.exp(-x / gsc), x)
    return S_prev + k * inc
