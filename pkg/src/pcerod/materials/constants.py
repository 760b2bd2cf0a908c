"""Constant tables for the fuel and cladding correlations.

Values are kept as printed decimals; ``constants_report`` dumps them for audit.
"""
from __future__ import annotations

import json
from pathlib import Path

# UO2 specific heat (table units: J/kg-K)
UO2_CP = {"K1": 296.7, "K2": 2.43e-2, "K3": 8.745e7, "theta": 535.285, "Y": 2.0, "E_D": 1.577e5}
R_CP = 8.3145  # J/mol-K, used by the specific-heat defect term

# MATPRO FCREEP; there is no A5 in the model
FCREEP = {"A1": 0.3919, "A2": 1.3100e-19, "A3": -87.7, "A4": 2.0391e-25, "A6": -90.5, "A7": 3.7226e-35}
FCREEP_Q = {"Q1_slope": 74.829, "Q1_offset": 301.762, "Q2_slope": 83.143, "Q2_offset": 469.191}  # kJ/mol
R_GAS = 8.3143  # J/mol-K

# MATPRO FTHEXP, solid phase
FTHEXP = {
    "UO2": {"P1": 1.0e-5, "P2": 3.0e-3, "P3": 4.0e-2, "P_ED": 6.9e-20},
    "PuO2": {"P1": 9.0e-6, "P2": 2.7e-3, "P3": 7.0e-2, "P_ED": 7.0e-20},
}
K_BOLTZMANN = 1.38e-23  # J/K

# ESCORE densification
ESCORE = {"delta_rho0": 0.01, "bu_d_mwd_per_kgu": 5.0, "transition_celsius": 750.0}
ESCORE_CD_UO2 = {"a": 7.235, "b": 0.0086, "t0": 25.0, "scale": 500.0}
ESCORE_CD_U3SI2 = {"a": 565.0, "b": 6.11e-2, "c": 1.14e7}

# MATPRO fission-product swelling for UO2
SWELLING_UO2 = {"solid": 5.577e-5, "gas": 1.96e-31, "gas_power": 11.73, "gas_exp": 0.0162,
                "gas_burnup_exp": 0.0178, "t_limit": 2800.0}

# U3Si2
U3SI2_CP = {"WHITE": (140.5, 0.02582), "IAEA": (199.0, 0.104), "HANDBOOK": (1000.0, 3.52e-5, 0.18)}
U3SI2_ELASTIC = {"E_slope": -6.425, "E0": 142.68, "G_slope": -2.901, "G0": 61.27, "rho_theor": 12200.0}
YINGLING = {"A": 4.841e-19, "n": 1.936, "m": -1.86, "Q": 223100.0, "d": 2e-5}
FINLAY = {"solid": 0.34392, "gas2": 3.8808, "gas1": 0.45419, "total2": 3.9909, "total1": 0.79811}
U3SI2_CTE = 1.5e-5  # 1/K, constant placeholder

# SiC / SiC-SiC
SIC_CP = {"c0": 925.65, "c1": 0.3773, "c2": -7.9259e-5, "cm2": -3.1946e7}
SIC_CTE = {"c0": -0.7765, "c1": 0.014350, "c2": -1.2209e-5, "c3": 3.8289e-9, "scale": 1.0e-6,
           "t_min": 294.0, "t_max": 1273.0}
SIC_REFERENCE_T = 295.0
KATOH_K = (0.10612, -1.5904e-4, 6.0631e-8)
KATOH_GSC = (0.51801, -2.7651e-3, 9.4807e-6, -1.3095e-8, 6.7221e-12)
KATOH_STEPS = 1000
KATOH_FLUENCE_UNIT = 1.0e21  # n/cm^2; the polynomials are fitted in these units

ELASTIC = {"UO2": (2.0e11, 0.345), "SiC-SiC": (90e9, 0.35)}


def constants_report() -> dict:
    """Every constant table as plain JSON-compatible data."""
    return {
        "uo2_specific_heat": {**UO2_CP, "R": R_CP},
        "uo2_creep": {**FCREEP, **FCREEP_Q, "R": R_GAS},
        "fthexp": {**FTHEXP, "k_B": K_BOLTZMANN},
        "escore": {**ESCORE, "cd_uo2": ESCORE_CD_UO2, "cd_u3si2": ESCORE_CD_U3SI2},
        "uo2_swelling": SWELLING_UO2,
        "u3si2_specific_heat": {k: list(v) for k, v in U3SI2_CP.items()},
        "u3si2_elasticity": U3SI2_ELASTIC,
        "u3si2_creep": {**YINGLING, "R": R_GAS},
        "u3si2_swelling": FINLAY,
        "u3si2_cte": U3SI2_CTE,
        "sic_specific_heat": SIC_CP,
        "sic_cte": {**SIC_CTE, "reference_T": SIC_REFERENCE_T},
        "katoh": {"k": list(KATOH_K), "gamma_sc": list(KATOH_GSC), "steps": KATOH_STEPS,
                  "fluence_unit_per_cm2": KATOH_FLUENCE_UNIT},
        "elastic": {k: {"E_Pa": e, "nu": nu} for k, (e, nu) in ELASTIC.items()},
    }


def write_constants_report(path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(constants_report(), indent=2) + "\n")
    return path
