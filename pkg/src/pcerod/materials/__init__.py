"""Empirical fuel and cladding material correlations."""
from __future__ import annotations

from . import constants
from .constants import constants_report, write_constants_report
from .sic import (katoh_rate_constant, katoh_saturation_fluence, katoh_swelling_step, sic_cte,
                  sic_specific_heat, sic_thermal_strain_step)
from .u3si2 import (Elasticity, u3si2_creep_rate, u3si2_elasticity, u3si2_fission_swelling,
                    u3si2_fission_swelling_parts, u3si2_specific_heat, u3si2_thermal_strain)
from .uo2 import (ESCORE_BU_D, SwellingIncrement, escore_cd, escore_densification, fthexp_strain,
                  mwd_per_kgu_to_fima, uo2_creep_rate, uo2_fission_swelling, uo2_specific_heat)

_UNIT_SCALE = {"Pa": 1.0, "GPa": 1e-9}


def elastic_constants(material: str, unit: str = "Pa") -> tuple[float, float]:
    """Constant (E, nu) for ``"UO2"`` or ``"SiC-SiC"``."""
    key = {"SiC/SiC": "SiC-SiC", "SiC": "SiC-SiC"}.get(material, material)
    if key not in constants.ELASTIC:
        raise ValueError(f"no elastic constants for {material!r}")
    if unit not in _UNIT_SCALE:
        raise ValueError(f"unit must be one of {sorted(_UNIT_SCALE)}")
    E, nu = constants.ELASTIC[key]
    return E * _UNIT_SCALE[unit], nu


__all__ = [
    "constants", "constants_report", "write_constants_report", "elastic_constants",
    "uo2_specific_heat", "uo2_creep_rate", "fthexp_strain", "escore_cd", "escore_densification",
    "ESCORE_BU_D", "mwd_per_kgu_to_fima", "uo2_fission_swelling", "SwellingIncrement",
    "u3si2_specific_heat", "u3si2_elasticity", "Elasticity", "u3si2_creep_rate",
    "u3si2_fission_swelling", "u3si2_fission_swelling_parts", "u3si2_thermal_strain",
    "sic_specific_heat", "sic_cte", "sic_thermal_strain_step",
    "katoh_rate_constant", "katoh_saturation_fluence", "katoh_swelling_step",
]
