"""Non-intrusive polynomial chaos uncertainty quantification for nuclear fuel rods.

Subpackages and modules
-----------------------
basis      orthogonal polynomial families and total-order multi-index bases
sampling   random inputs, standardization and sample designs
fit        least-squares chaos coefficients and moments
sobol      variance-based sensitivity indices from chaos coefficients
materials  UO2, U3Si2 and SiC/SiC property correlations
rodsim     quasi-static single-rod thermal and volumetric model
campaign   sample / run / fit / analyze orchestration with a run cache
cli        command-line front end (``pcerod``)
"""
from .basis import BasisSet, PolynomialFamily, basis_size, build_basis
from .fit import ChaosExpansion, fit_expansion, moments
from .sampling import RandomInput, SampleSet, draw_samples, required_sample_count
from .sobol import SobolTable, first_order_indices, sobol_table, total_order_indices

__version__ = "0.1.0"

__all__ = [
    "BasisSet", "PolynomialFamily", "basis_size", "build_basis",
    "ChaosExpansion", "fit_expansion", "moments",
    "RandomInput", "SampleSet", "draw_samples", "required_sample_count",
    "SobolTable", "first_order_indices", "sobol_table", "total_order_indices",
]
