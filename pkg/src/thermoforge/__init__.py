"""Thermodynamics of two-bath engines for small quantum systems."""
from .kernels import BACKEND
from .spectra import (
    BathPair, BlockSpectrum, DenseState, EnergyLevels, EngineSpec, SemiGibbs, WeightedSpectrum,
    block_dephase, block_spectrum, semi_gibbs, weighted_spectrum,
)
from .divergences import (
    AlphaValue, alpha_free_entropy, alpha_grid, helmholtz_free_entropy, quantum_renyi_divergence,
    renyi_entropy, renyi_relative_entropy, smoothed_dmax, smoothed_dmin,
)
from .majorization import (
    d_majorize_lp, fine_grain, majorizes, thermo_lorenz_curve, thermo_majorizes, tramps,
)
from .transforms import (
    Transformation, clock_extend, cslto_feasible, cslto_feasible_signed, distillable_and_formation,
    free_entropy_distance, slto_feasible, transform_report, work_quantities,
)
from .engine import (
    alpha_works, correlation_engine, engine_report, engine_spontaneous, heat_report, local_to_comparison,
    one_step_cycle, refrigeration_cost, statements_report,
)
from .asymmetry import asymmetry, asymmetry_necessary

__version__ = "0.1.0"
