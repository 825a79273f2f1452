"""Fault-tolerance squeezing thresholds for GKP-corrected Gaussian gates.

The package tracks finite-squeezing noise through optical SUM gates and the
two-stage GKP correction, turns the resulting variances into error
probabilities, and solves for the squeezing at which a gate reaches a target
error rate. A Monte-Carlo sampler cross-checks every analytic probability.
"""

__version__ = "0.1.0"

from .core import QuadraticSurd, SQRT5, VarianceVector, db_from_variance, erf_eval, variance_from_db
from .gates import (
    GateModel,
    RealisticSumParams,
    hybrid_single_mode_error,
    ideal_cz,
    ideal_sum,
    is_symplectic,
    realistic_sum,
    solve_unit_gain_reflectivity,
    sum_noise_vectors,
    unit_gain_reflectivity_exact,
)
from .gkp import GkpParams, admissible_gains, correctable_range, gkp_density, modular_decode
from .ledger import LedgerTrace, run_mirrored_ledger, run_single_mode_ledger, sigma_x_squared, sigma_y_squared
from .analysis import (
    CZ,
    SingleMode,
    ThresholdResult,
    p_corr,
    p_corr_x,
    p_corr_y,
    p_err_cz,
    p_err_single,
    solve_threshold,
    sweep_error_surface,
)
from .montecarlo import McConfig, McResult, mc_p_corr, mc_pipeline
