"""Generalized Grover search simulator and phase model of recognition memory."""
from grovermem.analytic import (
    CookingStatus,
    TwoDState,
    beta,
    classify_cooking,
    j_opt_approx,
    j_opt_exact,
    success_probability,
    success_probability_scaled,
)
from grovermem.gates import (
    SearchParams,
    SearchTrace,
    diffusion,
    generalized_diffusion,
    grover_step,
    oracle_c,
    run_search,
    selective_phase_inversion,
    selective_phase_rotation,
    walsh_hadamard,
)
from grovermem.kernels import BACKEND
from grovermem.phasefit import PhaseFit, feasible_max_probability, fit_phase, validate_ordering
from grovermem.statevector import StateVector, basis_state, norm, probability_of, sample_outcome, uniform_state

__version__ = "0.1.0"
