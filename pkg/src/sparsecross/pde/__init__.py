"""Sparse Galerkin machinery for the periodic affine-diffusion problem."""

from .trig import (TrigFunction, kappas_1d, real_coefficient, stiffness_band_1d,
                   stiffness_entry, stiffness_entry_real, solve_deterministic_1d)
from .legendre import gauss_nodes, legendre_coupling, legendre_values
from .problem import DecaySequences, EllipticityReport, ProblemSpec, study_weights
from .galerkin import (GalerkinSystem, NonConvergenceError, Reference, assemble,
                       bochner_norm_V, coefficient_decay_check, error_V,
                       reference_solution, solve)
from .studies import (StudyResult, convergence_study, fit_loglog_slope,
                      make_parametric_benchmark, make_spatial_benchmark,
                      spatial_study, study_rows_csv)

__all__ = [
    "TrigFunction", "kappas_1d", "real_coefficient", "stiffness_band_1d",
    "stiffness_entry", "stiffness_entry_real", "solve_deterministic_1d",
    "gauss_nodes", "legendre_coupling", "legendre_values",
    "DecaySequences", "EllipticityReport", "ProblemSpec", "study_weights",
    "GalerkinSystem", "NonConvergenceError", "Reference", "assemble",
    "bochner_norm_V", "coefficient_decay_check", "error_V",
    "reference_solution", "solve",
    "StudyResult", "convergence_study", "fit_loglog_slope",
    "make_parametric_benchmark", "make_spatial_benchmark", "spatial_study",
    "study_rows_csv",
]
