"""Möbius-transformed trapezoidal rule for weighted integrals over the real line."""

from .errors import DomainError, NonFiniteIntegrandError, NumericalConsistencyError
from .baselines import gauss_hermite_integrate, gauss_hermite_rule, se_transform_integrate
from .mobius import MobiusMap, QuadratureGrid, make_grid
from .multivariate import LatticeRule, ProductWeight, integrate_lattice, korobov_search, lattice_points
from .quadrature import (
    ConvergenceReport,
    NestedState,
    TransformedIntegrand,
    convergence_study,
    evaluate_g,
    integrate,
    integrate_function,
    refine,
    start_nested,
)
from .randomized import RandomizedDraw, RmseReport, draw, integrate_once, rmse_study
from .trig_approx import TrigInterpolant, build_interpolant, dft, lp_error
from .weights import WeightFunction, custom, gaussian, logistic, reference_abs_power_integral

__version__ = "0.1.0"

__all__ = [
    "DomainError", "NonFiniteIntegrandError", "NumericalConsistencyError",
    "gauss_hermite_integrate", "gauss_hermite_rule", "se_transform_integrate",
    "MobiusMap", "QuadratureGrid", "make_grid",
    "LatticeRule", "ProductWeight", "integrate_lattice", "korobov_search", "lattice_points",
    "ConvergenceReport", "NestedState", "TransformedIntegrand", "convergence_study", "evaluate_g",
    "integrate", "integrate_function", "refine", "start_nested",
    "RandomizedDraw", "RmseReport", "draw", "integrate_once", "rmse_study",
    "TrigInterpolant", "build_interpolant", "dft", "lp_error",
    "WeightFunction", "custom", "gaussian", "logistic", "reference_abs_power_integral",
]
