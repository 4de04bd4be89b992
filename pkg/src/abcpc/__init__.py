"""Third-order predictor-corrector solver for Atangana-Baleanu-Caputo fractional IVPs."""

from .errors import ConvergenceError, DomainError, NumericalError, ValidationError
from .params import ABCParams, Grid, Normalization
from .solver import ProblemSpec, Trajectory, solve
from .special import gamma, mittag_leffler
from .weights import WeightTable, increment_weights, lag_weights

__all__ = [
    "ABCParams", "ConvergenceError", "DomainError", "Grid", "Normalization", "NumericalError",
    "ProblemSpec", "Trajectory", "ValidationError", "WeightTable", "gamma", "increment_weights",
    "lag_weights", "mittag_leffler", "solve",
]
__version__ = "0.1.0"
