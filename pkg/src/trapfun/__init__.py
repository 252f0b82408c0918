"""trapfun: special functions by trapezoidal sums of transformed integrals.

Regularized incomplete gamma functions P and Q ride an inverse-Laplace
contour whose constant-phase crossing makes the trapezoidal rule converge
geometrically; the confluent hypergeometric family rides a tanh/sinh double
transformation that buries the Euler integral's endpoint singularities under
double-exponential decay.  A CLI reproduces the published convergence tables
against embedded golden data.
"""

from .backend import backend_name
from .contours import (BranchKind, BranchSelector, ContourSample,
                       crossing_point_lower, crossing_point_upper, sample)
from .engine import (ConvergenceReport, Level, MeshSpec, TrapSum, refine,
                     sum_trapezoid)
from .errors import (AccuracyError, DomainError, NonFiniteTerm, OverflowGuard,
                     PoleError, TermCapExceeded, TrapfunError)
from .gamma_funcs import (GammaEval, erf, gamma, lower_incomplete_gamma,
                          reciprocal_gamma, regularized_lower_p,
                          regularized_upper_q)
from .hypergeom import (ChfParams, beta, chf_c, chf_c_scaled, gauss_2f1,
                        kummer_m)
from .scaled import ScaledReal

__version__ = "1.0.0"

__all__ = [
    "AccuracyError",
    "BranchKind",
    "BranchSelector",
    "ChfParams",
    "ContourSample",
    "ConvergenceReport",
    "DomainError",
    "GammaEval",
    "Level",
    "MeshSpec",
    "NonFiniteTerm",
    "OverflowGuard",
    "PoleError",
    "ScaledReal",
    "TermCapExceeded",
    "TrapSum",
    "TrapfunError",
    "backend_name",
    "beta",
    "chf_c",
    "chf_c_scaled",
    "crossing_point_lower",
    "crossing_point_upper",
    "erf",
    "gamma",
    "gauss_2f1",
    "kummer_m",
    "lower_incomplete_gamma",
    "reciprocal_gamma",
    "refine",
    "regularized_lower_p",
    "regularized_upper_q",
    "sample",
    "sum_trapezoid",
]
