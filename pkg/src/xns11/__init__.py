"""Machine-checked enumeration of the integral points of X_ns(11).

The curve Y^2 + 11Y = X^3 + 11X^2 + 33X carries exactly seven rational
points at which k = x/(xy - 11) is an integer.  This package recomputes
every step of that enumeration as a certificate: real-analytic interval
bounds, height comparisons, torsion of the cusps, an absolute coefficient
bound from linear forms in elliptic logarithms, continued-fraction
reduction, and the final sweep, plus the transfer of integrality through
the degree-55 map to the j-line.
"""

from .certificates import Certificate, Check, format_value
from .curve_core import (CURVE, GENERATOR, INTEGRAL_POINT_MULTIPLES,
                         RationalPoint, SEVEN_INTEGRAL_POINTS, WeierstrassModel,
                         add, k_value, mul, negate, points_with_k, t_value)
from .heights import HeightEstimate, canonical_height, naive_height
from .linear_forms import (BOUNDS, DAVID, BoundConstants, DavidParameters,
                           ReductionTable, SolveReport, derive_absolute_bound,
                           reduce_by_convergents, scan_small_k,
                           solve_integral_points, sweep_small_multiples)
from .modular_map import CM_TABLE, j_map, jmap_data
from .periods_logs import elliptic_log, real_period
from .real_numerics import BigReal, continued_fraction, real_roots

__version__ = "0.1.0"

__all__ = [
    "BOUNDS", "BigReal", "BoundConstants", "CM_TABLE", "CURVE", "Certificate",
    "Check", "DAVID", "DavidParameters", "GENERATOR",
    "INTEGRAL_POINT_MULTIPLES", "HeightEstimate", "RationalPoint",
    "ReductionTable", "SEVEN_INTEGRAL_POINTS", "SolveReport",
    "WeierstrassModel", "add", "canonical_height", "continued_fraction",
    "derive_absolute_bound", "elliptic_log", "format_value", "j_map",
    "jmap_data", "k_value", "mul", "naive_height", "negate", "points_with_k",
    "real_period", "real_roots", "reduce_by_convergents", "scan_small_k",
    "solve_integral_points", "sweep_small_multiples", "t_value",
    "__version__",
]
