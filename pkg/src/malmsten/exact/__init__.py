"""Exact rational arithmetic: number sequences, polynomials, series and triangular systems."""

from .linalg import (
    RationalMatrix,
    SingularSystemError,
    forward_substitute,
    lower_triangular_inverse,
    triangular_invert,
)
from .numbers import bernoulli, euler_number, eulerian_A, eulerian_B
from .poly import RationalPolynomial
from .residues import laurent_inverse_cosh_pow, residue_at_pole, sinh_power_series, taylor_sinh_ratio
from .series import (
    GaussianRational,
    PiPoly,
    SingularSeriesError,
    TruncatedSeries,
    cosh_series,
    series_add,
    series_invert,
    series_mul,
    series_pow,
    sinh_series,
)

__all__ = [
    "GaussianRational",
    "PiPoly",
    "RationalMatrix",
    "RationalPolynomial",
    "SingularSeriesError",
    "SingularSystemError",
    "TruncatedSeries",
    "bernoulli",
    "cosh_series",
    "euler_number",
    "eulerian_A",
    "eulerian_B",
    "forward_substitute",
    "laurent_inverse_cosh_pow",
    "lower_triangular_inverse",
    "residue_at_pole",
    "series_add",
    "series_invert",
    "series_mul",
    "series_pow",
    "sinh_power_series",
    "sinh_series",
    "taylor_sinh_ratio",
    "triangular_invert",
]
