from ellstab.series.complex_series import I, ComplexLaurentSeries
from ellstab.series.laurent import (
    DEFAULT_ORDER,
    V,
    W,
    LaurentSeries,
    Order,
    as_series,
    compare_order,
    sqrt_series,
    theta_of,
)
from ellstab.series.phase import PhaseFunction, compare_phase, phase_of
from ellstab.series.quadratic import QuadraticNumber, quadratic, sqrt_exact

__all__ = [
    "DEFAULT_ORDER",
    "I",
    "V",
    "W",
    "ComplexLaurentSeries",
    "LaurentSeries",
    "Order",
    "PhaseFunction",
    "QuadraticNumber",
    "as_series",
    "compare_order",
    "compare_phase",
    "phase_of",
    "quadratic",
    "sqrt_exact",
    "sqrt_series",
    "theta_of",
]
