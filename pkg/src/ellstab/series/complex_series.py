"""Complex Laurent series as pairs of real series."""

import math
from fractions import Fraction
from typing import Tuple

from ellstab.exceptions import TruncationError, ZeroDivisorError
from ellstab.series.laurent import LaurentSeries, as_series, is_exact_scalar


class ComplexLaurentSeries:
    """The series ``re + i*im`` with real parts of type :class:`LaurentSeries`."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_real_series(re)
        self.im = _as_real_series(im)

    @classmethod
    def from_values(cls, re, im) -> "ComplexLaurentSeries":
        """Build from exact scalars, floats or series (floats are converted exactly)."""
        return cls(re, im)

    @property
    def exact(self) -> bool:
        return self.re.exact and self.im.exact

    @property
    def truncation_order(self) -> int:
        if self.re.exact:
            return self.im.truncation_order
        if self.im.exact:
            return self.re.truncation_order
        return min(self.re.truncation_order, self.im.truncation_order)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    @property
    def lowest_degree(self) -> int:
        bound = min(self.re.valuation_bound(), self.im.valuation_bound())
        if bound == math.inf:
            return 0
        return int(bound)

    @property
    def leading_coefficient(self) -> Tuple:
        """``(re, im)`` coefficients of the lowest degree with a nonzero part."""
        if self.is_zero():
            if self.exact:
                return Fraction(0), Fraction(0)
            raise TruncationError("Leading coefficient of an unknown series.")
        degree = self.lowest_degree
        return self.re.coefficient(degree), self.im.coefficient(degree)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexLaurentSeries):
            return other
        if isinstance(other, LaurentSeries) or is_exact_scalar(other):
            return ComplexLaurentSeries(other, 0)
        if isinstance(other, complex):
            return ComplexLaurentSeries(other.real, other.imag)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexLaurentSeries(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexLaurentSeries(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexLaurentSeries(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexLaurentSeries(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexLaurentSeries":
        return ComplexLaurentSeries(self.re, -self.im)

    def norm_squared(self) -> LaurentSeries:
        return self.re * self.re + self.im * self.im

    def times_i(self) -> "ComplexLaurentSeries":
        return ComplexLaurentSeries(-self.im, self.re)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisorError("Division by the zero series.")
        if other.im.is_zero() and other.im.exact:
            return ComplexLaurentSeries(self.re / other.re, self.im / other.re)
        inverse_norm = 1 / other.norm_squared()
        return (self * other.conjugate()) * ComplexLaurentSeries(inverse_norm, 0)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def truncate(self, order: int) -> "ComplexLaurentSeries":
        return ComplexLaurentSeries(self.re.truncate(order), self.im.truncate(order))

    def eval_at(self, v) -> Tuple[complex, float]:
        re, re_tail = self.re.eval_at(v)
        im, im_tail = self.im.eval_at(v)
        return complex(re, im), max(re_tail, im_tail)

    def to_dict(self) -> dict:
        return {"re": self.re.to_dict(), "im": self.im.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexLaurentSeries":
        return cls(
            LaurentSeries.from_dict(data["re"]), LaurentSeries.from_dict(data["im"])
        )

    def __repr__(self) -> str:
        return f"ComplexLaurentSeries(re={self.re!r}, im={self.im!r})"


def _as_real_series(value) -> LaurentSeries:
    if isinstance(value, float):
        return LaurentSeries.constant(Fraction(value))
    return as_series(value)


I = ComplexLaurentSeries(0, 1)
