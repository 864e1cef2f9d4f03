"""Truncated convergent Laurent series in w = 1/v with exact coefficients.

A :class:`LaurentSeries` stores the nonzero coefficients it knows together with the
truncation order ``N``: every coefficient of degree ``<= N`` is known, everything above
is unknown. Series that are known completely (polynomials in w and 1/w) carry the
``exact`` flag instead of a finite order.

Degrees are degrees in w, so negative degrees are positive powers of v and the
leading (dominant as v grows) term is the one of lowest degree.

"""

import enum
import logging
import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from ellstab.exceptions import ExtensionError, TruncationError, ZeroDivisorError
from ellstab.series.quadratic import (
    QuadraticNumber,
    as_scalar,
    exact_sign,
    format_scalar,
    sqrt_exact,
)

LOGGER = logging.getLogger(__name__)

DEFAULT_ORDER = 16


class Order(enum.Enum):
    """Outcome of comparing two series with respect to the eventual order."""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INDETERMINATE = "INDETERMINATE"

    @classmethod
    def from_sign(cls, sign: int) -> "Order":
        return {-1: cls.LT, 0: cls.EQ, 1: cls.GT}[sign]


def is_exact_scalar(value) -> bool:
    return isinstance(value, (int, Rational, QuadraticNumber)) and not isinstance(
        value, bool
    )


class LaurentSeries:
    """Element of the field of convergent Laurent series in w over the rationals.

    Args:
        coefficients (Iterable): Coefficients of consecutive degrees, starting at
            ``lowest_degree``. Entries may be ints, Fractions, quadratic numbers or
            their string forms.
        lowest_degree (int): Degree in w of the first coefficient.
        truncation_order (int, optional): Highest degree whose coefficient is known.
            ``None`` marks the series as exact, i.e. all further coefficients vanish.

    """

    __slots__ = ("_terms", "_order")

    def __init__(
        self,
        coefficients: Iterable = (),
        lowest_degree: int = 0,
        truncation_order: Optional[int] = None,
    ):
        terms = {}
        for offset, coefficient in enumerate(coefficients):
            degree = lowest_degree + offset
            if truncation_order is not None and degree > truncation_order:
                break
            coefficient = as_scalar(coefficient)
            if coefficient != 0:
                terms[degree] = coefficient
        self._terms: Dict[int, object] = terms
        self._order = None if truncation_order is None else int(truncation_order)

    @classmethod
    def _from_terms(cls, terms: Dict[int, object], order: Optional[int]):
        series = cls.__new__(cls)
        series._terms = {
            k: c
            for k, c in sorted(terms.items())
            if c != 0 and (order is None or k <= order)
        }
        series._order = order
        return series

    @classmethod
    def constant(cls, value) -> "LaurentSeries":
        return cls([value])

    @classmethod
    def monomial(cls, coefficient, degree: int) -> "LaurentSeries":
        """``coefficient * w**degree``; ``monomial(1, -1)`` is v itself."""
        return cls([coefficient], lowest_degree=degree)

    @classmethod
    def from_polynomial_in_v(cls, coefficients: Iterable) -> "LaurentSeries":
        """Exact series of ``sum_j coefficients[j] * v**j``."""
        return cls._from_terms(
            {-j: as_scalar(c) for j, c in enumerate(coefficients)}, None
        )

    @property
    def exact(self) -> bool:
        return self._order is None

    @property
    def truncation_order(self) -> int:
        """Highest known degree. Exact series report their highest stored degree."""
        if self._order is not None:
            return self._order
        return max(self._terms, default=0)

    @property
    def lowest_degree(self) -> int:
        if self._terms:
            return next(iter(self._terms))
        return self.truncation_order if self._order is not None else 0

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return not self._terms

    @property
    def leading_coefficient(self):
        if not self._terms:
            return Fraction(0)
        return self._terms[self.lowest_degree]

    @property
    def coefficients(self) -> Tuple:
        """Coefficients from ``lowest_degree`` through the last stored degree."""
        if not self._terms:
            return ()
        low, high = self.lowest_degree, max(self._terms)
        return tuple(self._terms.get(k, Fraction(0)) for k in range(low, high + 1))

    def coefficient(self, degree: int):
        if self._order is not None and degree > self._order:
            raise TruncationError(
                f"Coefficient of w^{degree} is beyond the truncation order "
                f"{self._order}."
            )
        return self._terms.get(degree, Fraction(0))

    def terms(self) -> Dict[int, object]:
        return dict(self._terms)

    def _effective_order(self) -> float:
        return math.inf if self._order is None else self._order

    def valuation_bound(self) -> float:
        """Lower bound for the degree of the first nonzero coefficient."""
        if self._terms:
            return self.lowest_degree
        return math.inf if self._order is None else self._order + 1

    # Arithmetic ---------------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentSeries):
            return other
        if is_exact_scalar(other):
            return LaurentSeries.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = _finite_or_none(min(self._effective_order(), other._effective_order()))
        terms = dict(self._terms)
        for degree, coefficient in other._terms.items():
            terms[degree] = terms.get(degree, 0) + coefficient
        return LaurentSeries._from_terms(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._from_terms(
            {k: -c for k, c in self._terms.items()}, self._order
        )

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if is_exact_scalar(other):
            return LaurentSeries._from_terms(
                {k: c * other for k, c in self._terms.items()}, self._order
            )
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = _finite_or_none(
            min(
                self._effective_order() + other.valuation_bound(),
                other._effective_order() + self.valuation_bound(),
            )
        )
        terms = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                degree = k1 + k2
                if order is not None and degree > order:
                    continue
                terms[degree] = terms.get(degree, 0) + c1 * c2
        return LaurentSeries._from_terms(terms, order)

    __rmul__ = __mul__

    def inverse(self, precision: Optional[int] = None) -> "LaurentSeries":
        """Multiplicative inverse.

        Args:
            precision (int, optional): Number of coefficients after the leading one to
                compute when the inverse does not terminate. Defaults to the relative
                precision of the input, or ``DEFAULT_ORDER`` for exact inputs.

        Returns:
            LaurentSeries: The inverse.

        """
        if self.is_zero():
            raise ZeroDivisorError("Division by the zero series.")
        low = self.lowest_degree
        lead = self.leading_coefficient
        if self.exact and len(self._terms) == 1:
            return LaurentSeries.monomial(1 / lead, -low)
        if precision is None:
            precision = DEFAULT_ORDER if self.exact else self._order - low
        elif not self.exact:
            precision = min(precision, self._order - low)

        inv_lead = 1 / lead
        result = [inv_lead]
        for k in range(1, precision + 1):
            acc = 0
            for j in range(1, k + 1):
                coefficient = self._terms.get(low + j)
                if coefficient is not None:
                    acc = acc + coefficient * result[k - j]
            result.append(-inv_lead * acc)
        return LaurentSeries._from_terms(
            {-low + k: c for k, c in enumerate(result)}, -low + precision
        )

    def __truediv__(self, other):
        if is_exact_scalar(other):
            if other == 0:
                raise ZeroDivisorError("Division by the zero series.")
            return self * (1 / as_scalar(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        precision = None
        if other.exact and not self.exact:
            precision = max(
                DEFAULT_ORDER, self._order - int(self.valuation_bound())
            )
        return self * other.inverse(precision=precision)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = LaurentSeries.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    # Order --------------------------------------------------------------------------

    def sign(self) -> int:
        """Eventual sign as v grows; raises if all known coefficients vanish."""
        if self.is_zero():
            if self.exact:
                return 0
            raise TruncationError(
                f"Sign undecidable: all coefficients through w^{self._order} vanish."
            )
        return exact_sign(self.leading_coefficient)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    def __hash__(self):
        return hash((tuple(self._terms.items()), self._order))

    def _decided(self, other) -> Order:
        outcome = compare_order(self, other)
        if outcome is Order.INDETERMINATE:
            raise TruncationError(
                "Comparison undecidable within the known truncation order."
            )
        return outcome

    def __lt__(self, other):
        return self._decided(other) is Order.LT

    def __le__(self, other):
        return self._decided(other) is not Order.GT

    def __gt__(self, other):
        return self._decided(other) is Order.GT

    def __ge__(self, other):
        return self._decided(other) is not Order.LT

    # Utilities ----------------------------------------------------------------------

    def truncate(self, order: int) -> "LaurentSeries":
        if self._order is not None:
            order = min(order, self._order)
        return LaurentSeries._from_terms(self._terms, order)

    def derivative_v(self) -> "LaurentSeries":
        """Derivative with respect to v; d/dv w^k = -k w^(k+1)."""
        terms = {k + 1: -k * c for k, c in self._terms.items() if k != 0}
        order = None if self._order is None else self._order + 1
        return LaurentSeries._from_terms(terms, order)

    def eval_at(self, v) -> Tuple[float, float]:
        """Evaluate the retained terms at ``v``.

        Args:
            v (int, Fraction or float): Positive evaluation point.

        Returns:
            tuple: The value and a crude tail bound, the magnitude of the last retained
                nonzero term (zero for exact series).

        """
        if v <= 0:
            raise ValueError("Series are evaluated at v > 0 only.")
        w = 1 / float(v)
        value = 0.0
        last_term = 0.0
        for degree, coefficient in self._terms.items():
            term = float(coefficient) * w**degree
            value += term
            last_term = term
        if self.exact:
            return value, 0.0
        if not self._terms:
            return value, w ** (self._order + 1)
        return value, abs(last_term)

    def eval_array(self, v):
        """Vectorized float evaluation over a numpy array of positive v values."""
        w = 1 / np.asarray(v, dtype=float)
        value = np.zeros_like(w)
        for degree, coefficient in self._terms.items():
            value = value + float(coefficient) * w**degree
        return value

    def to_dict(self) -> dict:
        return {
            "lowest_degree": self.lowest_degree,
            "coefficients": [format_scalar(c) for c in self.coefficients],
            "truncation_order": self.truncation_order,
            "exact": self.exact,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LaurentSeries":
        order = None if data.get("exact", False) else data["truncation_order"]
        return cls(data["coefficients"], data["lowest_degree"], order)

    def __repr__(self) -> str:
        if not self._terms:
            body = "0"
        else:
            body = " + ".join(
                f"({format_scalar(c)})*w^{k}" for k, c in self._terms.items()
            )
        tail = "" if self.exact else f" + O(w^{self._order + 1})"
        return f"LaurentSeries({body}{tail})"


def _finite_or_none(order):
    return None if order == math.inf else int(order)


W = LaurentSeries.monomial(1, 1)
V = LaurentSeries.monomial(1, -1)


def as_series(value) -> LaurentSeries:
    if isinstance(value, LaurentSeries):
        return value
    return LaurentSeries.constant(value)


def compare_order(f, g) -> Order:
    """Compare two series in the eventual order as v grows.

    Args:
        f (LaurentSeries or scalar): Left operand.
        g (LaurentSeries or scalar): Right operand.

    Returns:
        Order: ``LT``/``GT`` from the sign of the leading coefficient of ``f - g``,
            ``EQ`` when the difference is exactly zero and ``INDETERMINATE`` when all
            known coefficients vanish but one of the inputs is truncated.

    """
    difference = as_series(f) - as_series(g)
    if not difference.is_zero():
        return Order.from_sign(exact_sign(difference.leading_coefficient))
    if difference.exact:
        return Order.EQ
    LOGGER.warning(
        "Comparison indeterminate: difference vanishes through w^%s.",
        difference.truncation_order,
    )
    return Order.INDETERMINATE


def theta_of(f) -> Tuple[int, Optional[int]]:
    """Return ``(sign, m)`` with f = Θ(w^m); the zero series gives ``(0, None)``."""
    f = as_series(f)
    if f.is_zero():
        return 0, None
    return exact_sign(f.leading_coefficient), f.lowest_degree


def sqrt_series(f, precision: Optional[int] = None) -> LaurentSeries:
    """Positive square root of a series with even leading degree.

    The leading coefficient of the root is the exact positive root of the leading
    coefficient of ``f``, a quadratic number when it is not a rational square. For an
    exact input the root is returned exactly whenever it is a polynomial.

    Args:
        f (LaurentSeries): Radicand.
        precision (int, optional): Number of coefficients after the leading one.

    Returns:
        LaurentSeries: The root ``g`` with ``g * g == f`` through the truncation order.

    """
    f = as_series(f)
    if f.is_zero():
        if f.exact:
            return LaurentSeries()
        raise TruncationError("Square root of an unknown series.")
    low = f.lowest_degree
    lead = f.leading_coefficient
    if low % 2:
        raise ValueError(f"Leading degree {low} of the radicand is odd.")
    if exact_sign(lead) <= 0:
        raise ValueError("Leading coefficient of the radicand must be positive.")
    if isinstance(lead, QuadraticNumber):
        raise ExtensionError("Square root of an irrational leading coefficient.")

    if precision is None:
        precision = DEFAULT_ORDER if f.exact else f.truncation_order - low
    elif not f.exact:
        precision = min(precision, f.truncation_order - low)

    # f = lead * w^low * (1 + t) and sqrt(1 + t) = sum s_k w^k
    normalized = [f.coefficient(low + k) / lead for k in range(precision + 1)]
    root = [Fraction(1)]
    for k in range(1, precision + 1):
        acc = normalized[k]
        for i in range(1, k):
            acc = acc - root[i] * root[k - i]
        root.append(acc / 2)

    scale = sqrt_exact(lead)
    half = low // 2
    terms = {half + k: scale * c for k, c in enumerate(root)}

    if f.exact:
        span = max(f.terms()) - low
        candidate = LaurentSeries._from_terms(
            {k: c for k, c in terms.items() if k - half <= span // 2}, None
        )
        if candidate * candidate == f:
            return candidate
    return LaurentSeries._from_terms(terms, half + precision)
