"""Exact scalars: rationals and one quadratic extension.

All exact coefficients in ellstab are either ``fractions.Fraction`` or a
:class:`QuadraticNumber` ``a + b*sqrt(r)`` with rational ``a, b`` and a squarefree
integer ``r > 1``. Arithmetic between quadratic numbers with different radicands is
refused with :class:`~ellstab.exceptions.ExtensionError`.

"""

import logging
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from sympy import factorint

from ellstab.exceptions import ExtensionError

LOGGER = logging.getLogger(__name__)

FLOAT_DENOMINATOR_LIMIT = 10**12

_QUADRATIC_PATTERN = re.compile(
    r"^(?P<a>[-+]?\d+(?:/\d+)?(?=[-+]))?"
    r"(?P<b>[-+]?(?:\d+(?:/\d+)?\*?)?)sqrt\((?P<r>\d+)\)$"
)


class QuadraticNumber:
    """The number ``a + b*sqrt(r)``.

    Instances are immutable. Use :func:`quadratic` to build values; it returns a plain
    ``Fraction`` whenever ``b == 0``.

    """

    __slots__ = ("_a", "_b", "_r")

    def __init__(self, a, b, radicand: int):
        if radicand < 2:
            raise ValueError("radicand must be an integer larger than one.")
        self._a = Fraction(a)
        self._b = Fraction(b)
        self._r = int(radicand)

    @property
    def rational_part(self) -> Fraction:
        return self._a

    @property
    def irrational_part(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int:
        return self._r

    def conjugate(self):
        return quadratic(self._a, -self._b, self._r)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._r

    def sign(self) -> int:
        a, b = self._a, self._b
        if a >= 0 and b >= 0:
            return 0 if (a == 0 and b == 0) else 1
        if a <= 0 and b <= 0:
            return -1
        # Opposite signs: compare a^2 with b^2 r.
        diff = a * a - b * b * self._r
        return _fraction_sign(diff) if a > 0 else -_fraction_sign(diff)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other._r != self._r:
                raise ExtensionError(
                    f"Cannot combine sqrt({self._r}) and sqrt({other._r}) in one "
                    "quadratic extension."
                )
            return other._a, other._b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        return quadratic(self._a + parts[0], self._b + parts[1], self._r)

    __radd__ = __add__

    def __neg__(self):
        return quadratic(-self._a, -self._b, self._r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        return quadratic(self._a - parts[0], self._b - parts[1], self._r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        parts = self._coerce(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return quadratic(
            self._a * c + self._b * d * self._r, self._a * d + self._b * c, self._r
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return quadratic(self._a / norm, -self._b / norm, self._r)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, QuadraticNumber):
            self._coerce(other)
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return quadratic(self._a / other, self._b / other, self._r)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Rational)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Fraction(1)
        for _ in range(exponent):
            result = self * result
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(self._r)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self._a, self._b, self._r) == (other._a, other._b, other._r)
        if isinstance(other, (int, Rational)):
            # Normalized quadratic numbers always have b != 0.
            return self._b == 0 and self._a == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self._a, self._b, self._r))

    def _compare(self, other) -> int:
        if isinstance(other, float):
            return _float_sign(float(self) - other)
        return exact_sign(self - other)

    def __lt__(self, other):
        return self._compare(other) < 0

    def __le__(self, other):
        return self._compare(other) <= 0

    def __gt__(self, other):
        return self._compare(other) > 0

    def __ge__(self, other):
        return self._compare(other) >= 0

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"QuadraticNumber({self._a!s}, {self._b!s}, {self._r})"


Scalar = Union[Fraction, QuadraticNumber]


def quadratic(a, b, radicand: int) -> Scalar:
    """Build ``a + b*sqrt(radicand)``, collapsing to a ``Fraction`` when possible."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return a
    square_part, free_part = _squarefree_split(int(radicand))
    if free_part == 1:
        return a + b * square_part
    return QuadraticNumber(a, b * square_part, free_part)


def sqrt_exact(x) -> Scalar:
    """Return the positive square root of a non-negative rational exactly.

    Args:
        x (int or Fraction): Non-negative rational number.

    Returns:
        Fraction or QuadraticNumber: ``sqrt(x)``.

    """
    if isinstance(x, QuadraticNumber):
        raise ExtensionError(
            "Square roots of irrational quadratic numbers leave the quadratic "
            "extension."
        )
    x = Fraction(x)
    if x < 0:
        raise ValueError("Cannot take the square root of a negative number.")
    # sqrt(p/q) = sqrt(p*q)/q
    square_part, free_part = _squarefree_split(x.numerator * x.denominator)
    if free_part == 1:
        return Fraction(square_part, x.denominator)
    return QuadraticNumber(0, Fraction(square_part, x.denominator), free_part)


def exact_sign(x) -> int:
    """Sign of an exact scalar, ``-1``, ``0`` or ``1``."""
    if isinstance(x, QuadraticNumber):
        return x.sign()
    if isinstance(x, float):
        return _float_sign(x)
    return _fraction_sign(Fraction(x))


def as_scalar(value) -> Scalar:
    """Convert ints, Fractions, quadratic numbers and their strings to scalars."""
    if isinstance(value, QuadraticNumber):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars.")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        return _rational_from_float(value)
    raise TypeError(f"Cannot interpret {value!r} as an exact scalar.")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or ``"a+b*sqrt(r)"`` strings."""
    text = "".join(text.split())
    if "sqrt" not in text:
        return Fraction(text)
    match = _QUADRATIC_PATTERN.match(text)
    if match is None:
        raise ValueError(f"Malformed quadratic number {text!r}.")
    a = Fraction(match.group("a")) if match.group("a") else Fraction(0)
    b_text = (match.group("b") or "").rstrip("*")
    if b_text in ("", "+"):
        b = Fraction(1)
    elif b_text == "-":
        b = Fraction(-1)
    else:
        b = Fraction(b_text)
    return quadratic(a, b, int(match.group("r")))


def format_scalar(value) -> str:
    """Canonical string of an exact scalar (``str(Fraction)`` or ``a+b*sqrt(r)``)."""
    if not isinstance(value, QuadraticNumber):
        return str(Fraction(value))
    a, b, r = value.rational_part, value.irrational_part, value.radicand
    b_abs = abs(b)
    irrational = f"sqrt({r})" if b_abs == 1 else f"{b_abs}*sqrt({r})"
    if a == 0:
        return irrational if b > 0 else f"-{irrational}"
    return f"{a}{'+' if b > 0 else '-'}{irrational}"


def _squarefree_split(n: int):
    """Write ``n = s**2 * r`` with ``r`` squarefree and return ``(s, r)``."""
    if n == 0:
        return 0, 1
    square_part, free_part = 1, 1
    for prime, power in factorint(n).items():
        square_part *= prime ** (power // 2)
        if power % 2:
            free_part *= prime
    return square_part, free_part


def _fraction_sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _float_sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


def _rational_from_float(value: float) -> Fraction:
    """Closest fraction with denominator at most ``FLOAT_DENOMINATOR_LIMIT``."""
    if not math.isfinite(value):
        raise ValueError(f"Cannot interpret {value!r} as an exact scalar.")
    binary = Fraction(value)
    rational = binary.limit_denominator(FLOAT_DENOMINATOR_LIMIT)
    if rational != binary:
        LOGGER.debug("Float %r read as the fraction %s.", value, rational)
    return rational
