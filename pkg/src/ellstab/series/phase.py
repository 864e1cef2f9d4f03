"""Polynomial phase functions and their total order.

A phase function is stored as a nonzero witness ``z`` (a complex series) together
with an integer number of turns. Its limit value is ``Arg(lead)/π + 2*turns`` where
``Arg`` is the principal argument in ``(-π, π]`` of the leading coefficient of ``z``.
Limit values are returned as Fractions when they lie in ``¼ℤ`` and as floats
otherwise; all comparisons are carried out exactly on the witnesses.

"""

import math
from fractions import Fraction
from typing import NamedTuple, Tuple, Union

from ellstab.exceptions import PhaseBranchError, TruncationError
from ellstab.series.complex_series import ComplexLaurentSeries
from ellstab.series.laurent import Order, compare_order
from ellstab.series.quadratic import exact_sign

Number = Union[Fraction, float]


class Direction(NamedTuple):
    """A nonzero exact vector ``(re, im)`` in the plane."""

    re: object
    im: object


def upper_half(direction: Direction) -> bool:
    """True if the principal argument of ``direction`` lies in ``(0, π]``."""
    sign_im = exact_sign(direction.im)
    return sign_im > 0 or (sign_im == 0 and exact_sign(direction.re) < 0)


def compare_directions(d1: Direction, d2: Direction) -> int:
    """Exact comparison of the principal arguments of two nonzero directions."""
    h1, h2 = upper_half(d1), upper_half(d2)
    if h1 != h2:
        return 1 if h1 else -1
    # Within one half plane arguments differ by less than π.
    return exact_sign(d1.im * d2.re - d1.re * d2.im)


def principal_phase(direction: Direction) -> Number:
    """Principal argument divided by π, in ``(-1, 1]``."""
    sign_re, sign_im = exact_sign(direction.re), exact_sign(direction.im)
    if sign_re == 0 and sign_im == 0:
        raise ValueError("The zero vector has no phase.")
    if sign_im == 0:
        return Fraction(0) if sign_re > 0 else Fraction(1)
    if sign_re == 0:
        return Fraction(1, 2) * sign_im
    if exact_sign(abs(direction.re) - abs(direction.im)) == 0:
        quarter = Fraction(1, 4) if sign_re > 0 else Fraction(3, 4)
        return quarter * sign_im
    return math.atan2(float(direction.im), float(direction.re)) / math.pi


class PhaseFunction:
    """Germ of a continuous phase ``φ(v)`` with ``z(v) ∈ ℝ_{>0} e^{iπφ(v)}``."""

    __slots__ = ("witness", "turns")

    def __init__(self, witness: ComplexLaurentSeries, turns: int = 0):
        if not isinstance(witness, ComplexLaurentSeries):
            witness = ComplexLaurentSeries(*witness)
        if witness.is_zero():
            raise ValueError("The witness of a phase function must be nonzero.")
        self.witness = witness
        self.turns = int(turns)

    @property
    def direction(self) -> Direction:
        return Direction(*self.witness.leading_coefficient)

    @property
    def principal(self) -> Number:
        return principal_phase(self.direction)

    @property
    def limit_value(self) -> Number:
        return self.principal + 2 * self.turns

    def shifted(self, n: int) -> "PhaseFunction":
        """The phase function ``φ + n`` of ``(-1)^n z``."""
        phase = self
        step = 1 if n >= 0 else -1
        for _ in range(abs(n)):
            in_upper = upper_half(phase.direction)
            if step > 0:
                turns = phase.turns + 1 if in_upper else phase.turns
            else:
                turns = phase.turns if in_upper else phase.turns - 1
            phase = PhaseFunction(-phase.witness, turns)
        return phase

    def shifted_half(self, step: int = -1) -> "PhaseFunction":
        """The phase function ``φ + step/2`` of ``i^step z`` for ``step = ±1``."""
        witness = self.witness
        sign_re = exact_sign(self.direction.re)
        sign_im = exact_sign(self.direction.im)
        if step == -1:
            # Principal values in (-1, -1/2] wrap around to (1/2, 1].
            wraps = sign_im < 0 and sign_re <= 0
            rotated = ComplexLaurentSeries(witness.im, -witness.re)
            return PhaseFunction(rotated, self.turns - 1 if wraps else self.turns)
        if step == 1:
            wraps = sign_re < 0 and sign_im >= 0
            rotated = ComplexLaurentSeries(-witness.im, witness.re)
            return PhaseFunction(rotated, self.turns + 1 if wraps else self.turns)
        raise ValueError(f"Half-turn step must be 1 or -1, got {step}.")

    def __add__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.shifted(n)

    def __sub__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.shifted(-n)

    def __lt__(self, other):
        return compare_phase(self, other) is Order.LT

    def __le__(self, other):
        return compare_phase(self, other) is not Order.GT

    def __gt__(self, other):
        return compare_phase(self, other) is Order.GT

    def __ge__(self, other):
        return compare_phase(self, other) is not Order.LT

    def eval_at(self, v) -> Tuple[float, float]:
        """Numeric phase at ``v`` on the branch closest to the limit value."""
        z, tail = self.witness.eval_at(v)
        raw = math.atan2(z.imag, z.real) / math.pi
        limit = float(self.limit_value)
        return raw + 2 * round((limit - raw) / 2), tail

    def to_dict(self) -> dict:
        limit = self.limit_value
        return {
            "witness": self.witness.to_dict(),
            "turns": self.turns,
            "limit_value": str(limit) if isinstance(limit, Fraction) else limit,
        }

    def __repr__(self) -> str:
        return f"PhaseFunction(limit={self.limit_value}, witness={self.witness!r})"


def _turns_for_branch(principal: Number, lower) -> int:
    """Least ``t`` with ``principal + 2t > lower``."""
    if isinstance(principal, Fraction) and not isinstance(lower, float):
        return math.floor((Fraction(lower) - principal) / 2) + 1
    return math.floor((float(lower) - float(principal)) / 2) + 1


def phase_of(z, branch: Tuple = (0, 2)) -> PhaseFunction:
    """Phase function of ``z`` with limit value in the half-open ``branch``.

    Args:
        z (ComplexLaurentSeries or tuple): Nonzero witness, or its ``(re, im)``
            parts.
        branch (tuple): Interval ``(a, b]`` with ``0 < b - a <= 2``.

    Returns:
        PhaseFunction: The phase function whose limit value lies in the branch.

    Raises:
        PhaseBranchError: If no admissible limit value lies in the branch.

    """
    if not isinstance(z, ComplexLaurentSeries):
        z = ComplexLaurentSeries(*z)
    lower, upper = branch
    if not 0 < upper - lower <= 2:
        raise ValueError(f"Branch {branch} must have length in (0, 2].")
    if z.is_zero():
        if z.exact:
            raise ValueError("The zero series has no phase.")
        raise TruncationError("Phase of a series whose known coefficients vanish.")
    principal = principal_phase(Direction(*z.leading_coefficient))
    turns = _turns_for_branch(principal, lower)
    while compare_limit(PhaseFunction(z, turns), lower) <= 0:
        turns += 1
    while compare_limit(PhaseFunction(z, turns - 1), lower) > 0:
        turns -= 1
    phase = PhaseFunction(z, turns)
    if compare_limit(phase, upper) > 0:
        raise PhaseBranchError(
            f"No phase of the leading direction lies in ({lower}, {upper}]."
        )
    return phase


def in_branch(phase: PhaseFunction, branch: Tuple) -> bool:
    lower, upper = branch
    return compare_limit(phase, lower) > 0 and compare_limit(phase, upper) <= 0


# Directions of the angles kπ/4, keyed by k in (-4, 4].
_QUARTER_DIRECTIONS = {
    -3: (-1, -1),
    -2: (0, -1),
    -1: (1, -1),
    0: (1, 0),
    1: (1, 1),
    2: (0, 1),
    3: (-1, 1),
    4: (-1, 0),
}


def _quarter_boundary(bound):
    """Turns and direction of the angle ``π·bound``, or ``None`` outside ``¼ℤ``."""
    try:
        bound = Fraction(bound)
    except (TypeError, ValueError, OverflowError):
        return None
    if (4 * bound).denominator != 1:
        return None
    turns = math.ceil((bound - 1) / 2)
    re, im = _QUARTER_DIRECTIONS[int(4 * (bound - 2 * turns))]
    return turns, Direction(Fraction(re), Fraction(im))


def compare_limit(phase: PhaseFunction, bound) -> int:
    """Sign of ``limit_value - bound``.

    Exact for bounds in ``¼ℤ``, which covers the default branches and the anchors of
    the standard lifts. Other bounds are compared in floating point.

    """
    boundary = _quarter_boundary(bound)
    if boundary is None:
        difference = float(phase.limit_value) - float(bound)
        return (difference > 0) - (difference < 0)
    turns, direction = boundary
    if phase.turns != turns:
        return 1 if phase.turns > turns else -1
    return compare_directions(phase.direction, direction)


def compare_phase(phi1: PhaseFunction, phi2: PhaseFunction) -> Order:
    """Compare two phase functions in the eventual order.

    Limit values are compared first. For equal limits the sign of the imaginary part of
    ``witness1 * conj(witness2)`` decides, which is the sign of the first non-real
    coefficient of the normalized quotient of the witnesses.

    Returns:
        Order: ``LT``, ``EQ`` or ``GT``.

    Raises:
        TruncationError: If the known coefficients cannot separate the phases.

    """
    if phi1.turns != phi2.turns:
        return Order.LT if phi1.turns < phi2.turns else Order.GT
    by_direction = compare_directions(phi1.direction, phi2.direction)
    if by_direction:
        return Order.from_sign(by_direction)
    w1, w2 = phi1.witness, phi2.witness
    cross = w1.im * w2.re - w1.re * w2.im
    outcome = compare_order(cross, 0)
    if outcome is Order.INDETERMINATE:
        raise TruncationError(
            "Phases agree on all known coefficients of truncated witnesses."
        )
    return outcome
