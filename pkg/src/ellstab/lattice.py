"""The numerical Chern lattice of a Weierstraß elliptic surface.

Divisors are written in the span of the section Θ and the fiber class f with
``Θ² = -e``, ``Θ·f = 1`` and ``f² = 0``. A Chern character is stored as
``(n, x, y, xi2, s)``: rank, the Θ- and f-coefficients of ch₁, the self-intersection
of the part of ch₁ orthogonal to Θ and f, and ch₂.

The residual part of ch₁ only enters through its square, so negating a class keeps
``xi2`` and adding two classes is only defined when both have ``xi2 = 0``.

"""

from fractions import Fraction
from typing import NamedTuple, Optional

from ellstab.exceptions import ConfigurationError
from ellstab.series.quadratic import as_scalar


class SurfaceGeometry(NamedTuple):
    """Ambient data of the surface.

    Attributes:
        e: The number ``-Θ²``, non-negative.
        m: Threshold with ``Θ + kf`` ample for all ``k >= m``; ``m > e``.
        kx_f: f-coefficient of the canonical class ``K_X``; ``None`` means ``e``.

    """

    e: Fraction
    m: Fraction
    kx_f: Optional[Fraction] = None

    @property
    def canonical_f(self) -> Fraction:
        return self.e if self.kx_f is None else self.kx_f


def surface_geometry(e, m, kx_f=None) -> SurfaceGeometry:
    """Build a validated :class:`SurfaceGeometry` from rationals or their strings."""
    e, m = as_scalar(e), as_scalar(m)
    if e < 0:
        raise ConfigurationError(f"e >= 0 violated: e = {e}.")
    if not m > e:
        raise ConfigurationError(f"m > e violated: m = {m}, e = {e}.")
    if kx_f is not None:
        kx_f = as_scalar(kx_f)
    return SurfaceGeometry(e=e, m=m, kx_f=kx_f)


class DivisorRF(NamedTuple):
    """The divisor ``p*Θ + q*f``; coefficients may be exact numbers or series."""

    p: object
    q: object

    def __add__(self, other):
        return DivisorRF(self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        return DivisorRF(self.p - other.p, self.q - other.q)

    def __neg__(self):
        return DivisorRF(-self.p, -self.q)

    def __mul__(self, scalar):
        return DivisorRF(self.p * scalar, self.q * scalar)

    __rmul__ = __mul__


ZERO_DIVISOR = DivisorRF(Fraction(0), Fraction(0))
THETA = DivisorRF(Fraction(1), Fraction(0))
FIBER = DivisorRF(Fraction(0), Fraction(1))


def divisor(p, q) -> DivisorRF:
    return DivisorRF(as_scalar(p), as_scalar(q))


def fiber_divisor(q) -> DivisorRF:
    """The B-field ``q*f``."""
    return DivisorRF(Fraction(0), as_scalar(q))


class ChernClass(NamedTuple):
    n: object
    x: object
    y: object
    xi2: object
    s: object

    def __add__(self, other):
        if self.xi2 != 0 or other.xi2 != 0:
            raise ValueError(
                "Classes with a residual ch1 component cannot be added: the cross "
                "term of the residuals is unknown."
            )
        return ChernClass(
            self.n + other.n,
            self.x + other.x,
            self.y + other.y,
            self.xi2,
            self.s + other.s,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return shift(self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if self.xi2 != 0 and k not in (1, -1):
            raise ValueError("Only units act on classes with a residual component.")
        return ChernClass(self.n * k, self.x * k, self.y * k, self.xi2, self.s * k)

    __rmul__ = __mul__


def chern_class(n=0, x=0, y=0, xi2=0, s=0) -> ChernClass:
    """Build a :class:`ChernClass` with exact entries from numbers or strings."""
    return ChernClass(*(as_scalar(value) for value in (n, x, y, xi2, s)))


ZERO_CLASS = chern_class()
SKYSCRAPER = chern_class(s=1)
STRUCTURE_SHEAF = chern_class(n=1)


def generators():
    """The five coordinate generators of the lattice."""
    return [
        chern_class(n=1),
        chern_class(x=1),
        chern_class(y=1),
        chern_class(xi2=1),
        chern_class(s=1),
    ]


def pair(d1: DivisorRF, d2: DivisorRF, geom: SurfaceGeometry):
    """Intersection number of two divisors in the span of Θ and f."""
    return -geom.e * d1.p * d2.p + d1.p * d2.q + d2.p * d1.q


def theta_degree(gamma: ChernClass, geom: SurfaceGeometry):
    """``c = Θ·ch₁``."""
    return -geom.e * gamma.x + gamma.y


def fiber_degree(gamma: ChernClass):
    """``d = f·ch₁``."""
    return gamma.x


def divisor_degree(divisor_: DivisorRF, gamma: ChernClass, geom: SurfaceGeometry):
    """``D·ch₁`` for ``D = pΘ + qf``."""
    return divisor_.p * theta_degree(gamma, geom) + divisor_.q * fiber_degree(gamma)


def ch1_square(gamma: ChernClass, geom: SurfaceGeometry):
    return -geom.e * gamma.x * gamma.x + 2 * gamma.x * gamma.y + gamma.xi2


def twist(gamma: ChernClass, b_field: DivisorRF, geom: SurfaceGeometry) -> ChernClass:
    """The twisted Chern character ``e^{-B} ch``.

    Args:
        gamma (ChernClass): Class to twist.
        b_field (DivisorRF): The B-field.
        geom (SurfaceGeometry): Surface data.

    Returns:
        ChernClass: ``(n, ch₁ - nB, ch₂ - B·ch₁ + n B²/2)``.

    """
    n = gamma.n
    s = (
        gamma.s
        - divisor_degree(b_field, gamma, geom)
        + n * pair(b_field, b_field, geom) / 2
    )
    return ChernClass(n, gamma.x - n * b_field.p, gamma.y - n * b_field.q, gamma.xi2, s)


def discriminant(gamma: ChernClass, geom: SurfaceGeometry):
    """``Δ = ch₁² - 2 ch₀ ch₂``."""
    return ch1_square(gamma, geom) - 2 * gamma.n * gamma.s


def shift(gamma: ChernClass) -> ChernClass:
    """Class of ``E[1]``; the residual square is unchanged."""
    return ChernClass(-gamma.n, -gamma.x, -gamma.y, gamma.xi2, -gamma.s)


def is_integral(gamma: ChernClass) -> bool:
    """Integrality of a class of an honest complex: n, x, y integral and 2s integral."""
    return all(Fraction(v).denominator == 1 for v in (gamma.n, gamma.x, gamma.y)) and (
        Fraction(2 * gamma.s).denominator == 1
    )


def bogomolov_ray_bound(gamma: ChernClass, geom: SurfaceGeometry) -> bool:
    """Bogomolov inequality ``Δ >= 0`` for semistable classes of the ray family."""
    return discriminant(gamma, geom) >= 0


def bogomolov_hyperbola_bound(gamma: ChernClass, geom: SurfaceGeometry) -> bool:
    """The bound ``Δ >= e(ch₀² - (f·ch₁)²)`` transported through the transform."""
    d = fiber_degree(gamma)
    return discriminant(gamma, geom) >= geom.e * (gamma.n * gamma.n - d * d)
