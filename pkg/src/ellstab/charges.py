"""Central charges, slopes, twisted Euler characteristics and weight functions.

All charge functions are generic over the scalar type of their parameters: exact
rationals, quadratic numbers, Laurent series, floats or numpy/jax arrays. Values are
returned as :class:`Charge` pairs so that exact and series values never pass through
Python ``complex``.

"""

import enum
import math
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from ellstab.exceptions import ConfigurationError, KernelClassError, PhaseBranchError
from ellstab.lattice import (
    FIBER,
    THETA,
    ChernClass,
    DivisorRF,
    SurfaceGeometry,
    divisor_degree,
    fiber_degree,
    pair,
    theta_degree,
    twist,
)
from ellstab.series.complex_series import ComplexLaurentSeries
from ellstab.series.laurent import LaurentSeries
from ellstab.series.phase import PhaseFunction, in_branch, phase_of
from ellstab.series.quadratic import as_scalar, exact_sign

INFINITY = math.inf


class Charge(NamedTuple):
    """Value ``re + i*im`` of a central charge."""

    re: object
    im: object

    def __add__(self, other):
        return Charge(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Charge(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return Charge(-self.re, -self.im)

    def times_minus_i(self) -> "Charge":
        return Charge(self.im, -self.re)

    def is_zero(self) -> bool:
        return _is_zero(self.re) and _is_zero(self.im)

    def to_series(self) -> ComplexLaurentSeries:
        return ComplexLaurentSeries(self.re, self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


class ChargeFamily(enum.Enum):
    OMEGA_B = "omegaB"
    AB_B = "abB"
    AB_B_PRIME = "abBprime"
    LARGE_VOLUME_RAY = "ray"
    HYPERBOLA_ZL = "hyperbola"


DEFAULT_BRANCHES = {
    ChargeFamily.OMEGA_B: (Fraction(0), Fraction(1)),
    ChargeFamily.AB_B: (Fraction(0), Fraction(1)),
    ChargeFamily.AB_B_PRIME: (Fraction(0), Fraction(1)),
    ChargeFamily.LARGE_VOLUME_RAY: (Fraction(1, 4), Fraction(5, 4)),
    ChargeFamily.HYPERBOLA_ZL: (Fraction(0), Fraction(1)),
}


class ChargeSpec(NamedTuple):
    """A member of one of the central-charge families.

    Attributes:
        family: The family.
        params: ``{"omega": DivisorRF}`` for OMEGA_B, ``{"a", "b"}`` for the AB
            families, ``{"alpha", "beta"}`` for the ray and ``{"u", "v"}`` for the
            hyperbola family. Values may be exact numbers or series.
        b_field: The B-field.
        geom: Surface data; ``geom.m`` enters the ray and hyperbola divisors.
        branch: Branch interval ``(a, a+1]`` of phases; family default if ``None``.

    """

    family: ChargeFamily
    params: dict
    b_field: DivisorRF
    geom: SurfaceGeometry
    branch: Optional[Tuple] = None

    @property
    def phase_branch(self) -> Tuple:
        return DEFAULT_BRANCHES[self.family] if self.branch is None else self.branch


def omega_tilde(m, alpha) -> DivisorRF:
    """``ω̃ = (1/α)(Θ + mf) + f``."""
    alpha = as_scalar(alpha)
    return DivisorRF(1 / alpha, as_scalar(m) / alpha + 1)


def omega_bar(m, alpha, beta) -> DivisorRF:
    """``ω̄ = β ω̃ = (β/α)(Θ + (m + α)f)``."""
    return omega_tilde(m, alpha) * beta


def omega_hyperbola(m, u, v) -> DivisorRF:
    """``ω = u(Θ + mf) + vf``."""
    return DivisorRF(u, u * m + v)


def is_ample(omega: DivisorRF, geom: SurfaceGeometry) -> bool:
    """Ampleness convention ``ω = pΘ + qf`` with ``p > 0`` and ``q >= m p``."""
    margin = omega.q - geom.m * omega.p
    return leading_sign(omega.p) > 0 and leading_sign(margin) >= 0


def z_omega_B(
    gamma: ChernClass,
    omega: DivisorRF,
    b_field: DivisorRF,
    geom: SurfaceGeometry,
    check: bool = True,
) -> Charge:
    """``Z_{ω,B}(E) = -ch₂^B + (ω²/2) ch₀^B + i ω·ch₁^B``.

    Args:
        gamma (ChernClass): The class.
        omega (DivisorRF): Ample class, coefficients exact or series.
        b_field (DivisorRF): The B-field.
        geom (SurfaceGeometry): Surface data.
        check (bool): Validate ampleness of ``omega``.

    Returns:
        Charge: The central charge.

    """
    if check and not is_ample(omega, geom):
        raise ConfigurationError(f"ω = {omega} is not ample for m = {geom.m}.")
    twisted = twist(gamma, b_field, geom)
    re = -twisted.s + pair(omega, omega, geom) / 2 * twisted.n
    im = divisor_degree(omega, twisted, geom)
    return Charge(re, im)


def z_abB(gamma, a, b, b_field, geom, check=True) -> Charge:
    """``Z_{a,b,B}(E) = -ch₂^B + a ch₀^B + i(Θ·ch₁^B + b f·ch₁^B)``."""
    if check and not (leading_sign(a) > 0 and leading_sign(b) > 0):
        raise ConfigurationError(f"a > 0 and b > 0 required, got a = {a}, b = {b}.")
    twisted = twist(gamma, b_field, geom)
    re = -twisted.s + a * twisted.n
    im = theta_degree(twisted, geom) + b * fiber_degree(twisted)
    return Charge(re, im)


def z_abB_prime(gamma, a, b, b_field, geom, check=True) -> Charge:
    """``Z'_{a,b,B}``: ``Z_{a,b,B}`` composed with the matrix ``(1, -f·B; 0, 1)``."""
    charge = z_abB(gamma, a, b, b_field, geom, check=check)
    f_dot_b = pair(FIBER, b_field, geom)
    return Charge(charge.re - f_dot_b * charge.im, charge.im)


def omega_to_ab(omega: DivisorRF, geom: SurfaceGeometry):
    """Coordinates ``(ω²/2, q/p)`` with ``Z_{ω,B} = diag(1, p) Z_{ω²/2, q/p, B}``."""
    return pair(omega, omega, geom) / 2, omega.q / omega.p


def central_charge(gamma: ChernClass, spec: ChargeSpec, check: bool = True) -> Charge:
    params, geom = spec.params, spec.geom
    if spec.family is ChargeFamily.OMEGA_B:
        return z_omega_B(gamma, params["omega"], spec.b_field, geom, check=check)
    if spec.family is ChargeFamily.AB_B:
        return z_abB(gamma, params["a"], params["b"], spec.b_field, geom, check=check)
    if spec.family is ChargeFamily.AB_B_PRIME:
        return z_abB_prime(
            gamma, params["a"], params["b"], spec.b_field, geom, check=check
        )
    if spec.family is ChargeFamily.LARGE_VOLUME_RAY:
        omega = omega_bar(geom.m, params["alpha"], params["beta"])
        return z_omega_B(gamma, omega, spec.b_field, geom, check=check)
    if spec.family is ChargeFamily.HYPERBOLA_ZL:
        omega = omega_hyperbola(geom.m, params["u"], params["v"])
        return z_omega_B(gamma, omega, spec.b_field, geom, check=check)
    raise ValueError(f"Charge family {spec.family} not recognized.")


def mu_omega_B(gamma, omega, b_field, geom):
    """Slope ``ω·ch₁^B / ch₀``, infinite in rank zero."""
    if _is_zero(gamma.n):
        return INFINITY
    twisted = twist(gamma, b_field, geom)
    return divisor_degree(omega, twisted, geom) / gamma.n


def mu_f(gamma: ChernClass):
    """Slope ``f·ch₁ / ch₀``, infinite in rank zero."""
    if _is_zero(gamma.n):
        return INFINITY
    return fiber_degree(gamma) / gamma.n


def mu_star_B(gamma, b_field, geom):
    """Slope ``ch₂^B / f·ch₁`` of a one-dimensional class."""
    if not _is_zero(gamma.n):
        raise ValueError("mu_star_B is defined for classes of rank zero.")
    d = fiber_degree(gamma)
    if _is_zero(d):
        return INFINITY
    return twist(gamma, b_field, geom).s / d


def slope_decomposition(gamma, m, u, v, q, geom):
    """Both sides of ``μ_{ω,B} = u μ_{Θ+mf,B} + v μ_f`` for ``B = qf``."""
    b_field = DivisorRF(Fraction(0), q)
    lhs = mu_omega_B(gamma, omega_hyperbola(m, u, v), b_field, geom)
    if lhs == INFINITY:
        return lhs, INFINITY
    rhs = u * mu_omega_B(gamma, THETA + FIBER * m, b_field, geom) + v * mu_f(gamma)
    return lhs, rhs


def kx_twist_field(l_c1: DivisorRF, geom: SurfaceGeometry) -> DivisorRF:
    """``B̄ = ch₁(L*) + K_X/2`` for ``L`` and ``K_X`` in ℝf."""
    if not _is_zero(l_c1.p):
        raise ValueError("ch1(L) must be a multiple of the fiber class.")
    return DivisorRF(Fraction(0), -l_c1.q + geom.canonical_f / 2)


def chi_L_onedim(gamma: ChernClass, l_c1: DivisorRF, geom: SurfaceGeometry):
    """L-twisted Euler characteristic of a one-dimensional class, ``ch₂^{B̄}``."""
    if not _is_zero(gamma.n):
        raise ValueError("chi_L_onedim requires a class of rank zero.")
    return twist(gamma, kx_twist_field(l_c1, geom), geom).s


def twisted_gieseker_slope(gamma, l_c1, m, alpha, beta, geom):
    """``χ_L(E) / (β ω̃·ch₁(E))``, infinite when the denominator vanishes."""
    denominator = beta * divisor_degree(omega_tilde(m, alpha), gamma, geom)
    if _is_zero(denominator):
        return INFINITY
    return chi_L_onedim(gamma, l_c1, geom) / denominator


def weight_from_charges(z_gamma: Charge, z_m: Charge):
    """Determinant ``-Im Z(M) Re Z(γ) + Re Z(M) Im Z(γ)``."""
    return -z_m.im * z_gamma.re + z_m.re * z_gamma.im


def weight_S(gamma: ChernClass, spec: ChargeSpec, m_class: ChernClass):
    """Weight function ``S_{Z,M}(γ)``; vanishes on ``M`` and on classes of equal phase.

    Raises:
        KernelClassError: If ``Z(M) = 0``.

    """
    z_m = central_charge(m_class, spec)
    if z_m.is_zero():
        raise KernelClassError(f"Z(M) vanishes for M = {m_class}.")
    return weight_from_charges(central_charge(gamma, spec), z_m)


def phase(gamma: ChernClass, spec: ChargeSpec, branch: Optional[Tuple] = None):
    """Phase function of ``Z(γ)`` with limit value in the branch ``(a, a+1]``.

    Raises:
        KernelClassError: If ``Z(γ) = 0``.
        PhaseBranchError: If the limit value is outside the branch.

    """
    lower, upper = spec.phase_branch if branch is None else branch
    charge = central_charge(gamma, spec)
    witness = charge.to_series()
    if witness.is_zero() and witness.exact:
        raise KernelClassError(f"Kernel class: Z({gamma}) = 0.")
    result: PhaseFunction = phase_of(witness, (lower, lower + 2))
    if not in_branch(result, (lower, upper)):
        raise PhaseBranchError(
            f"Phase {result.limit_value} of {gamma} is outside ({lower}, {upper}]."
        )
    return result


def curve_charge(kappa) -> Charge:
    """``Z(E) = -deg E + i rank E`` on the elliptic curve."""
    return Charge(Fraction(-kappa.d), Fraction(kappa.r))


def curve_weight(kappa, m_kappa) -> Fraction:
    """``rank(M) deg(E) - deg(M) rank(E)``."""
    return weight_from_charges(curve_charge(kappa), curve_charge(m_kappa))


def leading_sign(value) -> int:
    """Sign of a number, or of the leading coefficient of a series."""
    if isinstance(value, LaurentSeries):
        return value.sign()
    if isinstance(value, float):
        return (value > 0) - (value < 0)
    return exact_sign(value)


def _is_zero(value) -> bool:
    if isinstance(value, LaurentSeries):
        return value.is_zero() and value.exact
    return value == 0
