"""One-parameter stability families and wall records."""

import enum
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from ellstab.charges import (
    ChargeFamily,
    ChargeSpec,
    omega_bar,
    omega_hyperbola,
    omega_tilde,
)
from ellstab.exceptions import ConfigurationError
from ellstab.lattice import ChernClass, DivisorRF, SurfaceGeometry, fiber_divisor, pair
from ellstab.patching import lq_relation, solve_uv_numeric
from ellstab.series.quadratic import as_scalar


class FamilyKind(enum.Enum):
    RAY = "ray"
    HYPERBOLA = "hyperbola"


class StabilityFamily(NamedTuple):
    """The ray ``σ_{βω̃,lf}`` in ``β`` or the hyperbola ``σ_{ω(v),qf}`` in ``v``.

    Attributes:
        kind (FamilyKind): Which family.
        geom (SurfaceGeometry): Surface data; ``geom.m`` enters both divisors.
        alpha (Fraction): The parameter ``α > 0``.
        q (Fraction): Fiber coefficient of ``B``; the ray uses ``l = e/2 + q``.
        interval (tuple): Closed parameter interval ``(a, b)`` with ``0 < a < b``.

    """

    kind: FamilyKind
    geom: SurfaceGeometry
    alpha: Fraction
    q: Fraction
    interval: Tuple

    @property
    def l(self) -> Fraction:  # noqa: E743
        return lq_relation(self.q, self.geom.e)

    @property
    def b_field(self) -> DivisorRF:
        if self.kind is FamilyKind.RAY:
            return fiber_divisor(self.l)
        return fiber_divisor(self.q)


class Wall(NamedTuple):
    """A numerical wall: ``Z(destabilizer)`` and ``Z(target)`` align at ``param``."""

    param: object
    destabilizer: ChernClass
    target: ChernClass


def stability_family(
    kind,
    geom: SurfaceGeometry,
    alpha=1,
    q=None,
    l=None,
    interval=(Fraction(1, 10), Fraction(10)),
) -> StabilityFamily:
    """Build a validated family; exactly one of ``q`` and ``l`` may be omitted.

    Raises:
        ConfigurationError: On a bad interval, ``α <= 0`` or ``l != e/2 + q``.

    """
    kind = FamilyKind(kind) if not isinstance(kind, FamilyKind) else kind
    alpha = as_scalar(alpha)
    if not alpha > 0:
        raise ConfigurationError(f"alpha > 0 violated: alpha = {alpha}.")
    if q is None and l is None:
        q = Fraction(0)
    elif q is None:
        q = as_scalar(l) - geom.e / 2
    else:
        q = as_scalar(q)
        if l is not None and as_scalar(l) != lq_relation(q, geom.e):
            raise ConfigurationError(
                f"l = e/2 + q violated: l = {l}, e = {geom.e}, q = {q}."
            )
    low, high = (as_scalar(x) for x in interval)
    if not 0 < low < high:
        raise ConfigurationError(f"Interval {interval} must satisfy 0 < a < b.")
    return StabilityFamily(kind, geom, alpha, q, (low, high))


def omega_at(family: StabilityFamily, param) -> DivisorRF:
    """The polarization of the family at a parameter value."""
    m = family.geom.m
    if family.kind is FamilyKind.RAY:
        return omega_bar(m, family.alpha, param)
    u, _ = solve_uv_numeric(m, family.alpha, family.geom.e, param)
    return omega_hyperbola(m, u, param)


def charge_spec(family: StabilityFamily, param) -> ChargeSpec:
    """Charge specification of the family member at ``param``."""
    if family.kind is FamilyKind.RAY:
        return ChargeSpec(
            ChargeFamily.LARGE_VOLUME_RAY,
            {"alpha": family.alpha, "beta": param},
            family.b_field,
            family.geom,
        )
    u, _ = solve_uv_numeric(family.geom.m, family.alpha, family.geom.e, param)
    return ChargeSpec(
        ChargeFamily.HYPERBOLA_ZL, {"u": u, "v": param}, family.b_field, family.geom
    )


def ray_half_square(family: StabilityFamily) -> Fraction:
    """``ω̃²/2``; on the ray ``Re Z = -ch₂^B̄ + β² (ω̃²/2) ch₀``."""
    tilde = omega_tilde(family.geom.m, family.alpha)
    return pair(tilde, tilde, family.geom) / 2


def partner_family(family: StabilityFamily, interval: Optional[Tuple] = None):
    """The family on the other side of the transform, sharing ``α`` and ``q``."""
    other = FamilyKind.HYPERBOLA if family.kind is FamilyKind.RAY else FamilyKind.RAY
    return stability_family(
        other,
        family.geom,
        family.alpha,
        q=family.q,
        interval=family.interval if interval is None else interval,
    )
