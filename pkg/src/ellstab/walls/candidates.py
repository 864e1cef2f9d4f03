"""Enumeration of potentially destabilizing classes.

A candidate for a target ``γ`` is an integral class ``γ'`` with ``xi2 = 0`` whose
imaginary charge lies strictly between ``0`` and ``Im Z(γ)``, such that both ``γ'``
and the quotient class ``γ - γ'`` satisfy the Bogomolov bound of the family. The
residual component of ``ch₁`` does not enter either charge family, so candidates
with ``xi2 != 0`` would only repeat walls.

"""

import logging
from fractions import Fraction
from typing import List

import numpy as np

from ellstab.charges import omega_tilde
from ellstab.exceptions import ConfigurationError
from ellstab.lattice import (
    ChernClass,
    bogomolov_hyperbola_bound,
    bogomolov_ray_bound,
    divisor_degree,
    twist,
)
from ellstab.patching import solve_uv_numeric
from ellstab.walls.family import FamilyKind, StabilityFamily

LOGGER = logging.getLogger(__name__)

PREFILTER_MARGIN = 1e-9
DEFAULT_SAMPLE_SIZE = 200


def quotient_class(gamma: ChernClass, sub: ChernClass) -> ChernClass:
    """``γ - γ'`` for ``γ'`` with ``xi2 = 0``; the residual square stays with γ."""
    return ChernClass(
        gamma.n - sub.n, gamma.x - sub.x, gamma.y - sub.y, gamma.xi2, gamma.s - sub.s
    )


def _box(bounds: int):
    """Integral ``(n, x, y)`` and half-integral ``s`` inside the box."""
    side = np.arange(-bounds, bounds + 1)
    halves = np.arange(-2 * bounds, 2 * bounds + 1)
    n, x, y, s2 = np.meshgrid(side, side, side, halves, indexing="ij")
    return n.ravel(), x.ravel(), y.ravel(), s2.ravel() / 2


def _twisted_arrays(n, x, y, s, q):
    """``(n, x, y_B, s_B)`` for ``B = qf``; the fiber class has square zero."""
    return n, x, y - n * q, s - q * x


def _bogomolov_margins(n, x, y, s, xi2, e, kind):
    """Left minus right side of the Bogomolov bound of the family, as floats."""
    delta = -e * x * x + 2 * x * y + xi2 - 2 * n * s
    if kind is FamilyKind.RAY:
        return delta
    return delta - e * (n * n - x * x)


def sample_parameters(family: StabilityFamily, size: int = DEFAULT_SAMPLE_SIZE):
    """Geometric grid over the parameter interval of the family."""
    low, high = (float(p) for p in family.interval)
    return np.geomspace(low, high, size)


def _imaginary_parts(family: StabilityFamily, n, x, y_b, samples):
    """``Im Z`` of the enumerated classes; one column per sample for the hyperbola."""
    e, m = float(family.geom.e), float(family.geom.m)
    theta_degree = -e * x + y_b
    if family.kind is FamilyKind.RAY:
        tilde = omega_tilde(family.geom.m, family.alpha)
        return (float(tilde.p) * theta_degree + float(tilde.q) * x)[:, None]
    u, _ = solve_uv_numeric(m, family.alpha, e, samples)
    return np.outer(theta_degree + m * x, u) + np.outer(x, samples)


def _ray_imaginary_exact(gamma: ChernClass, family: StabilityFamily) -> Fraction:
    tilde = omega_tilde(family.geom.m, family.alpha)
    return divisor_degree(tilde, twist(gamma, family.b_field, family.geom), family.geom)


def candidate_classes(
    gamma: ChernClass,
    family: StabilityFamily,
    bounds: int,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
) -> List[ChernClass]:
    """Candidate destabilizers of ``γ`` in the box ``|coordinates| <= bounds``.

    For the ray the imaginary parts scale with ``β`` and the window condition is
    decided exactly. For the hyperbola it is required at one sample parameter at
    least.

    Args:
        gamma (ChernClass): The target class, nonzero.
        family (StabilityFamily): The family.
        bounds (int): Half width of the coordinate box, non-negative.
        sample_size (int): Number of hyperbola samples for the window condition.

    Returns:
        list: Sorted candidates, one representative per pair ``{γ', γ - γ'}``.

    """
    if not isinstance(bounds, (int, np.integer)) or bounds < 0:
        raise ConfigurationError(f"Empty candidate box: bounds = {bounds}.")
    if all(c == 0 for c in gamma):
        raise ConfigurationError("The target class must be nonzero.")

    geom = family.geom
    e, q = float(geom.e), float(family.b_field.q)
    n, x, y, s = _box(bounds)
    n_b, x_b, y_b, _ = _twisted_arrays(n, x, y, s, q)

    target = np.array([[float(c) for c in (gamma.n, gamma.x, gamma.y, gamma.s)]])
    t_n, t_x, t_y_b, _ = _twisted_arrays(*target.T, q)
    samples = sample_parameters(family, sample_size)
    im_candidates = _imaginary_parts(family, n_b, x_b, y_b, samples)
    im_target = _imaginary_parts(family, t_n, t_x, t_y_b, samples)

    in_window = (im_candidates > -PREFILTER_MARGIN) & (
        im_candidates < im_target + PREFILTER_MARGIN
    )
    keep = in_window.any(axis=1)
    quotient = (
        float(gamma.n) - n,
        float(gamma.x) - x,
        float(gamma.y) - y,
        float(gamma.s) - s,
    )
    margin_sub = _bogomolov_margins(n, x, y, s, 0.0, e, family.kind)
    margin_quotient = _bogomolov_margins(*quotient, float(gamma.xi2), e, family.kind)
    keep &= (margin_sub > -PREFILTER_MARGIN) & (margin_quotient > -PREFILTER_MARGIN)
    LOGGER.debug("%d of %d box classes pass the prefilter.", keep.sum(), keep.size)

    is_ray = family.kind is FamilyKind.RAY
    bound_check = bogomolov_ray_bound if is_ray else bogomolov_hyperbola_bound
    im_gamma = _ray_imaginary_exact(gamma, family) if is_ray else None

    found = set()
    for index in np.flatnonzero(keep):
        sub = ChernClass(
            Fraction(int(n[index])),
            Fraction(int(x[index])),
            Fraction(int(y[index])),
            Fraction(0),
            Fraction(int(round(2 * s[index])), 2),
        )
        rest = quotient_class(gamma, sub)
        if is_ray:
            if not 0 < _ray_imaginary_exact(sub, family) < im_gamma:
                continue
        else:
            strict = (im_candidates[index] > 0) & (im_candidates[index] < im_target[0])
            if not strict.any():
                continue
        if not (bound_check(sub, geom) and bound_check(rest, geom)):
            continue
        if gamma.xi2 == 0:
            sub = min(sub, rest)
        found.add(sub)

    candidates = sorted(found)
    LOGGER.info(
        "%d candidates for %s on the %s family (box %d).",
        len(candidates),
        tuple(str(c) for c in gamma),
        family.kind.value,
        bounds,
    )
    return candidates
