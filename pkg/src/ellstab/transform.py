"""Cohomological Fourier–Mukai transforms.

``phi`` is the action of the relative Fourier–Mukai transform Φ on Chern characters
and ``phi_hat`` the action of its quasi-inverse Φ̂, normalized so that
``Φ̂Φ = ΦΦ̂ = [-1]``. On the elliptic curve the transform rotates
``(rank, degree)``.

"""

import functools
from fractions import Fraction
from typing import NamedTuple

import sympy

from ellstab.exceptions import VerificationError
from ellstab.lattice import (
    ChernClass,
    SurfaceGeometry,
    fiber_degree,
    generators,
    shift,
    theta_degree,
)


class CurveClass(NamedTuple):
    """Numerical class ``(rank, degree)`` on an elliptic curve."""

    r: int
    d: int


def phi(gamma: ChernClass, geom: SurfaceGeometry) -> ChernClass:
    """Chern character of ``Φ(E)``.

    Args:
        gamma (ChernClass): ``ch(E)``.
        geom (SurfaceGeometry): Surface data.

    Returns:
        ChernClass: ``ch(ΦE)``. It satisfies ``f·ch₁(ΦE) = -n`` and
            ``Θ·ch₁(ΦE) = s - e·d/2 + n·e``.

    """
    e = geom.e
    n, s = gamma.n, gamma.s
    c, d = theta_degree(gamma, geom), fiber_degree(gamma)
    return ChernClass(
        n=d,
        x=-gamma.x + (d - n),
        y=-gamma.y + d * e + (c - e * d / 2 + s),
        xi2=gamma.xi2,
        s=-c - d * e + n * e / 2,
    )


@functools.lru_cache(maxsize=None)
def transform_matrix(e) -> sympy.Matrix:
    """Matrix of ``phi`` on the coordinates ``(n, x, y, s)``."""
    e = sympy.Rational(Fraction(e).numerator, Fraction(e).denominator)
    return sympy.Matrix(
        [
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, -e / 2, 0, 1],
            [e / 2, 0, -1, 0],
        ]
    )


@functools.lru_cache(maxsize=None)
def _phi_hat_coefficients(e):
    """Rows of ``-transform_matrix(e)^{-1}`` as Fractions, checked on generators."""
    inverse = -transform_matrix(e).inv()
    rows = tuple(
        tuple(Fraction(int(entry.p), int(entry.q)) for entry in inverse.row(i))
        for i in range(4)
    )
    geom = SurfaceGeometry(e=Fraction(e), m=Fraction(e) + 1)
    for basis in generators():
        round_trip = _apply_rows(rows, phi(basis, geom))
        if round_trip != shift(basis):
            raise VerificationError(
                f"Inverse transform failed on generator {basis} for e = {e}."
            )
    return rows


def _apply_rows(rows, gamma: ChernClass) -> ChernClass:
    coordinates = (gamma.n, gamma.x, gamma.y, gamma.s)
    n, x, y, s = (
        sum((a * v for a, v in zip(row, coordinates) if a != 0), Fraction(0))
        for row in rows
    )
    return ChernClass(n, x, y, gamma.xi2, s)


def phi_hat(gamma: ChernClass, geom: SurfaceGeometry) -> ChernClass:
    """Chern character of ``Φ̂(E)``, the class with ``phi(phi_hat(γ)) = -γ``."""
    return _apply_rows(_phi_hat_coefficients(Fraction(geom.e)), gamma)


def curve_phi(kappa: CurveClass) -> CurveClass:
    """Rotation ``(r, d) -> (d, -r)``, i.e. multiplication of ``-d + ir`` by ``-i``."""
    return CurveClass(r=kappa.d, d=-kappa.r)
