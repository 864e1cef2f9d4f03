"""Walls of the ray and hyperbola families.

A wall of a target ``γ`` is a parameter where the weight ``S(γ') = -Im Z(γ) Re Z(γ')
+ Re Z(γ) Im Z(γ')`` of a candidate changes sign. On the ray ``S`` is ``β`` times a
linear function of ``β²``, so walls are explicit square roots. On the hyperbola the
weight is evaluated over a grid with ``jax.vmap`` and bracketed roots are refined with
``scipy.optimize.brentq``.

"""

import logging
from typing import List, Optional

import jax.numpy as jnp
import numpy as np
import pandas as pd
from jax import vmap
from scipy.optimize import brentq

from ellstab.charges import omega_tilde
from ellstab.lattice import (
    ChernClass,
    divisor_degree,
    fiber_degree,
    theta_degree,
    twist,
)
from ellstab.patching import solve_uv_numeric
from ellstab.series.quadratic import sqrt_exact
from ellstab.walls.candidates import candidate_classes
from ellstab.walls.family import FamilyKind, StabilityFamily, Wall, ray_half_square

LOGGER = logging.getLogger(__name__)

ROOT_RTOL = 1e-10
SIGN_TOLERANCE = 1e-9
DEFAULT_GRID_SIZE = 2000
DEFAULT_BOUNDS = 3


def class_rows(classes: List[ChernClass], family: StabilityFamily) -> np.ndarray:
    """Float rows ``(n, Θ·ch₁^B, f·ch₁^B, ch₂^B)`` of twisted classes."""
    rows = []
    for gamma in classes:
        twisted = twist(gamma, family.b_field, family.geom)
        rows.append(
            (
                float(twisted.n),
                float(theta_degree(twisted, family.geom)),
                float(fiber_degree(twisted)),
                float(twisted.s),
            )
        )
    return np.array(rows, dtype=float).reshape(-1, 4)


def polarization_grid(family: StabilityFamily, params):
    """Coefficients ``(p, q)`` of ``ω = pΘ + qf`` along the family."""
    params = np.asarray(params, dtype=float)
    m, alpha = float(family.geom.m), float(family.alpha)
    if family.kind is FamilyKind.RAY:
        return params / alpha, params * (m + alpha) / alpha
    u, _ = solve_uv_numeric(m, alpha, float(family.geom.e), params)
    return u, u * m + params


def charge_parts(row, p, q, e):
    """``(Re Z, Im Z)`` of a twisted class row for ``ω = pΘ + qf``."""
    n, c, d, s = row[0], row[1], row[2], row[3]
    half_square = -e * p * p / 2 + p * q
    return -s + half_square * n, p * c + q * d


def weight(sub_row, target_row, p, q, e):
    re_sub, im_sub = charge_parts(sub_row, p, q, e)
    re_target, im_target = charge_parts(target_row, p, q, e)
    return -im_target * re_sub + re_target * im_sub


def weight_grid(sub_rows, target_row, p_grid, q_grid, e):
    """Weights of all candidates over the grid, shape ``(n_candidates, n_grid)``."""
    return vmap(
        vmap(weight, in_axes=(None, None, 0, 0, None)),  # parameter grid
        in_axes=(0, None, None, None, None),  # candidates
    )(
        jnp.asarray(sub_rows),
        jnp.asarray(target_row),
        jnp.asarray(p_grid),
        jnp.asarray(q_grid),
        float(e),
    )


def weight_scale(target_row, p_grid, q_grid, sub_rows):
    """Size of the terms entering the weights, per grid point."""
    magnitude = np.abs(np.concatenate([sub_rows, target_row[None, :]])).max()
    return (1 + magnitude) ** 2 * (1 + np.abs(p_grid) + np.abs(q_grid)) ** 4


def weight_signs(values, scale):
    """Signs of weights, with values below the rounding level of ``scale`` as zero."""
    return np.where(np.abs(values) <= SIGN_TOLERANCE * scale, 0, np.sign(values))


def ray_wall_parameter(sub: ChernClass, gamma: ChernClass, family: StabilityFamily):
    """Exact ``β > 0`` where ``S(γ')`` vanishes on the ray, or ``None``.

    With ``I = ω̃·ch₁^B̄`` and ``W = ω̃²/2`` one has
    ``S/β = (I(γ) s(γ') - I(γ') s(γ)) + β² W (n(γ) I(γ') - n(γ') I(γ))``.
    A constant or identically vanishing ``S/β`` has no wall.

    """
    geom = family.geom
    tilde = omega_tilde(geom.m, family.alpha)
    twisted_sub = twist(sub, family.b_field, geom)
    twisted_gamma = twist(gamma, family.b_field, geom)
    im_sub = divisor_degree(tilde, twisted_sub, geom)
    im_gamma = divisor_degree(tilde, twisted_gamma, geom)

    constant = im_gamma * twisted_sub.s - im_sub * twisted_gamma.s
    slope = ray_half_square(family) * (gamma.n * im_sub - sub.n * im_gamma)
    if slope == 0:
        return None
    beta_squared = -constant / slope
    if beta_squared <= 0:
        return None
    return sqrt_exact(beta_squared)


def _ray_walls(gamma, family, candidates) -> List[Wall]:
    low, high = family.interval
    walls = []
    for sub in candidates:
        beta = ray_wall_parameter(sub, gamma, family)
        if beta is not None and low <= beta <= high:
            walls.append(Wall(beta, sub, gamma))
    return walls


def _hyperbola_weight_function(sub_row, target_row, family):
    m, alpha, e = float(family.geom.m), float(family.alpha), float(family.geom.e)

    def weight_at(v):
        u, _ = solve_uv_numeric(m, alpha, e, v)
        return float(weight(sub_row, target_row, u, u * m + v, e))

    return weight_at


def _hyperbola_walls(gamma, family, candidates, grid_size) -> List[Wall]:
    low, high = (float(p) for p in family.interval)
    grid = np.geomspace(low, high, grid_size)
    p_grid, q_grid = polarization_grid(family, grid)
    sub_rows = class_rows(candidates, family)
    target_row = class_rows([gamma], family)[0]
    weights = np.asarray(
        weight_grid(sub_rows, target_row, p_grid, q_grid, family.geom.e)
    )
    scale = weight_scale(target_row, p_grid, q_grid, sub_rows)

    walls = []
    for index, sub in enumerate(candidates):
        signs = weight_signs(weights[index], scale)
        nonzero = np.flatnonzero(signs)
        if nonzero.size < 2:
            continue
        weight_at = _hyperbola_weight_function(sub_rows[index], target_row, family)
        # Values within the rounding level are skipped, so brackets may span them.
        for i, j in zip(nonzero[:-1], nonzero[1:]):
            if signs[i] != signs[j]:
                root = brentq(weight_at, grid[i], grid[j], xtol=1e-300, rtol=ROOT_RTOL)
                walls.append(Wall(float(root), sub, gamma))
    return walls


def find_walls(
    gamma: ChernClass,
    family: StabilityFamily,
    candidates: Optional[List[ChernClass]] = None,
    grid_size: int = DEFAULT_GRID_SIZE,
    bounds: int = DEFAULT_BOUNDS,
) -> List[Wall]:
    """Walls of ``γ`` inside the parameter interval of ``family``.

    Args:
        gamma (ChernClass): The target class.
        family (StabilityFamily): Ray or hyperbola family.
        candidates (list, optional): Destabilizers to test; enumerated with
            ``candidate_classes(gamma, family, bounds)`` if omitted.
        grid_size (int): Number of hyperbola grid points.
        bounds (int): Half width of the candidate box.

    Returns:
        list: Walls sorted by parameter, then by destabilizer.

    """
    if candidates is None:
        candidates = candidate_classes(gamma, family, bounds)
    if not candidates:
        return []
    if family.kind is FamilyKind.RAY:
        walls = _ray_walls(gamma, family, candidates)
    else:
        walls = _hyperbola_walls(gamma, family, candidates, grid_size)
    walls.sort(key=lambda wall: (float(wall.param), wall.destabilizer))
    LOGGER.info(
        "%d walls on the %s family in %s from %d candidates.",
        len(walls),
        family.kind.value,
        tuple(str(p) for p in family.interval),
        len(candidates),
    )
    return walls


def weight_curves(
    gamma: ChernClass,
    family: StabilityFamily,
    candidates: List[ChernClass],
    grid_size: int = DEFAULT_GRID_SIZE,
) -> pd.DataFrame:
    """Charge of ``γ`` and the weights of all candidates along the family.

    Returns:
        pandas.DataFrame: Columns ``param``, ``re_Z``, ``im_Z`` and one ``S_<class>``
            column per candidate.

    """
    low, high = (float(p) for p in family.interval)
    grid = np.geomspace(low, high, grid_size)
    p_grid, q_grid = polarization_grid(family, grid)
    target_row = class_rows([gamma], family)[0]
    re_z, im_z = charge_parts(target_row, p_grid, q_grid, float(family.geom.e))
    data = {"param": grid, "re_Z": re_z, "im_Z": im_z}
    if candidates:
        sub_rows = class_rows(candidates, family)
        weights = np.asarray(
            weight_grid(sub_rows, target_row, p_grid, q_grid, family.geom.e)
        )
        for sub, values in zip(candidates, weights):
            data["S_" + "_".join(str(c) for c in sub)] = values
    return pd.DataFrame(data)
