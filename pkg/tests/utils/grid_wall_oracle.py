"""Dense-grid oracle for walls, independent of the jax and brentq code path."""

import numpy as np

from ellstab.charges import omega_tilde, z_omega_B
from ellstab.lattice import ChernClass, DivisorRF, SurfaceGeometry
from ellstab.patching import solve_uv_numeric
from ellstab.walls.family import FamilyKind


def _as_floats(gamma):
    return ChernClass(*(float(c) for c in gamma))


def _polarization(family, params):
    m, alpha, e = float(family.geom.m), float(family.alpha), float(family.geom.e)
    if family.kind is FamilyKind.RAY:
        tilde = omega_tilde(family.geom.m, family.alpha)
        return DivisorRF(float(tilde.p) * params, float(tilde.q) * params)
    u, _ = solve_uv_numeric(m, alpha, e, params)
    return DivisorRF(u, u * m + params)


def _weight_terms(gamma, sub, family, params):
    params = np.atleast_1d(np.asarray(params, dtype=float))
    geom = SurfaceGeometry(e=float(family.geom.e), m=float(family.geom.m))
    b_field = DivisorRF(0.0, float(family.b_field.q))
    omega = _polarization(family, params)
    z_gamma = z_omega_B(_as_floats(gamma), omega, b_field, geom, check=False)
    z_sub = z_omega_B(_as_floats(sub), omega, b_field, geom, check=False)
    return z_gamma.im * z_sub.re, z_gamma.re * z_sub.im


def _weights(gamma, sub, family, params):
    first, second = _weight_terms(gamma, sub, family, params)
    return second - first


def _bisect(gamma, sub, family, low, high, sign_low, n_steps=80):
    for _ in range(n_steps):
        mid = (low + high) / 2
        if np.sign(_weights(gamma, sub, family, mid)[0]) == sign_low:
            low = mid
        else:
            high = mid
    return (low + high) / 2


def grid_walls(gamma, family, candidates, n_points=10_000):
    """Sign changes of the weight over a geometric grid, refined by bisection.

    Returns:
        list: Pairs ``(param, destabilizer)`` sorted by parameter.

    """
    low, high = (float(p) for p in family.interval)
    grid = np.geomspace(low, high, n_points)
    walls = []
    for sub in candidates:
        first, second = _weight_terms(gamma, sub, family, grid)
        # Weights that vanish identically only carry rounding noise.
        noise = 1e-9 * (1 + np.abs(first) + np.abs(second))
        if np.all(np.abs(second - first) <= noise):
            continue
        signs = np.sign(second - first)
        for k in np.flatnonzero(signs[:-1] * signs[1:] < 0):
            root = _bisect(gamma, sub, family, grid[k], grid[k + 1], signs[k])
            walls.append((root, sub))
    return sorted(walls, key=lambda wall: (wall[0], wall[1]))
