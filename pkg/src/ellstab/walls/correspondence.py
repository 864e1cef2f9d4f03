"""Comparison of ray walls with hyperbola walls and scans for large parameters.

Along the patching relations ``Z_{ω,B}∘Φ = D·Z_{ω̄,B̄}`` with
``D = diag(α/β, u)·(-i)`` and ``det D = αu/β > 0``. Weights transform by ``det D``,
so the sign of the weight of ``γ'`` against ``γ`` on the ray at ``β(v)`` equals the
sign of the weight of ``Φγ'`` against ``Φγ`` on the hyperbola at ``v``.

"""

import logging

import numpy as np

from ellstab.exceptions import VerificationError
from ellstab.lattice import ChernClass, SurfaceGeometry
from ellstab.patching import solve_uv_numeric
from ellstab.series.quadratic import as_scalar, format_scalar
from ellstab.transform import phi
from ellstab.walls.candidates import candidate_classes
from ellstab.walls.family import StabilityFamily, stability_family
from ellstab.walls.find_walls import (
    DEFAULT_BOUNDS,
    DEFAULT_GRID_SIZE,
    class_rows,
    find_walls,
    polarization_grid,
    weight_grid,
    weight_scale,
    weight_signs,
)

LOGGER = logging.getLogger(__name__)

MATCH_RTOL = 1e-8

EVIDENCE_NOTE = (
    "No wall in the scanned interval is evidence, not proof: candidates are limited "
    "to a finite box and the scan to a finite interval."
)


def correspondence_check(
    gamma: ChernClass,
    geom: SurfaceGeometry,
    alpha,
    q,
    interval_v,
    grid_size: int = DEFAULT_GRID_SIZE,
    bounds: int = DEFAULT_BOUNDS,
) -> dict:
    """Sign preservation of weights and the induced matching of walls.

    Candidates of ``γ`` are enumerated on the ray. At every grid value ``v`` the
    ray weights at ``β(v)`` are compared with the hyperbola weights of the transformed
    classes at ``v``. Ray walls in ``[β(v_min), β(v_max)]`` are then matched with the
    hyperbola walls of ``Φγ``, destabilizer ``Φγ'`` for ``γ'``.

    Returns:
        dict: Report with sign statistics, both wall lists and matching results.

    Raises:
        VerificationError: If a strict sign differs between the two sides.

    """
    alpha, q = as_scalar(alpha), as_scalar(q)
    v_low, v_high = (float(as_scalar(p)) for p in interval_v)
    grid = np.geomspace(v_low, v_high, grid_size)
    _, beta_grid = solve_uv_numeric(geom.m, alpha, geom.e, grid)

    ray = stability_family(
        "ray", geom, alpha, q=q, interval=(beta_grid[0], beta_grid[-1])
    )
    hyperbola = stability_family("hyperbola", geom, alpha, q=q, interval=interval_v)
    candidates = candidate_classes(gamma, ray, bounds)
    images = [phi(sub, geom) for sub in candidates]
    target_image = phi(gamma, geom)

    mismatches, deviation = 0, 0.0
    if candidates:
        ray_rows, ray_target = class_rows(candidates, ray), class_rows([gamma], ray)[0]
        p_ray, q_ray = polarization_grid(ray, beta_grid)
        ray_weights = np.asarray(
            weight_grid(ray_rows, ray_target, p_ray, q_ray, geom.e)
        )

        hyp_rows = class_rows(images, hyperbola)
        hyp_target = class_rows([target_image], hyperbola)[0]
        p_hyp, q_hyp = polarization_grid(hyperbola, grid)
        hyp_weights = np.asarray(
            weight_grid(hyp_rows, hyp_target, p_hyp, q_hyp, geom.e)
        )

        scale = weight_scale(hyp_target, p_hyp, q_hyp, hyp_rows)
        determinant = float(alpha) * p_hyp / beta_grid
        deviation = float(
            np.max(np.abs(hyp_weights - determinant * ray_weights) / scale)
        )
        ray_signs = weight_signs(ray_weights, scale / determinant)
        hyp_signs = weight_signs(hyp_weights, scale)
        strict = (ray_signs != 0) & (hyp_signs != 0)
        mismatches = int(np.sum(strict & (ray_signs != hyp_signs)))
        if mismatches:
            raise VerificationError(
                f"Weight signs differ at {mismatches} samples for {gamma}."
            )

    ray_walls = find_walls(gamma, ray, candidates)
    hyperbola_walls = find_walls(target_image, hyperbola, images, grid_size)
    matched, unmatched = _match_walls(ray_walls, hyperbola_walls, geom, alpha)

    report = {
        "target": [format_scalar(c) for c in gamma],
        "n_candidates": len(candidates),
        "n_samples": int(grid_size),
        "interval_v": [v_low, v_high],
        "sign_mismatches": mismatches,
        "max_scaled_deviation": deviation,
        "ray_walls": [float(w.param) for w in ray_walls],
        "hyperbola_walls": [float(w.param) for w in hyperbola_walls],
        "matched": matched,
        "unmatched": unmatched,
        "pass": mismatches == 0 and not unmatched,
    }
    LOGGER.info(
        "Correspondence for %s: %d ray walls, %d hyperbola walls, %d matched.",
        report["target"],
        len(ray_walls),
        len(hyperbola_walls),
        len(matched),
    )
    return report


def _match_walls(ray_walls, hyperbola_walls, geom, alpha):
    """Pair walls ``(β, γ')`` with walls ``(v, Φγ')`` such that ``β(v) = β``."""
    remaining = list(hyperbola_walls)
    matched, unmatched = [], []
    for wall in ray_walls:
        image = phi(wall.destabilizer, geom)
        beta = float(wall.param)
        partner = None
        for other in remaining:
            if other.destabilizer != image:
                continue
            _, beta_at_v = solve_uv_numeric(geom.m, alpha, geom.e, other.param)
            if abs(beta_at_v - beta) <= MATCH_RTOL * abs(beta):
                partner = other
                break
        if partner is None:
            unmatched.append({"side": "ray", "param": beta})
            continue
        remaining.remove(partner)
        matched.append({"beta": beta, "v": float(partner.param)})
    unmatched.extend({"side": "hyperbola", "param": w.param} for w in remaining)
    return matched, unmatched


def boundedness_probe(
    gamma: ChernClass,
    family: StabilityFamily,
    v_min,
    v_max,
    grid_size: int = DEFAULT_GRID_SIZE,
    bounds: int = DEFAULT_BOUNDS,
) -> dict:
    """Largest wall of ``γ`` found in ``[v_min, v_max]``.

    The parameter is ``β`` for the ray and ``v`` for the hyperbola.

    Returns:
        dict: ``largest_wall`` (``None`` if no wall was found), the number of walls,
            the scan setup and a note that an empty scan is evidence, not proof.

    """
    scan = stability_family(
        family.kind, family.geom, family.alpha, q=family.q, interval=(v_min, v_max)
    )
    walls = find_walls(gamma, scan, grid_size=grid_size, bounds=bounds)
    largest = max((float(w.param) for w in walls), default=None)
    if largest is None:
        LOGGER.info("No walls found in [%s, %s].", v_min, v_max)
    return {
        "family": family.kind.value,
        "interval": [float(as_scalar(v_min)), float(as_scalar(v_max))],
        "grid_size": int(grid_size),
        "bounds": int(bounds),
        "n_walls": len(walls),
        "largest_wall": largest,
        "evidence_only": True,
        "note": EVIDENCE_NOTE,
    }

