"""Solvers for the relations that patch the ray and hyperbola charge families.

With ``B̄ = lf``, ``B = qf`` and the divisors ``ω̄ = βω̃`` and ``ω = u(Θ + mf) + vf``
the two families are related by a GL⁺-rotation exactly when

    l = e/2 + q,
    β²/α² · (m + α - e/2) = m + v/u - e,
    m + α - e = (m - e/2) u² + u v.

The last relation determines ``u`` for each ``v``, and then the second one
determines ``β``. Both can be solved numerically for a fixed ``v`` or as Laurent
series in ``w = 1/v``.

"""

import logging

import numpy as np

from ellstab.charges import omega_bar, omega_hyperbola, omega_tilde
from ellstab.exceptions import (
    ConfigurationError,
    NoSolutionError,
    UnderdeterminedError,
    VerificationError,
)
from ellstab.lattice import SurfaceGeometry, pair
from ellstab.series.laurent import V, W, LaurentSeries, sqrt_series
from ellstab.series.quadratic import as_scalar, sqrt_exact

LOGGER = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-12


def lq_relation(q, e):
    """``l = e/2 + q``."""
    return as_scalar(e) / 2 + as_scalar(q)


def _check_patch_inputs(m, alpha, e):
    if not m > e:
        raise ConfigurationError(f"m > e violated: m = {m}, e = {e}.")
    if not alpha > 0:
        raise ConfigurationError(f"alpha > 0 violated: alpha = {alpha}.")


def patching_constants(m, alpha, e):
    """The constants ``A = m+α-e``, ``m - e/2`` and ``C = α²/(m+α-e/2)``."""
    m, alpha, e = as_scalar(m), as_scalar(alpha), as_scalar(e)
    return {
        "A": m + alpha - e,
        "B": m - e / 2,
        "C": alpha * alpha / (m + alpha - e / 2),
    }


def general_relation_residuals(k, l, gamma, delta, e, p, q, epsilon, zeta):
    """Residuals (left minus right) of the four relations between the coordinates."""
    return (
        (l - k * delta) - (e / 2 + (q - e * p) + p * zeta),
        (gamma + (delta - e / 2) * k * k) - (zeta - e),
        delta - (e - e / 2 * p * p + epsilon + p * p * zeta),
        (l - e * k + delta * k) - (e / 2 + q - p * zeta),
    )


def solve_general(k, l, gamma, delta, e):
    """Solve the four patching relations for ``(p, q, ε, ζ)``.

    Here ``B̄ = kΘ + lf`` and ``B = pΘ + qf``, and ``(γ, δ)``, ``(ε, ζ)`` are the
    coordinates of the two charges.

    Args:
        k, l: Coefficients of ``B̄``.
        gamma, delta: Positive coordinates of the first charge.
        e: ``-Θ²``.

    Returns:
        tuple: ``(p, q, epsilon, zeta)``.

    Raises:
        NoSolutionError: If ``2ζ = e`` and ``k(e - 2δ) != 0``.
        UnderdeterminedError: If ``2ζ = e`` and ``k(e - 2δ) = 0``.

    """
    k, l, gamma, delta, e = (as_scalar(x) for x in (k, l, gamma, delta, e))
    if not (gamma > 0 and delta > 0):
        raise ConfigurationError("gamma > 0 and delta > 0 required.")
    zeta = gamma + (delta - e / 2) * k * k + e
    numerator = k * (e - 2 * delta)
    if 2 * zeta == e:
        if numerator != 0:
            raise NoSolutionError("2 zeta = e with k(e - 2 delta) != 0: no solution.")
        raise UnderdeterminedError("2 zeta = e and k(e - 2 delta) = 0: p is free.")
    p = numerator / (2 * zeta - e)
    epsilon = delta - e - p * p * (zeta - e / 2)
    q = l - e * k + delta * k - e / 2 + p * zeta

    residuals = general_relation_residuals(k, l, gamma, delta, e, p, q, epsilon, zeta)
    if any(r != 0 for r in residuals):
        raise VerificationError(f"Patching relations violated: {residuals}.")
    return p, q, epsilon, zeta


def solve_simplified(l, gamma, delta, e):
    """Solve the relations for B-fields in ℝf: ``(q, ε, ζ) = (l-e/2, δ-e, γ+e)``."""
    l, gamma, delta, e = (as_scalar(x) for x in (l, gamma, delta, e))
    q, epsilon, zeta = l - e / 2, delta - e, gamma + e
    if solve_general(0, l, gamma, delta, e) != (0, q, epsilon, zeta):
        raise VerificationError("Reduced relations disagree with the general system.")
    return q, epsilon, zeta


def patching_residuals(m, alpha, e, u, v, beta=None, l=None, q=None, beta_squared=None):
    """Residuals of the patching relations.

    Works for floats, exact numbers and series alike. Pass ``beta_squared`` instead of
    ``beta`` when only ``β²`` is known exactly.

    Returns:
        dict: ``"beta"`` for the β-relation, ``"u"`` for the u-relation and ``"lq"``
            when both ``l`` and ``q`` are given.

    """
    if beta_squared is None:
        if beta is None:
            raise ValueError("Either beta or beta_squared is required.")
        beta_squared = beta * beta
    residuals = {
        "beta": beta_squared / (alpha * alpha) * (m + alpha - e / 2)
        - (m + v / u - e),
        "u": (m - e / 2) * u * u + u * v - (m + alpha - e),
    }
    if l is not None and q is not None:
        residuals["lq"] = l - (e / 2 + q)
    return residuals


def charge_coordinates(m, alpha, e, u, v, beta):
    """Coordinates ``(γ, δ, ε, ζ)`` of the ray and hyperbola charges.

    ``γ = ω̄²/2``, ``δ = m + α``, ``ε = ω²/2`` and ``ζ = m + v/u``. The patching
    relations hold exactly when ``γ = ζ - e`` and ``δ = e + ε``; the returned residuals
    of these two equations coincide with the β- and u-relations.

    """
    geom = SurfaceGeometry(e=e, m=m)
    bar = omega_bar(m, alpha, beta)
    hyperbola = omega_hyperbola(m, u, v)
    coordinates = {
        "gamma": pair(bar, bar, geom) / 2,
        "delta": m + alpha,
        "epsilon": pair(hyperbola, hyperbola, geom) / 2,
        "zeta": m + v / u,
    }
    coordinates["omega_tilde"] = omega_tilde(m, alpha)
    coordinates["omega_bar"] = bar
    coordinates["omega"] = hyperbola
    coordinates["residual_gamma"] = coordinates["gamma"] - (coordinates["zeta"] - e)
    coordinates["residual_delta"] = coordinates["delta"] - (e + coordinates["epsilon"])
    return coordinates


def solve_uv_numeric(m, alpha, e, v):
    """Positive solution ``(u, β)`` of the patching relations at a fixed ``v``.

    Args:
        m, alpha, e: Surface and family parameters with ``m > e`` and ``α > 0``.
        v (float or numpy.ndarray): Positive value(s) of the hyperbola parameter.

    Returns:
        tuple: ``(u, beta)`` as floats or arrays.

    """
    m, alpha, e = float(m), float(alpha), float(e)
    _check_patch_inputs(m, alpha, e)
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise ConfigurationError("v > 0 violated.")
    big_a = m + alpha - e
    big_b = m - e / 2
    # Root of big_b u² + v u - big_a in a form without cancellation for large v.
    u = 2 * big_a / (v + np.sqrt(v * v + 4 * big_b * big_a))
    beta = alpha * np.sqrt((m + v / u - e) / (m + alpha - e / 2))

    residuals = patching_residuals(m, alpha, e, u, v, beta)
    scale = {"beta": m + v / u + abs(e), "u": big_a + big_b * u * u + u * v}
    for name, residual in residuals.items():
        if np.any(np.abs(residual) > NUMERIC_TOLERANCE * scale[name]):
            raise VerificationError(f"Numeric {name}-relation residual {residual}.")
    if u.ndim == 0:
        return float(u), float(beta)
    return u, beta


def solve_u_exact(m, alpha, e, v):
    """Exact ``u`` and ``β²`` for a rational ``v``; ``u`` lies in ``ℚ(√D)``."""
    m, alpha, e, v = (as_scalar(x) for x in (m, alpha, e, v))
    _check_patch_inputs(m, alpha, e)
    constants = patching_constants(m, alpha, e)
    big_a, big_b = constants["A"], constants["B"]
    u = (-v + sqrt_exact(v * v + 4 * big_a * big_b)) / (2 * big_b)
    beta_squared = constants["C"] * (m + v / u - e)
    residual = big_b * u * u + u * v - big_a
    if residual != 0:
        raise VerificationError(f"Exact u-relation residual {residual}.")
    return u, beta_squared


def solve_u_series(m, alpha, e, order: int = 16) -> LaurentSeries:
    """``u`` as a Laurent series in ``w``, known through ``order + 1``.

    Iterates ``u <- (A - (m - e/2) u²) w`` from ``u = A w`` until the coefficients
    through the truncation order are stable. The residual of the u-relation is then
    zero through ``order``.

    """
    m, alpha, e = (as_scalar(x) for x in (m, alpha, e))
    _check_patch_inputs(m, alpha, e)
    if order < 1:
        raise ConfigurationError("Series order N >= 1 required.")
    constants = patching_constants(m, alpha, e)
    big_a, big_b = constants["A"], constants["B"]
    u = (W * big_a).truncate(order + 1)
    for iteration in range(1, order + 3):
        updated = ((big_a - big_b * u * u) * W).truncate(order + 1)
        if updated == u:
            LOGGER.debug("u series stabilized after %d iterations.", iteration)
            break
        u = updated
    else:
        raise VerificationError("u series did not stabilize.")

    residual = big_b * u * u + V * u - big_a
    if not residual.is_zero() or residual.truncation_order < order:
        raise VerificationError(f"u series residual {residual} does not vanish.")
    return u


def solve_beta_series(m, alpha, e, order: int = 16) -> LaurentSeries:
    """``β`` as a Laurent series with ``β² = C(1/(uw) + m - e)``, ``β = Θ(v)``."""
    m, alpha, e = (as_scalar(x) for x in (m, alpha, e))
    u = solve_u_series(m, alpha, e, order + 1)
    constants = patching_constants(m, alpha, e)
    beta_squared = constants["C"] * (V / u + (m - e))
    beta = sqrt_series(beta_squared)

    residual = patching_residuals(m, alpha, e, u, V, beta)["beta"]
    if not residual.is_zero():
        raise VerificationError(f"beta series residual {residual} does not vanish.")
    return beta


def gepner_params(m, alpha, e):
    """Exact solution fixed by the Gepner autoequivalence.

    ``u = √((m+α-e)/(m+α-e/2))``, ``β = αu`` and ``v = β``, so that ``ω̄ = ω``.

    Returns:
        tuple: ``(u, beta, v)`` as Fractions or quadratic numbers.

    """
    m, alpha, e = (as_scalar(x) for x in (m, alpha, e))
    _check_patch_inputs(m, alpha, e)
    u = sqrt_exact((m + alpha - e) / (m + alpha - e / 2))
    beta = alpha * u
    v = beta

    residuals = patching_residuals(m, alpha, e, u, v, beta)
    if any(r != 0 for r in residuals.values()):
        raise VerificationError(f"Gepner parameters violate the relations: {residuals}")
    if omega_bar(m, alpha, beta) != omega_hyperbola(m, u, v):
        raise VerificationError("Gepner parameters do not fix the divisor.")
    return u, beta, v


def inverse_square_derivative(u_series: LaurentSeries) -> LaurentSeries:
    """``d(1/u²)/dv``; its leading term is ``2v/(m+α-e)²``."""
    return (u_series * u_series).inverse().derivative_v()


def monotone_from(u_series, beta_series, v_grid):
    """Smallest grid value from which ``u`` decreases and ``β`` increases.

    The check uses finite differences of the truncated series on the grid, so the
    answer is sampled evidence rather than a certified bound.

    Args:
        u_series (LaurentSeries): Series of ``u``.
        beta_series (LaurentSeries): Series of ``β``.
        v_grid (array-like): Increasing grid of positive ``v``.

    Returns:
        float: The grid value ``v'``.

    """
    grid = np.asarray(v_grid, dtype=float)
    if min(u_series.truncation_order, beta_series.truncation_order) < 5:
        raise ConfigurationError("Series of order >= 5 required.")
    u_steps = np.diff(u_series.eval_array(grid))
    beta_steps = np.diff(beta_series.eval_array(grid))
    good = (u_steps < 0) & (beta_steps > 0)
    # good[i] covers the step from grid[i] to grid[i + 1].
    bad = np.flatnonzero(~good)
    start = 0 if bad.size == 0 else bad[-1] + 1
    if start >= grid.size - 1:
        raise NoSolutionError("Grid exhausted without a monotone tail.")
    return float(grid[start])
