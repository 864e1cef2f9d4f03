import logging
from fractions import Fraction
from typing import Dict

from ellstab.exceptions import ConfigurationError
from ellstab.lattice import SurfaceGeometry
from ellstab.patching import lq_relation
from ellstab.series.quadratic import as_scalar

LOGGER = logging.getLogger(__name__)


def as_rational(value, name: str):
    """Exact scalar from a number or a string such as ``"1/2"``."""
    try:
        return as_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as error:
        raise ConfigurationError(
            f"{name} must be a rational number, got {value}."
        ) from error


def process_params(params: dict, geometry: SurfaceGeometry) -> Dict[str, Fraction]:
    """Check the parameters of the patched families and fill in defaults.

    Checks that ``α`` is positive, derives ``l`` from ``q`` or ``q`` from ``l`` and
    checks ``l = e/2 + q`` when both are given. A given ``v`` must be positive.

    Args:
        params (dict): Parameters with optional keys ``alpha``, ``q``, ``l`` and
            ``v``; values may be numbers or rational strings.
        geometry (SurfaceGeometry): Surface data providing ``e`` and ``m``.

    Returns:
        dict: Dictionary of parameters with exact values.

    """
    if not isinstance(params, dict):
        raise ConfigurationError("Params must be a dictionary.")

    params = {
        key: as_rational(value, key)
        for key, value in params.items()
        if value is not None
    }

    if "alpha" not in params:
        LOGGER.info("alpha not given. Assume alpha = 1.")
        params["alpha"] = Fraction(1)
    if not params["alpha"] > 0:
        raise ConfigurationError(f"alpha > 0 violated: alpha = {params['alpha']}.")

    if "q" not in params and "l" in params:
        params["q"] = params["l"] - geometry.e / 2
    elif "q" not in params:
        LOGGER.info("q not given. Assume q = 0.")
        params["q"] = Fraction(0)

    expected_l = lq_relation(params["q"], geometry.e)
    if "l" not in params:
        params["l"] = expected_l
    elif params["l"] != expected_l:
        raise ConfigurationError(
            f"l = e/2 + q violated: l = {params['l']}, e = {geometry.e}, "
            f"q = {params['q']}."
        )

    if "v" in params and not params["v"] > 0:
        raise ConfigurationError(f"v > 0 violated: v = {params['v']}.")

    params["m"], params["e"] = geometry.m, geometry.e
    return params
