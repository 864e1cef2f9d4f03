"""Functions for reading and checking configurations."""

import logging
import os

import yaml

from ellstab.exceptions import ConfigurationError
from ellstab.lattice import surface_geometry
from ellstab.pre_processing.params import as_rational, process_params
from ellstab.series.laurent import DEFAULT_ORDER

LOGGER = logging.getLogger(__name__)

SERIES_ORDER_ENV = "ELLSTAB_SERIES_ORDER"


def load_config(path):
    """Read a YAML or JSON configuration file.

    JSON is a subset of YAML, so ``yaml.safe_load`` reads both.

    """
    with open(path) as file:
        config = yaml.safe_load(file)
    if config is None:
        config = {}
    return config


def check_config_and_set_defaults(config):
    """Check if a configuration is valid and set defaults.

    Args:
        config (dict): Configuration with a ``"geometry"`` dictionary holding ``e``
            and ``m`` (optionally ``kx_f``), and optional ``"params"``,
            ``"series_order"`` and ``"output"`` entries.

    Returns:
        dict: The completed configuration. Rational entries are Fractions and
            ``"geometry"`` carries the validated ``SurfaceGeometry`` under
            ``"surface"``.

    """
    if not isinstance(config, dict):
        raise ConfigurationError("Config must be a dictionary.")

    if "geometry" not in config:
        raise ConfigurationError("Config must contain a geometry dictionary.")

    geometry = config["geometry"]
    if not isinstance(geometry, dict):
        raise ConfigurationError("Geometry must be a dictionary.")

    for key in ("e", "m"):
        if key not in geometry:
            raise ConfigurationError(f"Geometry must contain {key}.")
        geometry[key] = as_rational(geometry[key], key)

    if "kx_f" not in geometry or geometry["kx_f"] is None:
        LOGGER.info("kx_f not given. Assume K_X = e f with e = %s.", geometry["e"])
        geometry["kx_f"] = geometry["e"]
    else:
        geometry["kx_f"] = as_rational(geometry["kx_f"], "kx_f")

    geometry["surface"] = surface_geometry(
        geometry["e"], geometry["m"], geometry["kx_f"]
    )

    config["params"] = process_params(config.get("params") or {}, geometry["surface"])

    config["series_order"] = _series_order(config.get("series_order"))

    if "output" not in config:
        config["output"] = {}
    if not isinstance(config["output"], dict):
        raise ConfigurationError("Output must be a dictionary of paths.")

    return config


def _series_order(value):
    """Series order from the environment, the config or the default, in that order."""
    from_env = os.environ.get(SERIES_ORDER_ENV)
    if from_env is not None:
        value = from_env
        LOGGER.info("Series order %s taken from %s.", value, SERIES_ORDER_ENV)
    elif value is None:
        return DEFAULT_ORDER

    try:
        order = int(value)
    except (TypeError, ValueError) as error:
        raise ConfigurationError(
            f"Series order must be an integer, got {value}."
        ) from error
    if order < 1:
        raise ConfigurationError(f"Series order must be positive, got {order}.")
    return order
