"""Conversion of domain values to JSON-ready data and back.

Exact numbers are written as canonical strings, ``str(Fraction)`` or
``"a+b*sqrt(r)"``, floats stay floats. Dumps are deterministic.

"""

import json
from fractions import Fraction
from typing import Iterable, List

import numpy as np
import pandas as pd

from ellstab.charges import Charge
from ellstab.exceptions import ConfigurationError
from ellstab.lattice import ChernClass, DivisorRF, chern_class, divisor
from ellstab.series.complex_series import ComplexLaurentSeries
from ellstab.series.laurent import LaurentSeries
from ellstab.series.phase import PhaseFunction
from ellstab.series.quadratic import QuadraticNumber, as_scalar, format_scalar
from ellstab.walls.family import StabilityFamily, Wall

CHERN_FIELDS = ChernClass._fields


def to_jsonable(value):
    """Recursively convert a value to JSON-ready data."""
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (Fraction, QuadraticNumber)):
        return format_scalar(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, ChernClass):
        return chern_to_dict(value)
    if isinstance(value, Charge):
        return {"re": to_jsonable(value.re), "im": to_jsonable(value.im)}
    if isinstance(value, DivisorRF):
        return {"p": to_jsonable(value.p), "q": to_jsonable(value.q)}
    if isinstance(value, Wall):
        return wall_to_dict(value)
    if isinstance(value, (LaurentSeries, ComplexLaurentSeries, PhaseFunction)):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(item) for item in value]
    raise TypeError(f"Cannot serialize {value!r}.")


def dumps(value) -> str:
    """Deterministic JSON text with sorted keys."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2)


def write_json(value, path) -> None:
    with open(path, "w") as file:
        file.write(dumps(value))
        file.write("\n")


def mode_of(values: Iterable) -> str:
    """``"float"`` if any value is a float, ``"exact"`` otherwise."""
    for value in values:
        if isinstance(value, (float, np.floating, np.ndarray)):
            return "float"
    return "exact"


def chern_to_dict(gamma: ChernClass) -> dict:
    return {name: format_scalar(getattr(gamma, name)) for name in CHERN_FIELDS}


def chern_from_dict(data: dict) -> ChernClass:
    missing = [name for name in CHERN_FIELDS if name not in data]
    if missing:
        raise ConfigurationError(f"Chern class is missing {missing}.")
    return chern_class(*(data[name] for name in CHERN_FIELDS))


def parse_chern(text: str) -> ChernClass:
    """Parse ``"n,x,y,xi2,s"`` with rational entries such as ``"1/2"``."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != len(CHERN_FIELDS):
        raise ConfigurationError(
            f"Chern class {text!r} must have the five entries n,x,y,xi2,s."
        )
    try:
        return chern_class(*parts)
    except (TypeError, ValueError, ZeroDivisionError) as error:
        raise ConfigurationError(f"Malformed rational in {text!r}.") from error


def parse_interval(text: str):
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        raise ConfigurationError(f"Interval {text!r} must have the form a,b.")
    try:
        return tuple(as_scalar(part) for part in parts)
    except (TypeError, ValueError, ZeroDivisionError) as error:
        raise ConfigurationError(f"Malformed rational in {text!r}.") from error


def parse_divisor(text: str) -> DivisorRF:
    """Parse ``"p,q"`` as the divisor ``pΘ + qf``."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        raise ConfigurationError(f"Divisor {text!r} must have the form p,q.")
    try:
        return divisor(*parts)
    except (TypeError, ValueError, ZeroDivisionError) as error:
        raise ConfigurationError(f"Malformed rational in {text!r}.") from error


def wall_to_dict(wall: Wall) -> dict:
    exact = not isinstance(wall.param, float)
    return {
        "param": format_scalar(wall.param) if exact else float(wall.param),
        "param_float": float(wall.param),
        "destabilizer": chern_to_dict(wall.destabilizer),
        "target": chern_to_dict(wall.target),
    }


def walls_report(
    family: StabilityFamily, walls: List[Wall], scan_metadata: dict
) -> dict:
    """The walls document ``{family, params, walls, scan_metadata, mode}``."""
    params = {
        "e": family.geom.e,
        "m": family.geom.m,
        "alpha": family.alpha,
        "q": family.q,
        "l": family.l,
        "interval": list(family.interval),
    }
    exact = all(not isinstance(w.param, float) for w in walls)
    return to_jsonable(
        {
            "family": family.kind.value,
            "mode": "exact" if exact else "float",
            "params": params,
            "walls": walls,
            "scan_metadata": scan_metadata,
        }
    )


def walls_to_frame(walls: List[Wall]) -> pd.DataFrame:
    """One row per wall with the parameter as float and the classes as strings."""
    return pd.DataFrame(
        {
            "param": [float(w.param) for w in walls],
            "destabilizer": [
                ",".join(format_scalar(c) for c in w.destabilizer) for w in walls
            ],
            "target": [",".join(format_scalar(c) for c in w.target) for w in walls],
        },
        columns=["param", "destabilizer", "target"],
    )


def write_csv(frame: pd.DataFrame, path) -> None:
    frame.to_csv(path, index=False, float_format="%.12g")
