import os
import sys
from fractions import Fraction
from pathlib import Path

import jax
import numpy as np
import pytest

from ellstab.lattice import surface_geometry
from tests.utils.random_draws import draw_class

# Obtain the test directory of the package
TEST_DIR = Path(__file__).parent

# Directory with additional resources for the testing harness
CONFIG_RESOURCES_DIR = TEST_DIR / "resources" / "configs"


# Add the utils directory to the path so that we can import helper functions.
sys.path.append(os.path.join(os.path.dirname(__file__), "utils"))


def pytest_sessionstart(session):  # noqa: ARG001
    jax.config.update("jax_enable_x64", val=True)


@pytest.fixture(scope="session")
def config_dir():
    return CONFIG_RESOURCES_DIR


@pytest.fixture(params=[0, 1, 2], ids=["e0", "e1", "e2"])
def geom(request):
    e = Fraction(request.param)
    return surface_geometry(e, e + 2)


@pytest.fixture()
def geom_e0():
    return surface_geometry(0, 2)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


@pytest.fixture()
def random_classes(rng):
    return [draw_class(rng) for _ in range(200)]
