from fractions import Fraction

import numpy as np
import pytest
import sympy

from ellstab.lattice import (
    SKYSCRAPER,
    STRUCTURE_SHEAF,
    bogomolov_hyperbola_bound,
    bogomolov_ray_bound,
    chern_class,
    discriminant,
    fiber_degree,
    surface_geometry,
    theta_degree,
)
from ellstab.transform import CurveClass, curve_phi, phi, phi_hat, transform_matrix
from tests.utils.random_draws import draw_class


@pytest.fixture(scope="module")
def random_sample():
    rng = np.random.default_rng(2024)
    return [draw_class(rng) for _ in range(1000)]


@pytest.mark.parametrize("e", [0, 1, 2])
def test_transform_identities(e, random_sample):
    geom = surface_geometry(e, e + 1)
    for gamma in random_sample:
        image = phi(gamma, geom)
        assert fiber_degree(image) == -gamma.n
        assert theta_degree(image, geom) == (
            gamma.s - geom.e * fiber_degree(gamma) / 2 + gamma.n * geom.e
        )
        assert phi_hat(image, geom) == -gamma
        assert phi(phi_hat(gamma, geom), geom) == -gamma


@pytest.mark.parametrize("e", [0, 1, 2, Fraction(1, 2)])
def test_discriminant_identity(e, random_sample):
    geom = surface_geometry(e, e + 1)
    for gamma in random_sample:
        image = phi(gamma, geom)
        lhs = discriminant(image, geom) + geom.e * fiber_degree(image) ** 2
        rhs = discriminant(gamma, geom) + geom.e * fiber_degree(gamma) ** 2
        assert lhs == rhs


@pytest.mark.parametrize("e", [0, 1, 2])
def test_bogomolov_bounds_correspond(e, random_sample):
    geom = surface_geometry(e, e + 1)
    for gamma in random_sample:
        assert bogomolov_hyperbola_bound(phi(gamma, geom), geom) == (
            bogomolov_ray_bound(gamma, geom)
        )


@pytest.mark.parametrize("e", [0, 1, 2])
def test_skyscraper_goes_to_fiber(e):
    geom = surface_geometry(e, e + 1)
    assert phi(SKYSCRAPER, geom) == chern_class(y=1)


def test_structure_sheaf_has_rank_zero_image(geom):
    image = phi(STRUCTURE_SHEAF, geom)
    assert image == chern_class(0, -1, 0, 0, geom.e / 2)


def test_transform_matrix():
    assert transform_matrix(Fraction(0)) ** 2 == -sympy.eye(4)
    for e in (0, 1, Fraction(3, 2)):
        assert transform_matrix(Fraction(e)).det() == 1


def test_residual_square_is_preserved(geom):
    gamma = chern_class(1, 2, 3, -4, 5)
    assert phi(gamma, geom).xi2 == -4
    assert phi_hat(gamma, geom).xi2 == -4


@pytest.mark.parametrize(
    "kappa, expected", [((1, 0), (0, -1)), ((0, 1), (1, 0)), ((2, -3), (-3, -2))]
)
def test_curve_phi(kappa, expected):
    assert curve_phi(CurveClass(*kappa)) == CurveClass(*expected)
