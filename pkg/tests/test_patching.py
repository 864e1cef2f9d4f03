from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ellstab.exceptions import ConfigurationError, NoSolutionError
from ellstab.lattice import ZERO_DIVISOR
from ellstab.patching import (
    charge_coordinates,
    general_relation_residuals,
    gepner_params,
    inverse_square_derivative,
    lq_relation,
    monotone_from,
    patching_constants,
    patching_residuals,
    solve_beta_series,
    solve_general,
    solve_simplified,
    solve_u_exact,
    solve_u_series,
    solve_uv_numeric,
)
from ellstab.series.laurent import V, LaurentSeries
from ellstab.series.quadratic import sqrt_exact
from tests.utils.binomial_oracle import u_root_coefficients
from tests.utils.random_draws import draw_positive_rational, draw_rational

PARAMS = [(2, 1, 0), (3, 1, 1), (5, "1/2", 2), ("7/2", 3, "3/2")]


def test_u_series_leading_coefficients():
    u = solve_u_series(2, 1, 0)
    assert u.lowest_degree == 1
    assert u.coefficients[:5] == (3, 0, -18, 0, 216)


@pytest.mark.parametrize("m, alpha, e", PARAMS)
def test_u_series_matches_closed_form_root(m, alpha, e):
    u = solve_u_series(m, alpha, e, order=16)
    expected = u_root_coefficients(m, alpha, e, 16)
    assert [u.coefficient(k) for k in range(1, 17)] == expected


@pytest.mark.parametrize("m, alpha, e", PARAMS)
def test_u_series_satisfies_relation_through_order(m, alpha, e):
    u = solve_u_series(m, alpha, e, order=16)
    constants = patching_constants(m, alpha, e)
    residual = constants["B"] * u * u + V * u - constants["A"]
    assert residual.is_zero()
    assert residual.truncation_order >= 16


def test_u_series_rejects_invalid_inputs():
    with pytest.raises(ConfigurationError, match="m > e"):
        solve_u_series(1, 1, 1)
    with pytest.raises(ConfigurationError, match="alpha > 0"):
        solve_u_series(2, 0, 0)
    with pytest.raises(ConfigurationError, match="order"):
        solve_u_series(2, 1, 0, order=0)


def test_beta_series_leading_term():
    beta = solve_beta_series(2, 1, 0, order=8)
    assert beta.lowest_degree == -1
    assert beta.leading_coefficient == Fraction(1, 3)


@pytest.mark.parametrize("m, alpha, e", PARAMS)
def test_series_agree_with_numeric_solution(m, alpha, e):
    u_series = solve_u_series(m, alpha, e, order=16)
    beta_series = solve_beta_series(m, alpha, e, order=16)
    v_grid = np.array([50.0, 100.0, 1000.0])
    u, beta = solve_uv_numeric(Fraction(m), Fraction(alpha), Fraction(e), v_grid)
    assert_allclose(u_series.eval_array(v_grid), u, rtol=1e-10)
    assert_allclose(beta_series.eval_array(v_grid), beta, rtol=1e-10)


def test_numeric_solution_satisfies_relations():
    u, beta = solve_uv_numeric(2, 1, 0, 1.0)
    assert_allclose(u, 1.0)
    assert_allclose(beta, 1.0)
    u, beta = solve_uv_numeric(3, 2, 1, 7.0)
    residuals = patching_residuals(3.0, 2.0, 1.0, u, 7.0, beta)
    assert_allclose(list(residuals.values()), [0.0, 0.0], atol=1e-10)
    with pytest.raises(ConfigurationError, match="v > 0"):
        solve_uv_numeric(2, 1, 0, np.array([1.0, -1.0]))


def test_exact_u():
    u, beta_squared = solve_u_exact(2, 1, 0, 1)
    assert u == 1
    assert beta_squared == 1
    u, beta_squared = solve_u_exact(3, 1, 1, 2)
    assert u * u * Fraction(5, 2) + 2 * u == 3
    assert_allclose(float(u), solve_uv_numeric(3, 1, 1, 2.0)[0])


@pytest.mark.parametrize("e", [0, 1, 2])
@pytest.mark.parametrize("alpha", [1, "1/2", 3])
def test_gepner_parameters(alpha, e):
    alpha = Fraction(alpha)
    m = e + 2
    u, beta, v = gepner_params(m, alpha, e)
    assert u * u == (m + alpha - e) / (m + alpha - Fraction(e, 2))
    assert beta == alpha * u
    assert v == beta
    residuals = patching_residuals(m, alpha, Fraction(e), u, v, beta)
    assert all(r == 0 for r in residuals.values())


@pytest.mark.parametrize("m, alpha", [(2, 1), ("5/2", "1/2"), (1, 2)])
def test_gepner_parameters_for_zero_e(m, alpha):
    u, beta, v = gepner_params(m, alpha, 0)
    assert u == 1
    assert beta == v == Fraction(alpha)


def test_gepner_parameters_are_quadratic():
    u, _, _ = gepner_params(2, 1, 1)
    assert u == sqrt_exact(Fraction(4, 5))


def test_lq_relation():
    assert lq_relation("1/3", 2) == Fraction(4, 3)
    m, alpha, e = Fraction(3), Fraction(1), Fraction(2)
    residuals = patching_residuals(
        m, alpha, e, 1, 1, 1, l=Fraction(4, 3), q=Fraction(1, 3)
    )
    assert residuals["lq"] == 0


def test_general_relations():
    p, q, epsilon, zeta = solve_general(1, 0, 1, 1, 1)
    assert (p, q, epsilon, zeta) == (
        Fraction(-1, 4),
        Fraction(-9, 8),
        Fraction(-1, 8),
        Fraction(5, 2),
    )
    residuals = general_relation_residuals(
        Fraction(1), 0, 1, 1, Fraction(1), p, q, epsilon, zeta
    )
    assert all(r == 0 for r in residuals)


def test_general_relations_without_solution():
    with pytest.raises(NoSolutionError):
        solve_general(2, 0, 1, "1/2", 2)
    with pytest.raises(ConfigurationError, match="gamma > 0"):
        solve_general(0, 0, -1, 1, 0)


def test_simplified_relations(rng):
    for _ in range(50):
        l = draw_rational(rng)
        gamma, delta = draw_positive_rational(rng), draw_positive_rational(rng)
        e = draw_positive_rational(rng)
        q, epsilon, zeta = solve_simplified(l, gamma, delta, e)
        assert (q, epsilon, zeta) == (l - e / 2, delta - e, gamma + e)


def test_charge_coordinates_residuals_are_patching_residuals(rng):
    for _ in range(100):
        e = draw_positive_rational(rng)
        m = e + draw_positive_rational(rng)
        alpha, u, v, beta = (draw_positive_rational(rng) for _ in range(4))
        coordinates = charge_coordinates(m, alpha, e, u, v, beta)
        residuals = patching_residuals(m, alpha, e, u, v, beta)
        assert coordinates["residual_gamma"] == residuals["beta"]
        assert coordinates["residual_delta"] == -residuals["u"]


def test_charge_coordinates_at_gepner_point():
    u, beta, v = gepner_params(3, 1, 1)
    coordinates = charge_coordinates(Fraction(3), Fraction(1), Fraction(1), u, v, beta)
    assert coordinates["residual_gamma"] == 0
    assert coordinates["residual_delta"] == 0
    assert coordinates["omega"] == coordinates["omega_bar"]
    assert coordinates["omega"] != ZERO_DIVISOR


def test_inverse_square_derivative():
    derivative = inverse_square_derivative(solve_u_series(2, 1, 0, 8))
    assert derivative.lowest_degree == -1
    assert derivative.leading_coefficient == Fraction(2, 9)


def test_monotone_from():
    u = solve_u_series(2, 1, 0, 12)
    beta = solve_beta_series(2, 1, 0, 12)
    v_prime = monotone_from(u, beta, np.geomspace(1, 1000, 400))
    assert 1 <= v_prime <= 20


def test_monotone_from_failures():
    with pytest.raises(ConfigurationError, match="order >= 5"):
        monotone_from(solve_u_series(2, 1, 0, 3), solve_beta_series(2, 1, 0, 8), [1, 2])
    increasing = LaurentSeries([1], -1, 6)
    with pytest.raises(NoSolutionError):
        monotone_from(increasing, increasing, np.linspace(1, 10, 10))
