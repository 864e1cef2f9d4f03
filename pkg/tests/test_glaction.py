from fractions import Fraction

import numpy as np
import pytest

from ellstab.charges import (
    Charge,
    curve_charge,
    omega_bar,
    omega_hyperbola,
    z_omega_B,
)
from ellstab.exceptions import ConfigurationError
from ellstab.glaction import (
    GLLift,
    act_on_charge,
    apply_matrix,
    commutation_lift,
    compose_lifts,
    dilation_lift,
    gamma_T_apply,
    gepner_autoequivalence,
    identity_lift,
    invert_lift,
    is_glplus,
    matrix_inverse,
    rank_zero_identity,
    rotation_lift,
    verify_commutation,
    verify_curve,
)
from ellstab.lattice import chern_class, fiber_divisor
from ellstab.patching import gepner_params
from ellstab.series.laurent import Order
from ellstab.series.phase import compare_phase, phase_of
from ellstab.transform import CurveClass, curve_phi, phi
from tests.utils.random_draws import draw_positive_rational, draw_rational


@pytest.mark.parametrize("v", [5, 10, 100])
def test_commutation_numeric(v):
    report = verify_commutation(2, 1, 0, 0, mode="numeric", v=v, n_random=50)
    assert report["pass"]
    assert report["max_residual"] <= 1e-9
    assert len(report["per_generator"]) == 5


@pytest.mark.parametrize("e", [0, 1, 2])
def test_commutation_series(e):
    report = verify_commutation(e + 2, 1, e, "1/2", mode="series", order=8, n_random=20)
    assert report["pass"]
    assert report["max_residual"] == 0.0
    assert report["rank_zero_identity_residual"] == 0.0
    assert report["series_order"] == 8


@pytest.mark.parametrize("e", [0, 1, 2])
def test_gepner_suite(e):
    report = verify_commutation(e + 2, 1, e, 0, mode="gepner", n_random=30)
    assert report["pass"]
    assert report["omega_fixed"]
    assert report["gepner_residual"] == 0.0
    assert report["gepner_square_residual"] == 0.0
    if e == 0:
        assert report["phase_shift"] == "1/2"
    else:
        assert "phase_shift" not in report


def test_commutation_rejects_inconsistent_inputs():
    with pytest.raises(ConfigurationError, match="l = e/2 \\+ q"):
        verify_commutation(3, 1, 1, 0, mode="numeric", v=5, l=0)
    with pytest.raises(ConfigurationError, match="requires v"):
        verify_commutation(2, 1, 0, 0, mode="numeric")
    with pytest.raises(ConfigurationError, match="not recognized"):
        verify_commutation(2, 1, 0, 0, mode="symbolic")


def test_gepner_autoequivalence_squares_to_shift(geom):
    gamma = chern_class(1, 2, -1, 0, "3/2")
    image = gepner_autoequivalence(gepner_autoequivalence(gamma, geom), geom)
    u, beta, v = gepner_params(geom.m, 1, geom.e)
    omega = omega_hyperbola(geom.m, u, v)
    assert omega == omega_bar(geom.m, 1, beta)
    b_field = fiber_divisor(geom.e / 2)
    assert z_omega_B(image, omega, b_field, geom) == -z_omega_B(
        gamma, omega, b_field, geom
    )


def test_rank_zero_identity(geom):
    u, beta, v = gepner_params(geom.m, 1, geom.e)
    omega = omega_hyperbola(geom.m, u, v)
    bar = omega_bar(geom.m, 1, beta)
    b_field, b_bar = fiber_divisor(0), fiber_divisor(geom.e / 2)
    gamma = chern_class(0, 1, -2, 0, 3)
    first, second, third = rank_zero_identity(
        gamma, geom, omega, bar, b_field, b_bar, u
    )
    assert first == second == third
    with pytest.raises(ValueError, match="rank zero"):
        rank_zero_identity(chern_class(n=1, s=1), geom, omega, bar, b_field, b_bar, u)


def test_curve_suite():
    report = verify_curve(n_random=500, seed=3)
    assert report["pass"]
    assert report["phase_shift"] == "-1/2"
    assert report["order_four"]
    assert report["max_residual"] == 0
    assert report["per_generator"] == {"1,0": 0.0, "0,1": 0.0}
    assert report["n_classes"] == 502


@pytest.mark.parametrize("branch", [(-1, 1), (1, 3), (-5, -3)])
def test_rotation_lowers_curve_phases_by_exactly_one_half(branch, rng):
    lift = rotation_lift()
    checked = 0
    for _ in range(500):
        kappa = CurveClass(*(int(x) for x in rng.integers(-30, 31, size=2)))
        z = curve_charge(kappa)
        if z.is_zero():
            continue
        before = phase_of((z.re, z.im), branch)
        after = gamma_T_apply(before, lift)
        assert compare_phase(after, before.shifted_half(-1)) is Order.EQ
        assert compare_phase(after, before) is Order.LT
        if isinstance(before.limit_value, Fraction):
            assert after.limit_value == before.limit_value - Fraction(1, 2)
        else:
            assert after.limit_value == pytest.approx(before.limit_value - 0.5)
        image = curve_charge(curve_phi(kappa))
        assert after.direction == (image.re, image.im)
        checked += 1
    assert checked > 450



def test_lift_group_law():
    rotation = rotation_lift()
    assert rotation.anchor == Fraction(-1, 2)
    assert compose_lifts(rotation, rotation).anchor == -1
    inverse = invert_lift(rotation)
    assert inverse.anchor == Fraction(1, 2)
    assert compose_lifts(rotation, inverse) == identity_lift()
    half_turn = compose_lifts(rotation, rotation)
    full_turn = compose_lifts(half_turn, half_turn)
    assert full_turn.anchor == -2


def _random_lifts(rng, n):
    lifts = []
    for index in range(n):
        kind = index % 3
        if kind == 0:
            lifts.append(rotation_lift())
        elif kind == 1:
            lifts.append(
                dilation_lift(draw_positive_rational(rng), draw_positive_rational(rng))
            )
        else:
            t = draw_rational(rng)
            lifts.append(GLLift(((Fraction(1), t), (Fraction(0), Fraction(1))), 0))
    return lifts


def _random_phase(rng):
    while True:
        re, im = draw_rational(rng), draw_rational(rng)
        if re or im:
            return phase_of((re, im), (-1, 1))


def test_relabeling_preserves_phase_order():
    rng = np.random.default_rng(5)
    for lift in _random_lifts(rng, 100):
        for _ in range(5):
            phi1, phi2 = _random_phase(rng), _random_phase(rng)
            phi2 = phi2 + int(rng.integers(-2, 3))
            before = compare_phase(phi1, phi2)
            after = compare_phase(gamma_T_apply(phi1, lift), gamma_T_apply(phi2, lift))
            assert after is before


def test_relabeling_commutes_with_integer_shifts():
    rng = np.random.default_rng(8)
    for lift in _random_lifts(rng, 30):
        phase = _random_phase(rng)
        shifted = gamma_T_apply(phase + 1, lift)
        assert compare_phase(shifted, gamma_T_apply(phase, lift) + 1) is Order.EQ


def test_act_on_charge_is_a_right_action():
    rng = np.random.default_rng(21)
    lifts = _random_lifts(rng, 12)
    charges = {
        index: Charge(draw_rational(rng), draw_rational(rng) + 7) for index in range(5)
    }
    for lift1, lift2 in zip(lifts, lifts[1:]):
        step, _ = act_on_charge(charges, lift1)
        twice, _ = act_on_charge(step, lift2)
        once, _ = act_on_charge(charges, compose_lifts(lift1, lift2))
        assert twice == once


def test_act_on_charge_relabels_phases():
    charges = {"z": Charge(Fraction(0), Fraction(1))}
    phases = {"z": phase_of((0, 1), (0, 2))}
    new_charges, new_phases = act_on_charge(charges, rotation_lift(), phases)
    # T⁻¹ is multiplication by i.
    assert new_charges["z"] == Charge(-1, 0)
    assert new_phases["z"].limit_value == 1


def test_singular_and_orientation_reversing_matrices():
    singular = ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4)))
    with pytest.raises(ConfigurationError, match="singular"):
        matrix_inverse(singular)
    reflection = GLLift(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))), 0)
    assert not is_glplus(reflection.matrix)
    with pytest.raises(ConfigurationError, match="GL\\+"):
        act_on_charge({}, reflection)
    with pytest.raises(ConfigurationError):
        dilation_lift(-1, 1)


def test_commutation_lift_at_gepner_point(geom):
    u, beta, v = gepner_params(geom.m, 1, geom.e)
    lift = commutation_lift(Fraction(1), beta, u)
    omega = omega_hyperbola(geom.m, u, v)
    b_field = fiber_divisor(geom.e / 2)
    gamma = chern_class(2, -1, 3, 0, "1/2")
    assert z_omega_B(phi(gamma, geom), omega, fiber_divisor(0), geom) == apply_matrix(
        lift.matrix, z_omega_B(gamma, omega, b_field, geom)
    )
