from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ellstab.charges import central_charge, omega_bar
from ellstab.exceptions import ConfigurationError
from ellstab.lattice import SKYSCRAPER, chern_class, surface_geometry
from ellstab.patching import solve_uv_numeric
from ellstab.series.quadratic import sqrt_exact
from ellstab.transform import phi
from ellstab.walls import (
    FamilyKind,
    boundedness_probe,
    candidate_classes,
    correspondence_check,
    find_walls,
    stability_family,
    weight_curves,
)
from ellstab.walls.candidates import quotient_class
from ellstab.walls.family import charge_spec, omega_at, partner_family
from ellstab.walls.find_walls import ray_wall_parameter
from tests.utils.grid_wall_oracle import grid_walls

TARGET = chern_class(1, 0, 2, 0, -2)
DESTABILIZER = chern_class(0, 0, 1, 0, -2)
TARGET_FAR = chern_class(1, 0, 2, 0, -5)
FIBER_TARGET = chern_class(0, 0, 2, 0, 1)


@pytest.fixture()
def ray(geom_e0):
    return stability_family("ray", geom_e0, alpha=1, q=0, interval=("1/10", 10))


@pytest.fixture()
def hyperbola(geom_e0):
    return stability_family("hyperbola", geom_e0, alpha=1, q=0, interval=("1/2", 20))


def test_stability_family_validation(geom_e0):
    with pytest.raises(ConfigurationError, match="alpha > 0"):
        stability_family("ray", geom_e0, alpha=0)
    with pytest.raises(ConfigurationError, match="0 < a < b"):
        stability_family("ray", geom_e0, interval=(2, 1))
    with pytest.raises(ConfigurationError, match="l = e/2 \\+ q"):
        stability_family("ray", surface_geometry(1, 2), q=0, l=0)
    with pytest.raises(ValueError):
        stability_family("circle", geom_e0)


def test_stability_family_derives_q_from_l():
    geom = surface_geometry(1, 2)
    family = stability_family("ray", geom, l="3/2")
    assert family.q == 1
    assert family.l == Fraction(3, 2)
    assert family.b_field.q == Fraction(3, 2)
    partner = partner_family(family)
    assert partner.kind is FamilyKind.HYPERBOLA
    assert partner.b_field.q == 1
    assert partner.interval == family.interval


def test_family_members(ray, hyperbola):
    assert omega_at(ray, 2) == omega_bar(2, 1, 2)
    spec = charge_spec(ray, 2)
    assert central_charge(TARGET, spec).im == 4
    omega = omega_at(hyperbola, 1.0)
    assert_allclose([omega.p, omega.q], [1.0, 3.0])


def test_quotient_class_keeps_residual():
    gamma = chern_class(2, 1, 1, -3, 1)
    assert quotient_class(gamma, DESTABILIZER) == chern_class(2, 1, 0, -3, 3)


def test_candidates_of_target(ray):
    candidates = candidate_classes(TARGET, ray, bounds=3)
    spec = charge_spec(ray, 1)
    assert DESTABILIZER in candidates
    for sub in candidates:
        assert sub.xi2 == 0
        assert sub <= quotient_class(TARGET, sub)
        assert 0 < central_charge(sub, spec).im < central_charge(TARGET, spec).im


def test_candidates_of_fiber_target(ray):
    small = candidate_classes(FIBER_TARGET, ray, bounds=3)
    fiber, partner = chern_class(0, 0, 1, 0, 0), chern_class(0, 0, 1, 0, 1)
    # One representative per pair {γ', γ - γ'}.
    assert fiber in small
    assert partner not in small
    assert quotient_class(FIBER_TARGET, fiber) == partner
    assert set(small) <= set(candidate_classes(FIBER_TARGET, ray, bounds=5))


def test_skyscraper_has_no_candidates(ray):
    assert candidate_classes(SKYSCRAPER, ray, bounds=2) == []


def test_candidates_reject_bad_input(ray):
    with pytest.raises(ConfigurationError, match="Empty candidate box"):
        candidate_classes(TARGET, ray, bounds=-1)
    with pytest.raises(ConfigurationError, match="nonzero"):
        candidate_classes(chern_class(), ray, bounds=2)


def test_ray_wall_is_an_exact_square_root(ray):
    beta = ray_wall_parameter(DESTABILIZER, TARGET, ray)
    assert beta == sqrt_exact(Fraction(2, 3))
    walls = find_walls(TARGET, ray, candidates=[DESTABILIZER])
    assert len(walls) == 1
    assert walls[0].param == beta
    assert walls[0].target == TARGET


def test_ray_wall_is_the_limit_of_the_hyperbola_correspondence(geom_e0):
    # β(v)² = (2 + v/u)/3 tends to 2/3 as v tends to zero.
    _, beta = solve_uv_numeric(geom_e0.m, 1, geom_e0.e, 1e-8)
    assert_allclose(beta, np.sqrt(2 / 3), rtol=1e-6)


def test_ray_walls_agree_with_grid_oracle(ray):
    candidates = candidate_classes(TARGET_FAR, ray, bounds=3)
    walls = find_walls(TARGET_FAR, ray, candidates=candidates)
    expected = grid_walls(TARGET_FAR, ray, candidates)
    _assert_same_walls(walls, expected)
    far_wall = (sqrt_exact(Fraction(5, 3)), chern_class(0, 0, 1, 0, -5))
    assert far_wall in [(wall.param, wall.destabilizer) for wall in walls]


def test_hyperbola_walls_agree_with_grid_oracle(geom_e0, ray, hyperbola):
    candidates = [phi(sub, geom_e0) for sub in candidate_classes(TARGET_FAR, ray, 2)]
    target = phi(TARGET_FAR, geom_e0)
    walls = find_walls(target, hyperbola, candidates=candidates)
    expected = grid_walls(target, hyperbola, candidates)
    _assert_same_walls(walls, expected)
    image = phi(chern_class(0, 0, 1, 0, -5), geom_e0)
    at_image = [float(w.param) for w in walls if w.destabilizer == image]
    assert_allclose(at_image, [np.sqrt(27 / 5)], rtol=1e-8)


def _assert_same_walls(walls, expected):
    assert len(walls) == len(expected)
    remaining = list(expected)
    for wall in walls:
        match = [
            pair
            for pair in remaining
            if pair[1] == wall.destabilizer
            and abs(pair[0] - float(wall.param)) <= 1e-6 * float(wall.param)
        ]
        assert match, f"No oracle wall for {wall}."
        remaining.remove(match[0])


def test_fiber_target_has_no_ray_walls(geom_e0):
    family = stability_family("ray", geom_e0, interval=("1/10", 100))
    candidates = candidate_classes(FIBER_TARGET, family, bounds=5)
    assert candidates
    assert find_walls(FIBER_TARGET, family, candidates) == []
    assert grid_walls(FIBER_TARGET, family, candidates) == []


def test_correspondence_matches_walls(geom_e0):
    report = correspondence_check(TARGET_FAR, geom_e0, 1, 0, ("1/2", 20))
    assert report["pass"]
    assert report["interval_v"] == [0.5, 20.0]
    assert report["sign_mismatches"] == 0
    assert report["n_candidates"] > 0
    assert len(report["matched"]) == len(report["ray_walls"])
    assert any(
        abs(pair["beta"] - np.sqrt(5 / 3)) < 1e-9
        and abs(pair["v"] - np.sqrt(27 / 5)) < 1e-6
        for pair in report["matched"]
    )


def test_correspondence_without_walls(geom_e0):
    report = correspondence_check(FIBER_TARGET, geom_e0, 1, 0, ("1/2", 20), bounds=5)
    assert report["pass"]
    assert report["ray_walls"] == []
    assert report["hyperbola_walls"] == []
    assert report["matched"] == []


def test_boundedness_probe_on_the_hyperbola(hyperbola):
    report = boundedness_probe(FIBER_TARGET, hyperbola, 50, 1000, grid_size=500)
    assert report["n_walls"] == 0
    assert report["largest_wall"] is None
    assert report["evidence_only"]
    assert report["interval"] == [50.0, 1000.0]


def test_boundedness_probe_reports_largest_wall(ray):
    report = boundedness_probe(TARGET_FAR, ray, "1/10", 10, bounds=3)
    assert report["n_walls"] >= 1
    assert report["interval"] == [0.1, 10.0]
    assert report["largest_wall"] >= np.sqrt(5 / 3) - 1e-12


def test_weight_curves(ray):
    frame = weight_curves(TARGET, ray, [DESTABILIZER], grid_size=50)
    assert list(frame.columns) == ["param", "re_Z", "im_Z", "S_0_0_1_0_-2"]
    assert len(frame) == 50
    # S/β = -2 + 3β² changes sign at the wall.
    assert_allclose(
        frame["S_0_0_1_0_-2"], frame["param"] * (3 * frame["param"] ** 2 - 2)
    )
    assert_allclose(frame["im_Z"], 2 * frame["param"])


def test_walls_are_invariant_under_scaling_the_destabilizer(ray):
    wall = ray_wall_parameter(DESTABILIZER, TARGET, ray)
    assert ray_wall_parameter(3 * DESTABILIZER, TARGET, ray) == wall


def test_hyperbola_walls_are_stable_under_grid_refinement(geom_e0, ray, hyperbola):
    candidates = [phi(sub, geom_e0) for sub in candidate_classes(TARGET_FAR, ray, 2)]
    target = phi(TARGET_FAR, geom_e0)
    coarse = find_walls(target, hyperbola, candidates, grid_size=1000)
    fine = find_walls(target, hyperbola, candidates, grid_size=2000)
    assert len(coarse) == len(fine)
    assert_allclose(
        [float(w.param) for w in coarse], [float(w.param) for w in fine], rtol=1e-8
    )


def test_boundedness_probe_is_monotone_in_the_interval(ray):
    short = boundedness_probe(TARGET_FAR, ray, "1/10", 1, bounds=3)
    long = boundedness_probe(TARGET_FAR, ray, "1/10", 10, bounds=3)
    if short["largest_wall"] is not None:
        assert short["largest_wall"] <= long["largest_wall"]
    assert boundedness_probe(SKYSCRAPER, ray, "1/10", 10)["largest_wall"] is None
