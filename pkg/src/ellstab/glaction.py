"""GL⁺(2,ℝ)-lifts acting on central charges and phases, and verification suites.

A lift is a pair ``(T, g)`` of a 2x2 matrix ``T`` acting on ``(Re Z, Im Z)`` and the
induced order preserving relabeling ``Γ_T`` of phases with ``Γ_T(φ+1) = Γ_T(φ)+1``.
The relabeling is stored through one anchor, the limit value of ``Γ_T(0)``; every
other value follows from the phase of ``T z`` and monotonicity.

Entries of ``T`` may be exact numbers or Laurent series in ``w``.

"""

import logging
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Tuple

import numpy as np

from ellstab.charges import (
    Charge,
    curve_charge,
    leading_sign,
    omega_bar,
    omega_hyperbola,
    z_omega_B,
)
from ellstab.exceptions import ConfigurationError
from ellstab.lattice import (
    ChernClass,
    SurfaceGeometry,
    chern_class,
    fiber_divisor,
    generators,
    shift,
    surface_geometry,
    twist,
)
from ellstab.patching import (
    gepner_params,
    lq_relation,
    solve_beta_series,
    solve_u_series,
    solve_uv_numeric,
)
from ellstab.series.complex_series import ComplexLaurentSeries
from ellstab.series.laurent import V, LaurentSeries, Order
from ellstab.series.phase import PhaseFunction, compare_phase, phase_of
from ellstab.series.quadratic import as_scalar, format_scalar
from ellstab.transform import CurveClass, curve_phi, phi

LOGGER = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-9

Matrix = Tuple[Tuple[object, object], Tuple[object, object]]


class GLLift(NamedTuple):
    """A matrix together with the limit value of ``Γ_T(0)``."""

    matrix: Matrix
    anchor: object


def _det(matrix: Matrix):
    (a, b), (c, d) = matrix
    return a * d - b * c


def is_glplus(matrix: Matrix) -> bool:
    """True iff ``det T`` is nonzero with positive leading coefficient."""
    det = _det(matrix)
    if isinstance(det, LaurentSeries) and det.is_zero():
        return False
    return leading_sign(det) > 0


def matrix_product(m1: Matrix, m2: Matrix) -> Matrix:
    (a, b), (c, d) = m1
    (p, q), (r, s) = m2
    return ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))


def matrix_inverse(matrix: Matrix) -> Matrix:
    det = _det(matrix)
    if isinstance(det, LaurentSeries) and det.is_zero() or det == 0:
        raise ConfigurationError(f"Matrix {matrix} is singular.")
    (a, b), (c, d) = matrix
    inverse_det = 1 / det
    return ((d * inverse_det, -b * inverse_det), (-c * inverse_det, a * inverse_det))


def apply_matrix(matrix: Matrix, charge: Charge) -> Charge:
    (a, b), (c, d) = matrix
    return Charge(a * charge.re + b * charge.im, c * charge.re + d * charge.im)


IDENTITY: Matrix = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
ROTATION: Matrix = ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)))


def identity_lift() -> GLLift:
    return GLLift(IDENTITY, Fraction(0))


def rotation_lift() -> GLLift:
    """Multiplication by ``-i`` with ``Γ_T(φ) = φ - 1/2``."""
    return GLLift(ROTATION, Fraction(-1, 2))


def dilation_lift(a, b) -> GLLift:
    """Positive diagonal matrix; ``Γ_T`` fixes ``½ℤ`` and preserves quadrants."""
    if not (leading_sign(a) > 0 and leading_sign(b) > 0):
        raise ConfigurationError("Dilation lifts need positive diagonal entries.")
    zero = Fraction(0)
    return GLLift(((a, zero), (zero, b)), Fraction(0))


def commutation_lift(alpha, beta, u) -> GLLift:
    """``diag(α/β, u)`` composed with the rotation by ``-i``."""
    zero = Fraction(0)
    return GLLift(((zero, alpha / beta), (-u, zero)), Fraction(-1, 2))


def gepner_lift(u) -> GLLift:
    """``T = diag(1/u, u)`` composed with the rotation by ``-i``; ``T² = -1``."""
    zero = Fraction(0)
    return GLLift(((zero, 1 / u), (-u, zero)), Fraction(-1, 2))


def _witness(z) -> ComplexLaurentSeries:
    if isinstance(z, ComplexLaurentSeries):
        return z
    return ComplexLaurentSeries(z.re, z.im)


def _integer_phase(k: int) -> PhaseFunction:
    return phase_of(ComplexLaurentSeries(Fraction((-1) ** (k % 2)), 0), (k - 1, k + 1))


def _integer_window(phase_function: PhaseFunction) -> int:
    """The integer ``k`` with ``k < φ <= k+1`` in the eventual order."""
    k = int(np.ceil(float(phase_function.limit_value))) - 1
    while compare_phase(phase_function, _integer_phase(k)) is not Order.GT:
        k -= 1
    while compare_phase(phase_function, _integer_phase(k + 1)) is Order.GT:
        k += 1
    return k


def _anchor_phase(lift: GLLift) -> PhaseFunction:
    """The germ ``Γ_T(0)``, the phase of ``T·1`` next to the stored anchor."""
    image = apply_matrix(lift.matrix, Charge(Fraction(1), Fraction(0)))
    anchor = lift.anchor
    return phase_of(_witness(image), (anchor - 1, anchor + 1))


def gamma_T_apply(phase_function: PhaseFunction, lift: GLLift) -> PhaseFunction:
    """Relabel a phase by ``Γ_T``: the phase of ``T z`` in the window of the anchor.

    Args:
        phase_function (PhaseFunction): The phase ``φ`` of ``z``.
        lift (GLLift): The lift.

    Returns:
        PhaseFunction: ``Γ_T(φ)``, with witness ``T z``.

    """
    k = _integer_window(phase_function)
    start = _anchor_phase(lift).limit_value + k
    witness = phase_function.witness
    image = apply_matrix(lift.matrix, Charge(witness.re, witness.im))
    return phase_of(_witness(image), (start - 1, start + 1))


def invert_lift(lift: GLLift) -> GLLift:
    """``(T⁻¹, Γ_T⁻¹)``."""
    inverse = matrix_inverse(lift.matrix)
    displacement = _anchor_phase(lift).limit_value
    image = apply_matrix(inverse, Charge(Fraction(1), Fraction(0)))
    anchor = phase_of(_witness(image), (-displacement - 1, -displacement + 1))
    return GLLift(inverse, anchor.limit_value)


def compose_lifts(lift1: GLLift, lift2: GLLift) -> GLLift:
    """The product ``(T₁T₂, Γ_{T₁} ∘ Γ_{T₂})``."""
    anchor = gamma_T_apply(_anchor_phase(lift2), lift1).limit_value
    return GLLift(matrix_product(lift1.matrix, lift2.matrix), anchor)


def act_on_charge(
    charges: Dict[object, Charge],
    lift: GLLift,
    phases: Optional[Dict[object, PhaseFunction]] = None,
):
    """Right action ``(Z, φ)·(T, g) = (T⁻¹Z, relabeled φ)``.

    Args:
        charges (dict): Charge values keyed by lattice elements.
        lift (GLLift): Lift with ``T`` in GL⁺.
        phases (dict, optional): Phases keyed like ``charges``.

    Returns:
        tuple: New charges and, if given, new phases.

    """
    if not is_glplus(lift.matrix):
        raise ConfigurationError("The lift matrix is not in GL+.")
    inverse = invert_lift(lift)
    new_charges = {key: apply_matrix(inverse.matrix, z) for key, z in charges.items()}
    if phases is None:
        return new_charges, None
    new_phases = {key: gamma_T_apply(p, inverse) for key, p in phases.items()}
    return new_charges, new_phases


# Verification suites ------------------------------------------------------------------


def random_classes(rng, size: int, bound: int = 5, with_xi2: bool = True):
    """Random classes with integral ``n, x, y``, ``s`` in ½ℤ and optional ``xi2``."""
    classes = []
    for _ in range(size):
        n, x, y = (int(v) for v in rng.integers(-bound, bound + 1, size=3))
        s = Fraction(int(rng.integers(-2 * bound, 2 * bound + 1)), 2)
        xi2 = int(rng.integers(-bound, bound + 1)) if with_xi2 else 0
        classes.append(chern_class(n, x, y, xi2, s))
    return classes


def _sample(n_random: int, seed: int):
    rng = np.random.default_rng(seed)
    return generators(), random_classes(rng, n_random)


def _commutation_residual(gamma, geom, omega, omega_bar_, b_field, b_bar, lift):
    lhs = z_omega_B(phi(gamma, geom), omega, b_field, geom)
    rhs = apply_matrix(lift.matrix, z_omega_B(gamma, omega_bar_, b_bar, geom))
    return lhs - rhs


def _float_size(residual: Charge, reference: Charge) -> float:
    scale = max(1.0, abs(reference.to_complex()))
    return abs(residual.to_complex()) / scale


def _series_zero(value) -> bool:
    if isinstance(value, LaurentSeries):
        return value.is_zero()
    return value == 0


def _exact_size(residual: Charge):
    """Zero for a vanishing residual, else the largest known coefficient magnitude."""
    sizes = []
    for part in (residual.re, residual.im):
        if isinstance(part, LaurentSeries):
            sizes.extend(abs(float(c)) for c in part.terms().values())
        else:
            sizes.append(abs(float(part)))
    return max(sizes, default=0.0)


def verify_commutation(
    m,
    alpha,
    e,
    q,
    mode: str = "numeric",
    v=None,
    order: int = 8,
    l=None,
    n_random: int = 100,
    seed: int = 0,
) -> dict:
    """Check ``Z_{ω,B}(Φγ) = diag(α/β, u)·(-i)·Z_{ω̄,B̄}(γ)`` on a sample of classes.

    Args:
        m, alpha, e, q: Parameters; ``B = qf`` and ``B̄ = lf`` with ``l = e/2 + q``.
        mode (str): ``"numeric"`` (needs ``v``), ``"series"`` or ``"gepner"``.
        v: Value of the hyperbola parameter in numeric mode.
        order (int): Series order in series mode.
        l: Optional ``l``; checked against ``l = e/2 + q``.
        n_random (int): Number of random classes besides the five generators.
        seed (int): Seed of the random sample.

    Returns:
        dict: Report with ``max_residual``, ``per_generator`` and ``pass``.

    """
    m, alpha, e, q = (as_scalar(x) for x in (m, alpha, e, q))
    expected_l = lq_relation(q, e)
    if l is not None and as_scalar(l) != expected_l:
        raise ConfigurationError(f"l = e/2 + q violated: l = {l}, e = {e}, q = {q}.")
    geom = surface_geometry(e, m)
    b_field, b_bar = fiber_divisor(q), fiber_divisor(expected_l)

    if mode == "numeric":
        if v is None:
            raise ConfigurationError("Numeric mode requires v.")
        u, beta = solve_uv_numeric(m, alpha, e, float(v))
        v_value = float(v)
    elif mode == "series":
        u = solve_u_series(m, alpha, e, order)
        beta = solve_beta_series(m, alpha, e, order)
        v_value = V
    elif mode == "gepner":
        u, beta, v_value = gepner_params(m, alpha, e)
    else:
        raise ConfigurationError(f"Mode {mode} not recognized.")

    omega = omega_hyperbola(m, u, v_value)
    bar = omega_bar(m, alpha, beta)
    lift = commutation_lift(alpha, beta, u)
    named_generators, sample = _sample(n_random, seed)

    per_generator = {}
    worst = 0.0
    passed = True
    for index, gamma in enumerate(named_generators + sample):
        residual = _commutation_residual(gamma, geom, omega, bar, b_field, b_bar, lift)
        if mode == "numeric":
            reference = z_omega_B(phi(gamma, geom), omega, b_field, geom)
            size = _float_size(residual, reference)
            passed &= size <= NUMERIC_TOLERANCE
        else:
            zero = _series_zero(residual.re) and _series_zero(residual.im)
            size = 0.0 if zero else _exact_size(residual)
            passed &= zero
        worst = max(worst, size)
        if index < len(named_generators):
            per_generator[_class_label(gamma)] = size

    rank_zero = _rank_zero_identity(sample, geom, omega, bar, b_field, b_bar, u, mode)
    passed &= rank_zero <= (NUMERIC_TOLERANCE if mode == "numeric" else 0.0)

    report = {
        "suite": "commutation",
        "mode": "float" if mode == "numeric" else "exact",
        "solver": mode,
        "max_residual": worst,
        "per_generator": per_generator,
        "rank_zero_identity_residual": rank_zero,
        "n_classes": len(named_generators) + len(sample),
        "pass": bool(passed),
    }
    if mode == "series":
        report["series_order"] = order
    if mode == "gepner":
        report.update(_gepner_checks(m, alpha, geom, b_bar, u, beta, v_value, sample))
        report["pass"] = bool(report["pass"] and report["gepner_pass"])
    LOGGER.info("Commutation suite (%s): pass=%s.", mode, report["pass"])
    return report


def rank_zero_identity(gamma, geom, omega, omega_bar_, b_field, b_bar, u):
    """The values ``-ch₂^{B̄}``, ``Re Z_{ω̄,B̄}`` and ``-(1/u) Im Z_{ω,B}(Φγ)``."""
    if gamma.n != 0:
        raise ValueError("The rank-zero identity needs a class of rank zero.")
    first = -twist(gamma, b_bar, geom).s
    second = z_omega_B(gamma, omega_bar_, b_bar, geom).re
    third = -z_omega_B(phi(gamma, geom), omega, b_field, geom).im / u
    return first, second, third


def _rank_zero_identity(sample, geom, omega, bar, b_field, b_bar, u, mode):
    worst = 0.0
    for gamma in sample:
        gamma = gamma._replace(n=Fraction(0))
        first, second, third = rank_zero_identity(
            gamma, geom, omega, bar, b_field, b_bar, u
        )
        for difference in (second - first, third - first):
            if mode == "numeric":
                worst = max(worst, abs(float(difference)) / max(1.0, abs(float(first))))
            elif not _series_zero(difference):
                worst = max(worst, _exact_size(Charge(difference, Fraction(0))))
    return worst


def gepner_autoequivalence(gamma: ChernClass, geom: SurfaceGeometry) -> ChernClass:
    """Class of ``(ΦE)[1] ⊗ L`` with ``c₁(L) = (e/2) f``."""
    l_c1 = fiber_divisor(geom.e / 2)
    return twist(shift(phi(gamma, geom)), -l_c1, geom)


def _gepner_checks(m, alpha, geom, b_bar, u, beta, v, sample) -> dict:
    """Gepner identities at the level of charges, exactly."""
    omega = omega_hyperbola(m, u, v)
    lift = gepner_lift(u)
    inverse = matrix_inverse(lift.matrix)
    fixed = omega == omega_bar(m, alpha, beta)

    worst_single, worst_square = 0.0, 0.0
    for gamma in generators() + sample:
        z = z_omega_B(gamma, omega, b_bar, geom)
        image = gepner_autoequivalence(gamma, geom)
        single = z_omega_B(image, omega, b_bar, geom) - apply_matrix(inverse, z)
        square = z_omega_B(gepner_autoequivalence(image, geom), omega, b_bar, geom) + z
        worst_single = max(worst_single, _exact_size(single))
        worst_square = max(worst_square, _exact_size(square))

    report = {
        "omega_fixed": bool(fixed),
        "gepner_residual": worst_single,
        "gepner_square_residual": worst_square,
        "u": format_scalar(u),
        "beta": format_scalar(beta),
        "v": format_scalar(v),
    }
    if geom.e == 0:
        report["phase_shift"] = _phase_shift_e0(geom, omega, b_bar)
    report["gepner_pass"] = (
        fixed
        and worst_single == 0
        and worst_square == 0
        and report.get("phase_shift") != "mismatch"
    )
    return report


def _phase_shift_e0(geom, omega, b_bar) -> str:
    """For ``e = 0`` the autoequivalence multiplies charges by ``i``.

    Returns ``"1/2"`` when every relabeled generator phase equals the original phase
    shifted by ``1/2``, the inverse of the relabeling of the rotation lift.

    """
    lift = invert_lift(rotation_lift())
    shifted = True
    for gamma in generators():
        z = z_omega_B(gamma, omega, b_bar, geom)
        if z.is_zero():
            continue
        before = phase_of(_witness(z), (-1, 1))
        after = gamma_T_apply(before, lift)
        image = z_omega_B(gepner_autoequivalence(gamma, geom), omega, b_bar, geom)
        if _witness(image) != after.witness:
            raise ConfigurationError("Autoequivalence does not act by i on charges.")
        shifted &= compare_phase(after, before.shifted_half(1)) is Order.EQ
    return "1/2" if shifted else "mismatch"


CURVE_GENERATORS = (CurveClass(1, 0), CurveClass(0, 1))


def _curve_checks(kappa: CurveClass, lift: GLLift):
    """Charge residual, order-four check and exact ``-1/2`` shift for one class."""
    image = curve_phi(kappa)
    residual = _exact_size(curve_charge(image) - curve_charge(kappa).times_minus_i())
    order_four = curve_phi(curve_phi(curve_phi(image))) == kappa
    z = curve_charge(kappa)
    if z.is_zero():
        return residual, order_four, True
    before = phase_of(_witness(z), (-1, 1))
    after = gamma_T_apply(before, lift)
    expected = before.shifted_half(-1)
    shifted = compare_phase(after, expected) is Order.EQ
    shifted &= after.witness == _witness(curve_charge(image))
    return residual, order_four, shifted


def verify_curve(n_random: int = 1000, seed: int = 0, bound: int = 20) -> dict:
    """Rotation of ``(rank, degree)`` under the curve transform: ``Z(Φκ) = -i Z(κ)``.

    The relabeled phase of every sampled class is compared exactly with the phase
    shifted by ``-1/2``.

    """
    rng = np.random.default_rng(seed)
    lift = rotation_lift()
    sample = [
        CurveClass(*(int(v) for v in rng.integers(-bound, bound + 1, size=2)))
        for _ in range(n_random)
    ]
    per_generator = {}
    worst, order_ok, phase_ok = 0.0, True, True
    for index, kappa in enumerate(list(CURVE_GENERATORS) + sample):
        residual, order_four, shifted = _curve_checks(kappa, lift)
        worst = max(worst, residual)
        order_ok &= order_four
        phase_ok &= shifted
        if index < len(CURVE_GENERATORS):
            per_generator[f"{kappa.r},{kappa.d}"] = residual
    report = {
        "suite": "curve",
        "mode": "exact",
        "n_classes": len(CURVE_GENERATORS) + n_random,
        "charge_rotation": worst == 0,
        "order_four": bool(order_ok),
        "phase_shift": "-1/2" if phase_ok else "mismatch",
        "max_residual": worst,
        "per_generator": per_generator,
        "pass": bool(worst == 0 and order_ok and phase_ok),
    }
    LOGGER.info("Curve suite: pass=%s.", report["pass"])
    return report


def _class_label(gamma: ChernClass) -> str:
    return ",".join(format_scalar(c) for c in gamma)
