"""Closed-form expansion of the positive root of ``B u² + v u - A`` in ``w = 1/v``.

The root is ``u = 2A / (v + sqrt(v² + 4AB)) = 2Aw / (1 + sqrt(1 + 4ABw²))``. Its
coefficients are computed with sympy and serve as an independent check of the fixed
point iteration of the package.

"""

from fractions import Fraction

import sympy


def u_root_coefficients(m, alpha, e, n_terms):
    """Coefficients of ``w, w², ..., w^{n_terms}`` of the positive root.

    Args:
        m, alpha, e: Rational parameters with ``m > e``, ``α > 0``.
        n_terms (int): Number of coefficients.

    Returns:
        list: Fractions, starting with the coefficient of ``w``.

    """
    w = sympy.Symbol("w")
    big_a = sympy.Rational(str(Fraction(m) + Fraction(alpha) - Fraction(e)))
    big_b = sympy.Rational(str(Fraction(m) - Fraction(e) / 2))
    root = 2 * big_a * w / (1 + sympy.sqrt(1 + 4 * big_a * big_b * w**2))
    expansion = sympy.series(root, w, 0, n_terms + 1).removeO()
    return [
        Fraction(int(c.p), int(c.q))
        for c in (sympy.Rational(expansion.coeff(w, k)) for k in range(1, n_terms + 1))
    ]
