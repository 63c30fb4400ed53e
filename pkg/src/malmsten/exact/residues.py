"""Exact residues of sinh((2k+1)z) / (z cosh^n z) at the poles z_l = (2l+1)i*pi/2.

Near z_l, cosh(z_l + w) = sinh(z_l) sinh(w), so 1/cosh^n has a Laurent series
with Gaussian-rational coefficients, while sinh((2k+1)z)/z is analytic there
and its Taylor coefficients carry negative powers of pi through 1/z_l.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .series import (
    GaussianRational,
    I,
    PiPoly,
    TruncatedSeries,
    series_invert,
    series_mul,
)


def _sinh_at_pole(pole_index: int) -> GaussianRational:
    # sinh((2l+1) i pi/2) = i sin((2l+1) pi/2) = i (-1)^l
    return I * (-1) ** (pole_index % 2)


def sinh_power_series(n: int, order: int) -> TruncatedSeries:
    """Taylor series of sinh(w)**n through w**order, by linearising the power.

    Even n: sinh^n w = 2^-n [ (-1)^(n/2) C(n, n/2) + 2 sum_{j<n/2} (-1)^j C(n,j) cosh((n-2j)w) ]
    Odd n:  sinh^n w = 2^(1-n) sum_{j<n/2} (-1)^j C(n,j) sinh((n-2j)w)
    """
    coeffs = []
    for m in range(order + 1):
        if (m - n) % 2:
            coeffs.append(Fraction(0))
            continue
        total = Fraction(0)
        for j in range((n + 1) // 2):
            total += 2 * (-1) ** j * comb(n, j) * Fraction((n - 2 * j) ** m, factorial(m))
        if n % 2 == 0 and m == 0:
            total += (-1) ** (n // 2) * comb(n, n // 2)
        coeffs.append(total / 2**n)
    return TruncatedSeries(0, coeffs)


def laurent_inverse_cosh_pow(n: int, order: int, pole_index: int = 0) -> TruncatedSeries:
    """Laurent series of 1/cosh(z_l + w)**n in w, through w**order (leading order -n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if order < -n:
        raise ValueError("order must be >= -n")
    depth = order + n  # coefficients needed beyond the leading one
    sh = sinh_power_series(n, n + depth)
    shifted = TruncatedSeries(n, sh.coefficients[n:])
    inv = series_invert(shifted)
    return inv.scale(_sinh_at_pole(pole_index) ** (-n))


def taylor_sinh_ratio(k: int, center_pole_index: int, order: int) -> TruncatedSeries:
    """Taylor series of sinh((2k+1)(z_l + w)) / (z_l + w) in w through w**order.

    Coefficients come from the Leibniz rule with
    d^r/dx^r x^-1 = (-1)^r r! x^-(r+1) and the sinh/cosh alternation of d^j sinh(ax);
    cosh(a z_l) vanishes so only even j contribute.
    """
    if k < 0 or order < 0:
        raise ValueError("k and order must be non-negative")
    a = 2 * k + 1
    odd = 2 * center_pole_index + 1
    sinh_az = I * (-1) ** (((a * odd - 1) // 2) % 2)
    inv_z = GaussianRational(0, Fraction(-2, odd))  # 1/z_l = -2i/((2l+1) pi)

    def recip_deriv(r: int) -> PiPoly:
        return PiPoly([(-(r + 1), (-1) ** r * factorial(r) * inv_z ** (r + 1))])

    coeffs = []
    for m in range(order + 1):
        total = PiPoly()
        for j in range(0, m + 1, 2):
            total = total + recip_deriv(m - j) * (comb(m, j) * a**j * sinh_az)
        coeffs.append(total * Fraction(1, factorial(m)))
    return TruncatedSeries(0, coeffs)


def residue_at_pole(n: int, k: int, l: int) -> PiPoly:
    """Residue of sinh((2k+1)z)/(z cosh^n z) at z_l, exact in powers of pi.

    ``.pairs()`` on the result lists (Gaussian-rational coefficient, power of pi).
    """
    if n < 1:
        raise ValueError("n must be positive")
    laurent = laurent_inverse_cosh_pow(n, -1, l)
    taylor = taylor_sinh_ratio(k, l, n - 1)
    product = series_mul(laurent, taylor)
    c = product.coefficient(-1)
    return c if isinstance(c, PiPoly) else PiPoly([(0, c)])


__all__ = [
    "sinh_power_series",
    "laurent_inverse_cosh_pow",
    "taylor_sinh_ratio",
    "residue_at_pole",
]
