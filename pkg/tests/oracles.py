"""Independent reference computations used by the tests.

Each routine here takes a different path from the library code it checks:
recurrences where the library uses closed sums, plain contour sums where it
uses Laurent algebra, and so on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath


@lru_cache(maxsize=None)
def bernoulli_rows(n_max: int) -> tuple[Fraction, ...]:
    """B_0..B_n_max from sum_{k=0}^{n} C(n+1, k) B_k = 0."""
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        b.append(-sum(comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return tuple(b)


@lru_cache(maxsize=None)
def euler_rows(n_max: int) -> tuple[int, ...]:
    """Secant-convention E_0..E_n_max from sum over even k of C(n, k) E_k = 0 for even n > 0.

    This is the coefficient identity of cosh(x) * sech(x) = 1.
    """
    e = [Fraction(1)]
    for n in range(1, n_max + 1):
        if n % 2:
            e.append(Fraction(0))
        else:
            e.append(-sum(comb(n, k) * e[k] for k in range(0, n, 2)))
    return tuple(int(x) for x in e)


@lru_cache(maxsize=None)
def eulerian_a_row(n: int) -> tuple[int, ...]:
    """Row n of the type-A triangle from A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)."""
    if n == 0:
        return (1,)
    prev = eulerian_a_row(n - 1)

    def at(k):
        return prev[k] if 0 <= k < len(prev) else 0

    return tuple((k + 1) * at(k) + (n - k) * at(k - 1) for k in range(n))


def eulerian_b_row(n: int) -> tuple[int, ...]:
    """Row n of the type-B triangle: coefficients of (sum_k (2k+1)^n x^k) * (1-x)^(n+1)."""
    length = n + 1
    series = [(2 * k + 1) ** n for k in range(length)]
    factor = [(-1) ** j * comb(n + 1, j) for j in range(n + 2)]
    return tuple(sum(series[i] * factor[m - i] for i in range(m + 1)) for m in range(length))


def contour_residue(n: int, k: int, l: int, dps: int = 40, nodes: int = 160):
    """Residue of sinh((2k+1)z)/(z cosh^n z) at z_l = (2l+1) i pi/2.

    Trapezoid rule on the unit circle about z_l; the nearest other pole is
    pi away, so the error falls like pi^-nodes.
    """
    with mpmath.workdps(dps):
        a = 2 * k + 1
        center = mpmath.mpc(0, (2 * l + 1) * mpmath.pi / 2)
        total = mpmath.mpc(0)
        for j in range(nodes):
            u = mpmath.expjpi(mpmath.mpf(2 * j) / nodes)
            z = center + u
            total += mpmath.sinh(a * z) / (z * mpmath.cosh(z) ** n) * u
        return total / nodes


def direct_polylog_neg(n: int, z, terms: int):
    """Partial sum of sum_{k>=1} k^n z^k."""
    return sum(Fraction(k) ** n * z**k for k in range(1, terms + 1))


def machin_pi(dps: int):
    """pi = 16 atan(1/5) - 4 atan(1/239) with plain Taylor series."""
    with mpmath.workdps(dps + 10):

        def atan_inv(m):
            x = mpmath.mpf(1) / m
            total, term, k = mpmath.mpf(0), x, 0
            eps = mpmath.mpf(10) ** (-(dps + 10))
            while abs(term) > eps:
                total += term / (2 * k + 1) * (-1) ** k
                term *= x * x
                k += 1
            return total

        return 16 * atan_inv(5) - 4 * atan_inv(239)


def euler_maclaurin_zeta(s: int, dps: int, cut: int = 40):
    """zeta(s) = sum_{k<N} k^-s + N^(1-s)/(s-1) + N^-s/2 + Bernoulli tail corrections."""
    b = bernoulli_rows(2 * 40)
    with mpmath.workdps(dps + 10):
        N = mpmath.mpf(cut)
        total = mpmath.fsum(mpmath.mpf(k) ** -s for k in range(1, cut))
        total += N ** (1 - s) / (s - 1) + N**-s / 2
        rising = mpmath.mpf(s)  # s (s+1) ... (s + 2j - 2)
        for j in range(1, 40):
            term = b[2 * j] / factorial(2 * j)
            total += mpmath.mpf(term.numerator) / term.denominator * rising * N ** (-s - 2 * j + 1)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        return total


def hurwitz_beta(s, dps: int):
    """beta(s) = 4^-s (zeta(s, 1/4) - zeta(s, 3/4)), analytic in s."""
    with mpmath.workdps(dps + 10):
        return mpmath.mpf(4) ** -s * (mpmath.zeta(s, mpmath.mpf(1) / 4) - mpmath.zeta(s, mpmath.mpf(3) / 4))


def lll_relation(values, scale_digits: int):
    """Shortest-vector integer relation from mpmath-free LLL on the scaled lattice.

    Builds rows e_i | round(10^d v_i) and reduces with exact rational
    Gram-Schmidt.  Suitable only for a handful of values.
    """
    n = len(values)
    scale = 10**scale_digits
    basis = []
    for i, v in enumerate(values):
        row = [0] * n + [int(mpmath.nint(v * scale))]
        row[i] = 1
        basis.append(row)
    reduced = _lll(basis)
    best = min(reduced, key=lambda r: sum(x * x for x in r))
    rel = best[:n]
    if rel and next(x for x in rel if x) < 0:
        rel = [-x for x in rel]
    return tuple(rel)


def _lll(basis, delta=Fraction(3, 4)):
    b = [list(map(int, row)) for row in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu = gram_schmidt()
        if dot(bstar[k], bstar[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bstar[k - 1], bstar[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gram_schmidt()
            k = max(k - 1, 1)
    return b
