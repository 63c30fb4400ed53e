"""Combinatorial number sequences: Bernoulli, Euler (secant) and Eulerian numbers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = ["bernoulli", "euler_number", "eulerian_A", "eulerian_B"]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2.

    Uses the double sum  B_n = sum_k 1/(k+1) sum_j (-1)^j C(k,j) j^n,
    which needs no earlier Bernoulli numbers.
    """
    if n < 0:
        raise ValueError("bernoulli: n must be non-negative")
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    total = Fraction(0)
    for k in range(n + 1):
        inner = sum((-1) ** j * comb(k, j) * j**n for j in range(k + 1))
        total += Fraction(inner, k + 1)
    return total


@lru_cache(maxsize=None)
def _secant_row(n: int) -> tuple[int, ...]:
    # Seidel boustrophedon triangle; the alternating row ends hold the zigzag numbers.
    row = [1]
    rows = [tuple(row)]
    for m in range(1, n + 1):
        nxt = [0]
        for v in reversed(row):
            nxt.append(nxt[-1] + v)
        row = nxt
        rows.append(tuple(row))
    return rows[n]


def euler_number(n: int) -> int:
    """Euler number E_n in the secant convention  sech x = sum E_n x^n / n!."""
    if n < 0 or n % 2:
        raise ValueError("euler_number: n must be a non-negative even integer")
    zigzag = _secant_row(n)[-1]
    return (-1) ** (n // 2) * zigzag


def eulerian_A(n: int, k: int) -> int:
    """Eulerian number <n, k>: numerator coefficients of Li_{-n}(z)(1-z)^{n+1}."""
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"eulerian_A: need n >= 1 and 0 <= k <= n-1, got ({n}, {k})")
    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 2))


def eulerian_B(n: int, k: int) -> int:
    """Type-B Eulerian number: P_n(x)(1-x)^{n+1} = sum_k B(n,k) x^k with P_n(x) = sum (2j+1)^n x^j."""
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"eulerian_B: need 0 <= k <= n, got ({n}, {k})")
    return sum((-1) ** (k - j) * comb(n + 1, k - j) * (2 * j + 1) ** n for j in range(k + 1))
