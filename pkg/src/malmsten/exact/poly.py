"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from math import lcm
from typing import Iterable


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (Fraction(0),)


@dataclass(frozen=True, init=False)
class RationalPolynomial:
    """Polynomial sum coeffs[i] * x**i; the zero polynomial is ``(0,)``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = (0,)):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def __add__(self, other):
        other = _as_poly(other)
        return RationalPolynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        # Horner; works for Fraction, int, mpf and complex inputs alike.
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else _lift(c, x))
        return acc

    def denominator_lcm(self) -> int:
        return lcm(*(c.denominator for c in self.coeffs))

    def to_integer(self) -> "RationalPolynomial":
        """Scale by the lcm of the denominators so all coefficients are integers."""
        return self * self.denominator_lcm()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _lift(c: Fraction, like):
    ctx = getattr(like, "context", None)
    if ctx is not None:
        return ctx.mpf(c.numerator) / c.denominator
    return c.numerator / c.denominator


def _as_poly(value) -> RationalPolynomial:
    if isinstance(value, RationalPolynomial):
        return value
    return RationalPolynomial([value])
