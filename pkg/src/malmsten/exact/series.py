"""Truncated Laurent/Taylor series over exact scalars.

Scalars are Gaussian rationals, or polynomials in 1/pi with Gaussian-rational
coefficients (:class:`PiPoly`) when a pole location carries a factor of pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class SingularSeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value), Fraction(0))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return NotImplemented

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self, ctx):
        return ctx.mpc(ctx.mpf(self.re.numerator) / self.re.denominator, ctx.mpf(self.im.numerator) / self.im.denominator)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


@dataclass(frozen=True, init=False)
class PiPoly:
    """Finite sum of c_p * pi**p with Gaussian-rational c_p (p may be negative)."""

    terms: tuple[tuple[int, GaussianRational], ...]

    def __init__(self, terms: Iterable[tuple[int, object]] = ()):
        acc: dict[int, GaussianRational] = {}
        for p, c in terms:
            acc[p] = acc.get(p, ZERO) + GaussianRational.coerce(c)
        object.__setattr__(self, "terms", tuple(sorted((p, c) for p, c in acc.items() if c)))

    @classmethod
    def coerce(cls, value) -> "PiPoly":
        if isinstance(value, PiPoly):
            return value
        g = GaussianRational.coerce(value)
        if g is NotImplemented:
            return NotImplemented
        return cls([(0, g)])

    def __add__(self, other):
        o = PiPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return PiPoly(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return PiPoly((p, -c) for p, c in self.terms)

    def __sub__(self, other):
        return self + (-PiPoly.coerce(other))

    def __rsub__(self, other):
        return PiPoly.coerce(other) - self

    def __mul__(self, other):
        o = PiPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return PiPoly((p + q, a * b) for p, a in self.terms for q, b in o.terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = PiPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, ctx):
        total = ctx.mpc(0)
        for p, c in self.terms:
            total += c.to_mpc(ctx) * ctx.pi**p
        return total

    def pairs(self) -> list[tuple[GaussianRational, int]]:
        """The (coefficient, power-of-pi) pairs, ascending in the power."""
        return [(c, p) for p, c in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*pi^{p}" for p, c in self.terms)


def _zero_like(x):
    return PiPoly() if isinstance(x, PiPoly) else ZERO


@dataclass(frozen=True, init=False)
class TruncatedSeries:
    """sum_{k} coefficients[k] * w**(leading_order + k)  +  O(w**(truncation_order + 1))."""

    leading_order: int
    coefficients: tuple

    def __init__(self, leading_order: int, coefficients: Sequence):
        if not coefficients:
            raise ValueError("a truncated series needs at least one coefficient")
        coeffs = tuple(c if isinstance(c, PiPoly) else GaussianRational.coerce(c) for c in coefficients)
        object.__setattr__(self, "leading_order", int(leading_order))
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def truncation_order(self) -> int:
        return self.leading_order + len(self.coefficients) - 1

    def coefficient(self, power: int):
        k = power - self.leading_order
        if k < 0:
            return _zero_like(self.coefficients[0])
        if k >= len(self.coefficients):
            raise IndexError(f"w^{power} lies beyond truncation order {self.truncation_order}")
        return self.coefficients[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.leading_order, self.coefficients[: order - self.leading_order + 1])

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries(self.leading_order, [factor * c for c in self.coefficients])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.leading_order == other.leading_order
            and self.truncation_order == other.truncation_order
            and all(a == b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __hash__(self):
        return hash((self.leading_order, self.coefficients))

    def __str__(self):
        parts = [f"({c})*w^{self.leading_order + k}" for k, c in enumerate(self.coefficients) if c]
        return " + ".join(parts or ["0"]) + f" + O(w^{self.truncation_order + 1})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product; the result is valid only as far as both factors are known."""
    lead = a.leading_order + b.leading_order
    trunc = min(a.truncation_order + b.leading_order, b.truncation_order + a.leading_order)
    n = trunc - lead + 1
    out = []
    for m in range(n):
        acc = _zero_like(a.coefficients[0] if isinstance(a.coefficients[0], PiPoly) else b.coefficients[0])
        for i in range(max(0, m - len(b.coefficients) + 1), min(m, len(a.coefficients) - 1) + 1):
            acc = acc + a.coefficients[i] * b.coefficients[m - i]
        out.append(acc)
    return TruncatedSeries(lead, out)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    lead = min(a.leading_order, b.leading_order)
    trunc = min(a.truncation_order, b.truncation_order)
    return TruncatedSeries(lead, [a.coefficient(p) + b.coefficient(p) for p in range(lead, trunc + 1)])


def series_pow(a: TruncatedSeries, n: int) -> TruncatedSeries:
    if n < 0:
        return series_pow(series_invert(a), -n)
    out = TruncatedSeries(0, [ONE] * 1 + [ZERO] * (a.truncation_order - a.leading_order))
    for _ in range(n):
        out = series_mul(out, a)
    return out


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the leading order changes sign."""
    a0 = a.coefficients[0]
    if isinstance(a0, PiPoly):
        if len(a0.terms) != 1:
            raise SingularSeriesError("leading coefficient is not a unit")
        p, c = a0.terms[0]
        inv0 = PiPoly([(-p, c.inverse())])
    else:
        if not a0:
            raise SingularSeriesError("leading coefficient is zero")
        inv0 = a0.inverse()
    out = [inv0]
    for k in range(1, len(a.coefficients)):
        acc = _zero_like(inv0)
        for j in range(1, k + 1):
            acc = acc + a.coefficients[j] * out[k - j]
        out.append(-(inv0 * acc))
    return TruncatedSeries(-a.leading_order, out)


def sinh_series(order: int, scale: Fraction | int = 1) -> TruncatedSeries:
    """Taylor series of sinh(scale * w) through w**order."""
    coeffs = []
    fact = 1
    for m in range(order + 1):
        if m:
            fact *= m
        coeffs.append(Fraction(scale) ** m / fact if m % 2 else 0)
    return TruncatedSeries(0, coeffs)


def cosh_series(order: int, scale: Fraction | int = 1) -> TruncatedSeries:
    coeffs = []
    fact = 1
    for m in range(order + 1):
        if m:
            fact *= m
        coeffs.append(Fraction(scale) ** m / fact if m % 2 == 0 else 0)
    return TruncatedSeries(0, coeffs)
