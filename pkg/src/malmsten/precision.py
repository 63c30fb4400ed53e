"""Arbitrary-precision reals with a tracked worst-case error bound.

Each call works in its own mpmath context so no global precision state is
shared between threads.  Contexts are cached per thread and per precision.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath.ctx_mp import MPContext

GUARD_DIGITS = 10

_local = threading.local()


def context_for_dps(dps: int) -> MPContext:
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(dps)
    if ctx is None:
        ctx = MPContext()
        ctx.dps = dps
        cache[dps] = ctx
    return ctx


def working_context(digits: int) -> MPContext:
    """Context carrying ``digits`` plus the fixed guard digits."""
    return context_for_dps(digits + GUARD_DIGITS)


def to_mpf(ctx: MPContext, value):
    if isinstance(value, PrecisionReal):
        return ctx.mpf(value.value)
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    if isinstance(value, str) and "/" in value:
        return to_mpf(ctx, Fraction(value))
    return ctx.mpf(value)


def _ulp(ctx: MPContext, x):
    return abs(x) * ctx.ldexp(ctx.mpf(1), 1 - ctx.prec)


Number = Union[int, Fraction, "PrecisionReal"]


@dataclass(frozen=True)
class PrecisionReal:
    """``value`` with |true - value| <= ``error_bound``."""

    value: object  # mpf
    error_bound: object  # mpf, non-negative
    digits_requested: int

    @classmethod
    def exact(cls, value, digits: int) -> "PrecisionReal":
        """Round an exact quantity (int, Fraction, decimal string) into a PrecisionReal."""
        ctx = working_context(digits)
        v = to_mpf(ctx, value)
        exact_input = isinstance(value, int) or (isinstance(value, Fraction) and _is_dyadic(value))
        err = ctx.mpf(0) if exact_input and _fits(ctx, value) else _ulp(ctx, v)
        return cls(v, err, digits)

    @classmethod
    def from_mpf(cls, value, error_bound, digits: int) -> "PrecisionReal":
        ctx = working_context(digits)
        v = ctx.mpf(value)
        return cls(v, ctx.mpf(error_bound) + _ulp(ctx, v), digits)

    @property
    def ctx(self) -> MPContext:
        return working_context(self.digits_requested)

    def is_certified(self, digits: int | None = None) -> bool:
        d = self.digits_requested if digits is None else digits
        return self.error_bound < self.ctx.mpf(10) ** (-d)

    def certified_digits(self) -> int:
        """Number of correct decimal places guaranteed by the error bound."""
        if self.error_bound == 0:
            return self.ctx.dps
        return max(0, int(-self.ctx.log10(self.error_bound)))

    def _binary(self, other, op):
        digits = max(self.digits_requested, getattr(other, "digits_requested", 0))
        ctx = working_context(digits)
        a, ea = ctx.mpf(self.value), ctx.mpf(self.error_bound)
        if isinstance(other, PrecisionReal):
            b, eb = ctx.mpf(other.value), ctx.mpf(other.error_bound)
        else:
            b = to_mpf(ctx, other)
            eb = ctx.mpf(0) if isinstance(other, int) else _ulp(ctx, b)
        if op == "+":
            v, e = a + b, ea + eb
        elif op == "-":
            v, e = a - b, ea + eb
        elif op == "*":
            v, e = a * b, abs(a) * eb + abs(b) * ea + ea * eb
        elif op == "/":
            if abs(b) <= eb:
                raise ZeroDivisionError("divisor interval contains zero")
            v = a / b
            e = (ea + abs(v) * eb) / (abs(b) - eb)
        else:  # pragma: no cover
            raise ValueError(op)
        return PrecisionReal(v, e + _ulp(ctx, v), digits)

    def __add__(self, other):
        return self._binary(other, "+")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "-")

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binary(other, "*")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, "/")

    def __rtruediv__(self, other):
        return PrecisionReal.exact(other, self.digits_requested) / self

    def __neg__(self):
        return PrecisionReal(-self.value, self.error_bound, self.digits_requested)

    def __abs__(self):
        return PrecisionReal(abs(self.value), self.error_bound, self.digits_requested)

    def __float__(self):
        return float(self.value)

    def with_digits(self, digits: int) -> "PrecisionReal":
        return PrecisionReal(self.value, self.error_bound, digits)

    def contains(self, x) -> bool:
        ctx = self.ctx
        return abs(ctx.mpf(self.value) - to_mpf(ctx, x)) <= self.error_bound

    def agrees_with(self, other: "PrecisionReal", digits: int) -> bool:
        ctx = working_context(max(self.digits_requested, other.digits_requested))
        return abs(ctx.mpf(self.value) - ctx.mpf(other.value)) < ctx.mpf(10) ** (-digits)

    def decimal(self, digits: int | None = None) -> str:
        ctx = self.ctx
        d = self.digits_requested if digits is None else digits
        return ctx.nstr(self.value, d, strip_zeros=False)

    def __str__(self):
        return f"{self.decimal()} ± {self.ctx.nstr(self.error_bound, 3)}"

    def __repr__(self):
        return f"PrecisionReal({self.decimal()}, err={self.ctx.nstr(self.error_bound, 3)})"

    def to_json(self) -> dict:
        ctx = self.ctx
        full = ctx.dps + 5
        return {
            "value": ctx.nstr(self.value, full, strip_zeros=False),
            "error_bound": ctx.nstr(self.error_bound, full),
            "digits": self.digits_requested,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PrecisionReal":
        digits = int(data["digits"])
        ctx = working_context(digits)
        return cls(ctx.mpf(data["value"]), ctx.mpf(data["error_bound"]), digits)

    def __eq__(self, other):
        if not isinstance(other, PrecisionReal):
            return NotImplemented
        return (
            self.digits_requested == other.digits_requested
            and self.value == other.value
            and self.error_bound == other.error_bound
        )

    def __hash__(self):
        return hash((self.digits_requested, self.value, self.error_bound))


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def _fits(ctx: MPContext, value) -> bool:
    q = Fraction(value)
    return q.numerator.bit_length() <= ctx.prec


def sum_reals(terms, digits: int) -> PrecisionReal:
    total = PrecisionReal.exact(0, digits)
    for t in terms:
        total = total + t
    return total
