"""Catalog of singular integrand families and their point evaluation.

Every family is evaluated at a :class:`Point` that carries, besides x, the
distances to both interval ends and (when known exactly) |ln x|.  Kernels use
whichever representation avoids cancellation near a singular endpoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from .errors import DomainError, UnknownIdError
from .exact.numbers import eulerian_A, eulerian_B
from .exact.poly import RationalPolynomial
from .precision import PrecisionReal, context_for_dps, to_mpf, working_context


class Singularity(str, Enum):
    LOG_LOG = "log-log"
    ONE_OVER_LOG = "one-over-log"
    REMOVABLE = "removable"
    NONE = "none"


class Interval(str, Enum):
    UNIT = "(0,1)"
    QUARTER_PI = "(0,pi/4)"
    HALF_LINE = "(0,inf)"
    ABOVE_ONE = "(1,inf)"

    def bounds(self, ctx):
        return {
            Interval.UNIT: (ctx.mpf(0), ctx.mpf(1)),
            Interval.QUARTER_PI: (ctx.mpf(0), ctx.pi / 4),
            Interval.HALF_LINE: (ctx.mpf(0), ctx.inf),
            Interval.ABOVE_ONE: (ctx.mpf(1), ctx.inf),
        }[self]


@dataclass(frozen=True)
class Point:
    """An abscissa with cancellation-free side information.

    ``to_left``/``to_right`` are x - a and b - x (``inf`` for an infinite end);
    ``abs_log`` is |ln x| when the caller knows it exactly, else None.
    """

    x: object
    to_left: object
    to_right: object
    abs_log: object = None


# ---------------------------------------------------------------------------
# negative-order polylogarithm and the odd-power series P_n


def polylog_neg(n: int, z):
    """Li_{-n}(z) = sum_k <n,k> z^(n-k) / (1-z)^(n+1) for n >= 1.

    Exact for int/Fraction/GaussianRational input, otherwise evaluated in the
    arithmetic of ``z`` (mpf, mpc, float, complex).
    """
    if n < 1:
        raise DomainError("polylog_neg needs n >= 1")
    if z == 1:
        raise DomainError("Li_{-n} has a pole at z = 1")
    num = 0
    for k in range(n):
        num = num + eulerian_A(n, k) * z ** (n - k)
    den = (1 - z) ** (n + 1)
    if isinstance(z, int):
        return Fraction(num) / den
    return num / den


def p_poly(n: int, x):
    """P_n(x) = sum_k B(n,k) x^k / (1-x)^(n+1) = sum_j (2j+1)^n x^j."""
    if n < 0:
        raise DomainError("p_poly needs n >= 0")
    if x == 1:
        raise DomainError("P_n has a pole at x = 1")
    num = 0
    for k in range(n + 1):
        num = num + eulerian_B(n, k) * x**k
    den = (1 - x) ** (n + 1)
    if isinstance(x, int):
        return Fraction(num) / den
    return num / den


# ---------------------------------------------------------------------------
# shared numerics


def _q(ctx, r: Fraction):
    return ctx.mpf(r.numerator) / r.denominator


def log_inv(ctx, pt: Point):
    """ln(1/x) for x in (0,1)."""
    if pt.abs_log is not None:
        return ctx.mpf(pt.abs_log)
    if pt.to_right < 0.5:
        return -ctx.log1p(-pt.to_right)
    return -ctx.ln(pt.x)


def log_above_one(ctx, pt: Point):
    """ln x for x in (1,inf)."""
    if pt.abs_log is not None:
        return ctx.mpf(pt.abs_log)
    if pt.to_left < 0.5:
        return ctx.log1p(pt.to_left)
    return ctx.ln(pt.x)


def lnln(ctx, pt: Point):
    return ctx.ln(log_inv(ctx, pt))


def atanh_(ctx, pt: Point):
    """arctanh x = (ln(1+x) - ln(1-x))/2 with 1-x taken from the endpoint distance."""
    return (ctx.log1p(pt.x) - ctx.ln(pt.to_right)) / 2


def sqrt_one_minus_sq(ctx, pt: Point):
    return ctx.sqrt(pt.to_right * (1 + pt.x))


def sinh_over_x(ctx, a: int, x):
    """sinh(a x)/x, by its Taylor series when a x is tiny."""
    ax = a * x
    if abs(ax) < ctx.ldexp(1, -ctx.prec // 6):
        t = ax * ax
        return a * (1 + t / 6 + t * t / 120 + t * t * t / 5040)
    return ctx.sinh(ax) / x


# ---------------------------------------------------------------------------
# trigonometric numerators over ln(tan x)

# (rational part, sqrt(2)/2 part) of sin(w pi/4) and cos(w pi/4) for w mod 8
_SIN8 = [(0, 0), (0, 1), (1, 0), (0, 1), (0, 0), (0, -1), (-1, 0), (0, -1)]
_COS8 = [(1, 0), (0, 1), (0, 0), (0, -1), (-1, 0), (0, -1), (0, 0), (0, 1)]


@dataclass(frozen=True)
class TrigTerm:
    coeff: Fraction
    kind: str  # "sin" or "cos"
    freq: int

    def at_quarter_pi(self) -> tuple[Fraction, Fraction]:
        table = _SIN8 if self.kind == "sin" else _COS8
        r, s = table[self.freq % 8]
        return self.coeff * r, self.coeff * s

    def __str__(self):
        return f"{self.coeff}*{self.kind}{self.freq}"


def trig_value_at_quarter_pi(terms) -> tuple[Fraction, Fraction]:
    """f(pi/4) as (a, b) meaning a + b*sqrt(2)/2, exactly."""
    a = b = Fraction(0)
    for t in terms:
        r, s = t.at_quarter_pi()
        a += r
        b += s
    return a, b


def _trig_numerator(ctx, terms, pt: Point):
    if pt.to_right >= pt.x:
        x = pt.x
        total = ctx.mpf(0)
        for t in terms:
            fn = ctx.sin if t.kind == "sin" else ctx.cos
            total += _q(ctx, t.coeff) * fn(t.freq * x)
        return total
    # x = pi/4 - d; subtract f(pi/4) = 0 analytically
    d = pt.to_right
    half = ctx.sqrt(2) / 2
    total = ctx.mpf(0)
    for t in terms:
        sr, ss = _SIN8[t.freq % 8]
        cr, cs = _COS8[t.freq % 8]
        S = sr + ss * half
        C = cr + cs * half
        wd = t.freq * d
        cos_m1 = -2 * ctx.sin(wd / 2) ** 2
        sn = ctx.sin(wd)
        if t.kind == "sin":
            val = S * cos_m1 - C * sn
        else:
            val = C * cos_m1 + S * sn
        total += _q(ctx, t.coeff) * val
    return total


def log_tan(ctx, pt: Point):
    """ln(tan x) on (0, pi/4); near pi/4 uses ln tan(pi/4 - d) = -2 artanh(tan d)."""
    if pt.to_right < pt.x:
        return -2 * ctx.atanh(ctx.tan(pt.to_right))
    return ctx.ln(ctx.tan(pt.x))


# ---------------------------------------------------------------------------
# the catalog


@dataclass(frozen=True)
class Family:
    name: str
    interval: Interval
    description: str
    singularities: Callable[["KernelSpec"], tuple]
    validate: Callable[["KernelSpec"], None]
    build: Callable[["KernelSpec"], Callable]  # spec -> f(ctx, pt)
    arity: int  # number of integer params


def _endpoint_list(interval: Interval, left: Singularity, right: Singularity):
    a, b = {
        Interval.UNIT: ("0", "1"),
        Interval.QUARTER_PI: ("0", "pi/4"),
        Interval.HALF_LINE: ("0", "inf"),
        Interval.ABOVE_ONE: ("1", "inf"),
    }[interval]
    return ((a, left), (b, right))


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _n_at_least(lo: int):
    def check(spec):
        _need(len(spec.params) == 1, f"{spec.family} takes one integer parameter")
        _need(spec.params[0] >= lo, f"{spec.family} parameter must be >= {lo}")

    return check


def _build_F1(spec):
    def f(ctx, pt):
        x = pt.x
        x2 = x * x
        return x * (x2 * x2 - 4 * x2 + 1) * lnln(ctx, pt) / (1 + x2) ** 4

    return f


def _build_F2(spec):
    def f(ctx, pt):
        x = pt.x
        # (x^2 - 1)/ln x = d(1+x)/ln(1/x) with d = 1 - x
        return x * pt.to_right * (1 + x) / ((1 + x * x) ** 3 * log_inv(ctx, pt))

    return f


def _build_trig(terms):
    def f(ctx, pt):
        return _trig_numerator(ctx, terms, pt) / log_tan(ctx, pt)

    return f


def _check_trig(spec):
    _need(len(spec.data) > 0, "trigonometric kernel needs at least one term")
    for t in spec.data:
        _need(isinstance(t, TrigTerm) and t.kind in ("sin", "cos") and t.freq >= 0, f"bad trig term {t}")


def _build_F5(spec):
    k, m = spec.params
    a = 2 * k + 1

    def f(ctx, pt):
        return sinh_over_x(ctx, a, pt.x) / ctx.cosh(pt.x) ** m

    return f


def _check_F5(spec):
    _need(len(spec.params) == 2, "F5 takes (k, m)")
    k, m = spec.params
    _need(k >= 0 and m >= 1, "F5 needs k >= 0 and m >= 1")
    _need(2 * k + 1 < m, "F5 diverges unless 2k+1 < m")


def _build_F6(spec):
    k, m = spec.params

    def f(ctx, pt):
        return sinh_over_x(ctx, 2 * k, pt.x) / ctx.cosh(pt.x) ** m

    return f


def _check_F6(spec):
    _need(len(spec.params) == 2, "F6 takes (k, m)")
    k, m = spec.params
    _need(k >= 1 and m >= 1, "F6 needs k >= 1 and m >= 1")
    _need(2 * k < m, "F6 diverges unless 2k < m")


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    return tuple(eulerian_A(n, k) for k in range(n))


@lru_cache(maxsize=None)
def _eulerian_b_row(n: int) -> tuple[int, ...]:
    return tuple(eulerian_B(n, k) for k in range(n + 1))


def _build_F7(spec):
    n = 2 * spec.params[0] + 1
    row = _eulerian_row(n)

    def f(ctx, pt):
        x = pt.x
        z = -x * x
        # Li_{-n}(z)/x with the factor z = -x^2 cancelled against 1/x
        num = ctx.mpf(0)
        for k in range(n):
            num += row[k] * z ** (n - k - 1)
        return -x * num / (1 - z) ** (n + 1) * lnln(ctx, pt)

    return f


def _build_F8(spec):
    n = 2 * spec.params[0]
    row = _eulerian_b_row(n)

    def f(ctx, pt):
        u = -pt.x * pt.x
        num = ctx.mpf(0)
        for k in range(n, -1, -1):
            num = num * u + row[k]
        return num / (1 - u) ** (n + 1) * lnln(ctx, pt)

    return f


def _build_F9(spec):
    p = 2 * spec.params[0] - 1

    def f(ctx, pt):
        return pt.x**p / atanh_(ctx, pt)

    return f


def _build_F10(spec):
    p = 2 * spec.params[0] - 1

    def f(ctx, pt):
        return pt.x**p / (sqrt_one_minus_sq(ctx, pt) * atanh_(ctx, pt))

    return f


def _build_F11(spec):
    variant, n = spec.params

    def f(ctx, pt):
        x = pt.x
        if variant == 0:
            t = ctx.tanh(x)
            if n == 1:
                return (t / x) ** 2
            return t ** (2 * n - 2) * (t / x) ** 2
        return (ctx.tanh(x) / x) ** (n + 1)

    return f


def _check_F11(spec):
    _need(len(spec.params) == 2, "F11 takes (variant, n)")
    variant, n = spec.params
    _need(variant in (0, 1), "F11 variant is 0 (tanh^2n/x^2) or 1 (tanh^(n+1)/x^(n+1))")
    _need(n >= 1, "F11 needs n >= 1")


def _build_F12(spec):
    n = spec.params[0]

    def f(ctx, pt):
        x = pt.x
        return x ** (n - 1) * lnln(ctx, pt) / (1 + x * x) ** n

    return f


@lru_cache(maxsize=None)
def nested_binomial_weights(target: str, N: int) -> tuple[int, ...]:
    """Inner integer sums of the nested-binomial integrands on (1, inf)."""
    if target == "beta":
        return tuple(
            sum(comb(2 * k + 1, k - j) * (-1) ** (j + 1) * (2 * j + 1) ** (2 * N - 1) for j in range(k + 1))
            for k in range(N)
        )
    return tuple(
        sum(comb(2 * k, k - j) * (-1) ** j * (2 * j) ** (2 * N) for j in range(1, k + 1)) for k in range(1, N + 1)
    )


_F13_TARGETS = ("beta", "zeta")


def _build_F13(spec):
    target = _F13_TARGETS[spec.params[0]]
    N = spec.params[1]
    weights = nested_binomial_weights(target, N)

    def f(ctx, pt):
        x = pt.x
        x2 = x * x
        total = ctx.mpf(0)
        if target == "beta":
            for k, c in enumerate(weights):
                if c:
                    total += c * ((2 * k + 1) * x2 * x2 - 2 * (2 * k + 3) * x2 + 2 * k + 1) * x ** (2 * k) / (
                        x2 + 1
                    ) ** (2 * k + 3)
        else:
            for k, c in enumerate(weights, start=1):
                if c:
                    total += c * (2 * k * x2 * x2 - 2 * (2 * k + 2) * x2 + 2 * k) * x ** (2 * k - 1) / (
                        x2 + 1
                    ) ** (2 * k + 2)
        return total * ctx.ln(log_above_one(ctx, pt))

    return f


def _check_F13(spec):
    _need(len(spec.params) == 2, "F13 takes (target, N)")
    _need(spec.params[0] in (0, 1), "F13 target is beta or zeta")
    _need(spec.params[1] >= 1, "F13 needs N >= 1")


def _build_F14(spec):
    s = spec.params[0]

    def f(ctx, pt):
        return pt.x**s * lnln(ctx, pt)

    return f


def _poly_eval(ctx, coeffs, x):
    acc = ctx.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + _q(ctx, c)
    return acc


def _build_F15(spec):
    variant = spec.params[0]
    coeffs = spec.data

    def f(ctx, pt):
        x = pt.x
        v = x * _poly_eval(ctx, coeffs, x) / atanh_(ctx, pt)
        if variant == 1:
            v /= sqrt_one_minus_sq(ctx, pt)
        return v

    return f


def _check_F15(spec):
    _need(len(spec.params) == 1 and spec.params[0] in (0, 1), "F15 variant is 0 (arctanh) or 1 (sqrt*arctanh)")
    _need(any(c != 0 for c in spec.data), "F15 needs a nonzero polynomial")


def _build_ratlnln(spec):
    m = spec.params[0]
    coeffs = spec.data

    def f(ctx, pt):
        x = pt.x
        return _poly_eval(ctx, coeffs, x) * lnln(ctx, pt) / (1 + x * x) ** m

    return f


def _check_ratlnln(spec):
    _need(len(spec.params) == 1 and spec.params[0] >= 0, "RATLNLN takes the exponent m >= 0 of (1+x^2)^m")
    _need(any(c != 0 for c in spec.data), "RATLNLN needs a nonzero numerator")


def _check_none(spec):
    _need(not spec.params, f"{spec.family} takes no parameters")


U, Q, H, A = Interval.UNIT, Interval.QUARTER_PI, Interval.HALF_LINE, Interval.ABOVE_ONE
LL, OL, RM, NO = Singularity.LOG_LOG, Singularity.ONE_OVER_LOG, Singularity.REMOVABLE, Singularity.NONE


def _fixed(interval, left, right):
    ends = _endpoint_list(interval, left, right)
    return lambda spec: ends


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family("F1", U, "x(x^4-4x^2+1) lnln(1/x)/(1+x^2)^4", _fixed(U, LL, LL), _check_none, _build_F1, 0),
        Family("F2", U, "x(x^2-1)/((1+x^2)^3 ln x)", _fixed(U, OL, RM), _check_none, _build_F2, 0),
        Family(
            "F3",
            Q,
            "sin(4n x)/ln(tan x)",
            _fixed(Q, OL, RM),
            _n_at_least(1),
            lambda s: _build_trig((TrigTerm(Fraction(1), "sin", 4 * s.params[0]),)),
            1,
        ),
        Family(
            "F4",
            Q,
            "cos((4n-2) x)/ln(tan x)",
            _fixed(Q, OL, RM),
            _n_at_least(1),
            lambda s: _build_trig((TrigTerm(Fraction(1), "cos", 4 * s.params[0] - 2),)),
            1,
        ),
        Family("F5", H, "sinh((2k+1)x)/(x cosh^m x)", _fixed(H, RM, NO), _check_F5, _build_F5, 2),
        Family("F6", H, "sinh(2k x)/(x cosh^m x)", _fixed(H, RM, NO), _check_F6, _build_F6, 2),
        Family("F7", U, "Li_{-2n-1}(-x^2) lnln(1/x)/x", _fixed(U, LL, LL), _n_at_least(1), _build_F7, 1),
        Family("F8", U, "Im[Li_{-2n}(ix)] lnln(1/x)/x", _fixed(U, LL, LL), _n_at_least(1), _build_F8, 1),
        Family("F9", U, "x^(2n-1)/arctanh x", _fixed(U, RM, OL), _n_at_least(1), _build_F9, 1),
        Family("F10", U, "x^(2n-1)/(sqrt(1-x^2) arctanh x)", _fixed(U, RM, OL), _n_at_least(1), _build_F10, 1),
        Family(
            "F11", H, "tanh^(2n) x/x^2 (variant 0) or tanh^(n+1) x/x^(n+1) (variant 1)", _fixed(H, RM, NO),
            _check_F11, _build_F11, 2,
        ),
        Family("F12", U, "x^(n-1) lnln(1/x)/(1+x^2)^n", _fixed(U, LL, LL), _n_at_least(1), _build_F12, 1),
        Family(
            "F13", A, "nested-binomial rational kernel times ln(ln x) for beta(2N) or zeta(2N+1)",
            _fixed(A, LL, NO), _check_F13, _build_F13, 2,
        ),
        Family("F14", U, "x^s lnln(1/x)", _fixed(U, LL, LL), _n_at_least(0), _build_F14, 1),
        Family(
            "F15", U, "x P(x)/arctanh x (variant 0) or x P(x)/(sqrt(1-x^2) arctanh x) (variant 1)",
            _fixed(U, RM, OL), _check_F15, _build_F15, 1,
        ),
        Family(
            "TRIG", Q, "f(x)/ln(tan x) for a finite sine/cosine sum f", _fixed(Q, OL, RM), _check_trig,
            lambda s: _build_trig(s.data), 0,
        ),
        Family(
            "RATLNLN", U, "P(x) lnln(1/x)/(1+x^2)^m", _fixed(U, LL, LL), _check_ratlnln, _build_ratlnln, 1,
        ),
    ]
}


@dataclass(frozen=True)
class KernelSpec:
    family: str
    params: tuple[int, ...] = ()
    data: tuple = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnknownIdError(f"unknown kernel family {self.family!r}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if self.family in ("F15", "RATLNLN"):
            object.__setattr__(self, "data", tuple(Fraction(c) for c in self.data))
        FAMILIES[self.family].validate(self)

    @property
    def interval(self) -> Interval:
        return FAMILIES[self.family].interval

    @property
    def singularities(self) -> tuple[tuple[str, Singularity], ...]:
        return FAMILIES[self.family].singularities(self)

    @property
    def description(self) -> str:
        return FAMILIES[self.family].description

    @property
    def id(self) -> str:
        parts = [self.family]
        if self.family == "F13":
            parts += [_F13_TARGETS[self.params[0]], str(self.params[1])]
        else:
            parts += [str(p) for p in self.params]
        if self.family in ("F15", "RATLNLN"):
            parts.append(",".join(str(c) for c in self.data))
        elif self.family == "TRIG":
            parts.append(",".join(str(t) for t in self.data))
        return ":".join(parts)

    def __str__(self):
        return self.id

    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self.data)

    def trig_terms(self) -> tuple[TrigTerm, ...]:
        if self.family == "F3":
            return (TrigTerm(Fraction(1), "sin", 4 * self.params[0]),)
        if self.family == "F4":
            return (TrigTerm(Fraction(1), "cos", 4 * self.params[0] - 2),)
        if self.family == "TRIG":
            return self.data
        return ()

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        return parse_kernel(text)


_TRIG_TERM = re.compile(r"^(?:([+-]?\d+(?:/\d+)?)\*)?(sin|cos)(\d+)$")


def parse_trig_terms(text: str) -> tuple[TrigTerm, ...]:
    terms = []
    for raw in text.split(","):
        m = _TRIG_TERM.match(raw.strip())
        if not m:
            raise UnknownIdError(f"bad trig term {raw!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        terms.append(TrigTerm(coeff, m.group(2), int(m.group(3))))
    return tuple(terms)


def parse_kernel(text: str) -> KernelSpec:
    """Parse a kernel id such as ``F3:2``, ``F5:0:3``, ``F13:zeta:1`` or ``F15:0:1/7``."""
    parts = text.strip().split(":")
    family = parts[0].upper() if parts[0].upper() in FAMILIES else parts[0]
    if family not in FAMILIES:
        raise UnknownIdError(f"unknown kernel id {text!r}")
    fam = FAMILIES[family]
    try:
        if family == "F13":
            _need(len(parts) == 3, "F13 ids look like F13:beta:N")
            _need(parts[1] in _F13_TARGETS, "F13 target must be beta or zeta")
            return KernelSpec(family, (_F13_TARGETS.index(parts[1]), int(parts[2])))
        if family == "TRIG":
            _need(len(parts) == 2, "TRIG ids look like TRIG:sin4,-1/2*cos6")
            return KernelSpec(family, (), parse_trig_terms(parts[1]))
        if family in ("F15", "RATLNLN"):
            _need(len(parts) == 3, f"{family} ids look like {family}:<int>:<c0>,<c1>,...")
            coeffs = tuple(Fraction(c) for c in parts[2].split(","))
            return KernelSpec(family, (int(parts[1]),), coeffs)
        ints = tuple(int(p) for p in parts[1:])
        _need(len(ints) == fam.arity, f"{family} takes {fam.arity} integer parameter(s)")
        return KernelSpec(family, ints)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UnknownIdError(f"cannot parse kernel id {text!r}: {exc}") from exc


@lru_cache(maxsize=512)
def compiled(spec: KernelSpec) -> Callable:
    """The evaluator f(ctx, point) for a spec."""
    return FAMILIES[spec.family].build(spec)


def point_at(ctx, spec: KernelSpec, x) -> Point:
    a, b = spec.interval.bounds(ctx)
    x = ctx.mpf(x)
    if not (a < x < b):
        raise DomainError(f"x = {ctx.nstr(x, 10)} is not strictly inside {spec.interval.value}")
    to_right = b - x if b != ctx.inf else ctx.inf
    return Point(x, x - a, to_right)


def eval_integrand(spec: KernelSpec, x, digits: int) -> PrecisionReal:
    """Integrand value at an interior point, with an error bound from a precision-doubling check."""
    values = []
    for extra in (0, digits + 10):
        ctx = working_context(digits + extra)
        xv = to_mpf(ctx, x)
        values.append(compiled(spec)(ctx, point_at(ctx, spec, xv)))
    ctx = working_context(digits)
    hi = values[1]
    err = abs(ctx.mpf(values[0]) - ctx.mpf(hi))
    if isinstance(x, PrecisionReal) and x.error_bound:
        # first-order sensitivity to the abscissa uncertainty
        ctxh = context_for_dps(2 * digits + 20)
        xv = to_mpf(ctxh, x)
        h = ctxh.mpf(x.error_bound) * 2 + ctxh.mpf(10) ** (-(digits + 15))
        f = compiled(spec)
        lo_pt = point_at(ctxh, spec, xv - h)
        hi_pt = point_at(ctxh, spec, xv + h)
        err += abs(f(ctxh, hi_pt) - f(ctxh, lo_pt))
    return PrecisionReal.from_mpf(hi, err, digits)
