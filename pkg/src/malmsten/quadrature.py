"""Double-exponential quadrature for the catalog's singular integrands.

Three transforms cover every interval in the catalog:

* tanh-sinh on a finite (a, b): x = a + (b-a)/(1+exp(-2u)), u = (pi/2) sinh t;
* exp-sinh on (0, inf): x = exp((pi/2) sinh t);
* log pullback for log-log kernels: x = exp(-s) on (0,1) or x = exp(s) on
  (1,inf), with s itself on exp-sinh nodes, so ln ln(1/x) = ln s exactly.

Nodes are generated at 1.5x the working precision and cached per
(transform, precision, level).  Each level halves the step and reuses the
previous level's sum.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DivergenceError, PrecisionFailure
from .kernels import Interval, KernelSpec, Point, Singularity, compiled, trig_value_at_quarter_pi
from .precision import GUARD_DIGITS, PrecisionReal, context_for_dps, working_context

MAX_LEVELS = 10


class Transform(str, Enum):
    TANH_SINH = "tanh-sinh"
    EXP_SINH = "exp-sinh"
    LOG_PULLBACK = "log-pullback"


@dataclass(frozen=True)
class QuadratureResult:
    value: PrecisionReal
    nodes_used: int
    levels: int
    transform: Transform

    def to_json(self) -> dict:
        return {
            **self.value.to_json(),
            "nodes_used": self.nodes_used,
            "levels": self.levels,
            "transform": self.transform.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadratureResult":
        return cls(
            PrecisionReal.from_json(data), int(data["nodes_used"]), int(data["levels"]), Transform(data["transform"])
        )


# ---------------------------------------------------------------------------
# node tables


class _NodeCache:
    """Immutable node tables built once per key under a single-writer lock."""

    def __init__(self):
        self._tables: dict = {}
        self._lock = threading.Lock()

    def get(self, kind: str, dps: int, level: int):
        key = (kind, dps, level)
        table = self._tables.get(key)
        if table is None:
            with self._lock:
                table = self._tables.get(key)
                if table is None:
                    table = _build_nodes(kind, dps, level)
                    self._tables[key] = table
        return table

    def clear(self):
        with self._lock:
            self._tables.clear()


NODE_CACHE = _NodeCache()


def _t_limits(kind: str, dps: int) -> tuple[float, float]:
    """Largest |t| worth tabulating on the negative and positive side."""
    tiny = (dps + 15) * math.log(10)
    if kind == "tanh-sinh":
        # complement of the abscissa ~ exp(-2u); the extra room lets
        # (1-x)^(-1/2) endpoints decay below the threshold as well
        t = math.asinh(2 * tiny / math.pi) + 1
        return t, t
    # exp-sinh: left end x ~ exp(-u), with room for slowly vanishing factors
    # such as x ln x; right end allows x up to 10^(2 dps)
    left = math.asinh(4 * tiny / math.pi) + 1
    right = math.asinh(2 * math.log(2 * tiny * 10) / math.pi) + 0.5
    right = max(right, math.asinh(4 * tiny / math.pi))
    return left, right


def _build_nodes(kind: str, dps: int, level: int):
    """Return (positive side, negative side) lists, each ordered by increasing |t|.

    tanh-sinh entries are (sigma, 1 - sigma, weight) on the unit interval;
    exp-sinh entries are (x, weight).  Weights exclude the step h.
    """
    gen = context_for_dps(dps * 3 // 2 + 10)
    out = context_for_dps(dps)
    h = gen.ldexp(1, -level)
    left_lim, right_lim = _t_limits(kind, dps)
    step = 1 if level == 0 else 2
    start = 0 if level == 0 else 1
    sides = []
    for sign, lim in ((1, right_lim), (-1, left_lim)):
        nodes = []
        k = start if sign == 1 else max(start, 1)
        while k * float(h) <= lim:
            t = sign * k * h
            u = gen.pi / 2 * gen.sinh(t)
            dudt = gen.pi / 2 * gen.cosh(t)
            if kind == "tanh-sinh":
                e = gen.exp(-2 * u)
                sigma = 1 / (1 + e)
                comp = e / (1 + e)
                w = 2 * sigma * comp * dudt
                nodes.append((out.mpf(sigma), out.mpf(comp), out.mpf(w)))
            else:
                x = gen.exp(u)
                nodes.append((out.mpf(x), out.mpf(x * dudt)))
            k += step
        sides.append(tuple(nodes))
    return tuple(sides)


# ---------------------------------------------------------------------------
# transform selection and point construction


def choose_transform(spec: KernelSpec) -> Transform:
    """Pick the transform from the interval and the singularity classes."""
    classes = {cls for _, cls in spec.singularities}
    if Singularity.LOG_LOG in classes and spec.interval in (Interval.UNIT, Interval.ABOVE_ONE):
        return Transform.LOG_PULLBACK
    if spec.interval == Interval.HALF_LINE:
        return Transform.EXP_SINH
    return Transform.TANH_SINH


def _point_maker(transform: Transform, interval: Interval, ctx):
    """Map a cached node to (Point, jacobian weight factor)."""
    if transform == Transform.TANH_SINH:
        a, b = interval.bounds(ctx)
        length = b - a

        def make(node):
            sigma, comp, w = node
            left = length * sigma
            return Point(a + left, left, length * comp), length * w

        return make
    if transform == Transform.EXP_SINH:
        if interval != Interval.HALF_LINE:
            raise ValueError("exp-sinh needs (0, inf)")

        def make(node):
            x, w = node
            return Point(x, x, ctx.inf), w

        return make
    if interval == Interval.UNIT:

        def make(node):
            s, w = node
            x = ctx.exp(-s)
            return Point(x, x, -ctx.expm1(-s), s), w * x

        return make
    if interval == Interval.ABOVE_ONE:

        def make(node):
            s, w = node
            x = ctx.exp(s)
            return Point(x, ctx.expm1(s), ctx.inf, s), w * x

        return make
    raise ValueError(f"log pullback is not defined on {interval.value}")


def _check_convergent(spec: KernelSpec):
    """Exact integrability test for f(x)/ln(tan x): f must vanish at pi/4."""
    terms = spec.trig_terms()
    if terms:
        a, b = trig_value_at_quarter_pi(terms)
        if a != 0 or b != 0:
            raise DivergenceError(
                f"{spec.id}: numerator does not vanish at pi/4, so the integrand has a 1/(x - pi/4) pole"
            )


# ---------------------------------------------------------------------------
# the driver


def _level_sum(f, ctx, make, table, threshold, tail_limit):
    """Sum f*w over one level's new nodes, stopping each side once terms vanish.

    A side that runs out of nodes while its last term still exceeds
    ``tail_limit`` marks the integral as non-decaying.
    Returns (sum, absolute sum, nodes evaluated, decayed on both sides).
    """
    total = ctx.mpf(0)
    mag = ctx.mpf(0)
    count = 0
    decayed = True
    for side in table:
        quiet = 0
        side_done = False
        term = ctx.mpf(0)
        for node in side:
            pt, w = make(node)
            term = f(ctx, pt) * w
            count += 1
            total += term
            mag += abs(term)
            if abs(term) < threshold:
                quiet += 1
                if quiet >= 2:
                    side_done = True
                    break
            else:
                quiet = 0
        if not side_done and abs(term) > tail_limit:
            decayed = False
    return total, mag, count, decayed


def integrate_function(f, interval: Interval, transform: Transform, digits: int, max_levels: int = MAX_LEVELS):
    """Integrate f(ctx, Point) over ``interval`` with the given transform."""
    dps = digits + GUARD_DIGITS
    ctx = context_for_dps(dps)
    kind = "tanh-sinh" if transform == Transform.TANH_SINH else "exp-sinh"
    make = _point_maker(transform, interval, ctx)
    target = ctx.mpf(10) ** (-(digits + 1))
    threshold = ctx.mpf(10) ** (-(dps + 5))

    estimate = None
    raw = ctx.mpf(0)
    mag_total = ctx.mpf(0)
    nodes = 0
    diffs = []
    for level in range(max_levels + 1):
        table = NODE_CACHE.get(kind, dps, level)
        h = ctx.ldexp(1, -level)
        s, mag, count, decayed = _level_sum(f, ctx, make, table, threshold * max(1, abs(raw)), target)
        nodes += count
        if not decayed:
            raise DivergenceError("integrand does not decay at the ends of the transformed range")
        raw += s
        mag_total += mag
        new = raw * h
        if estimate is not None:
            diff = abs(new - estimate)
            diffs.append(diff)
            rounding = mag_total * h * ctx.eps * 8
            if level >= 3 and diff < target:
                bound = diff + rounding
                return QuadratureResult(PrecisionReal.from_mpf(new, bound, digits), nodes, level + 1, transform)
            if len(diffs) >= 4 and diffs[-1] > diffs[-2] > diffs[-3] > diffs[-4]:
                raise DivergenceError("level-to-level differences grew for three consecutive levels")
        estimate = new
    best = PrecisionReal.from_mpf(estimate, diffs[-1] if diffs else ctx.inf, digits)
    raise PrecisionFailure(f"no convergence to {digits} digits after {max_levels} levels", best=best)


def integrate(spec: KernelSpec, digits: int, max_levels: int = MAX_LEVELS) -> QuadratureResult:
    """Integral of ``spec`` over its interval to ``digits`` decimal places."""
    if isinstance(spec, str):
        from .kernels import parse_kernel

        spec = parse_kernel(spec)
    _check_convergent(spec)
    transform = choose_transform(spec)
    return integrate_function(compiled(spec), spec.interval, transform, digits, max_levels)


def integrate_combination(terms, digits: int) -> PrecisionReal:
    """Sum of c * integral(spec) over (c, spec) pairs, with combined error bound."""
    total = PrecisionReal.exact(0, digits)
    for coeff, spec in terms:
        total = total + integrate(spec, digits).value * Fraction(coeff)
    return total


def verify_identity(identity_id: str, digits: int) -> PrecisionReal:
    """|lhs - rhs| of a registry identity, as a certified PrecisionReal."""
    from .identities import get_identity

    ident = get_identity(identity_id)
    lhs = integrate_combination(ident.lhs, digits)
    rhs = ident.rhs_value(digits)
    return abs(lhs - rhs)


VERIFY_MARGIN = 5


def residual_passes(residual: PrecisionReal, digits: int) -> bool:
    """Success means the residual plus its bound stays below 10^-(digits - margin)."""
    ctx = working_context(digits)
    return residual.value + residual.error_bound < ctx.mpf(10) ** (-(digits - VERIFY_MARGIN))
