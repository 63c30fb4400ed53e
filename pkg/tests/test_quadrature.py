import threading
from fractions import Fraction

import mpmath
import pytest

from malmsten.constants import constant
from malmsten.errors import DivergenceError, PrecisionFailure
from malmsten.kernels import Interval, parse_kernel
from malmsten.quadrature import (
    NODE_CACHE,
    QuadratureResult,
    Transform,
    choose_transform,
    integrate,
    integrate_combination,
    integrate_function,
    residual_passes,
)

F = Fraction


def within(result, ref, digits):
    return abs(result.value - ref) <= result.error_bound + mpmath.mpf(10) ** -digits


def test_constant_integrand():
    r = integrate_function(lambda ctx, pt: ctx.mpf(1), Interval.UNIT, Transform.TANH_SINH, 30)
    assert abs(r.value.value - 1) < mpmath.mpf(10) ** -30
    assert r.nodes_used > 0


@pytest.mark.parametrize("k", range(7))
def test_monomials_are_exact(k):
    r = integrate_function(lambda ctx, pt: pt.x**k, Interval.UNIT, Transform.TANH_SINH, 30)
    with mpmath.workdps(50):
        assert abs(r.value.value - mpmath.mpf(1) / (k + 1)) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("s", range(4))
def test_log_log_moments(s):
    # integral of x^s lnln(1/x) over (0,1) is -(gamma + ln(s+1))/(s+1)
    with mpmath.workdps(50):
        ref = -(mpmath.euler + mpmath.log(s + 1)) / (s + 1)
        assert within(integrate(parse_kernel(f"F14:{s}"), 30).value, ref, 30)


def test_first_sine_kernel():
    with mpmath.workdps(50):
        ref = -7 * mpmath.zeta(3) / mpmath.pi**2
        r = integrate("F3:1", 30)
        assert within(r.value, ref, 30)
        assert abs(r.value.value - mpmath.mpf("-0.852557")) < 1e-6


def test_combinations():
    with mpmath.workdps(50):
        z5 = integrate_combination([(F(-1, 186), parse_kernel("F3:1")), (F(1, 124), parse_kernel("F3:2"))], 30)
        assert within(z5, mpmath.zeta(5) / mpmath.pi**4, 28)
        z7 = integrate_combination(
            [(F(-17, 91440), parse_kernel("F3:1")), (F(1, 1524), parse_kernel("F3:2")), (F(-1, 2032), parse_kernel("F3:3"))],
            30,
        )
        assert within(z7, mpmath.zeta(7) / mpmath.pi**6, 28)
    empty = integrate_combination([], 30)
    assert empty.value == 0 and empty.error_bound == 0


@pytest.mark.parametrize("text", ["F5:0:2", "F5:1:4", "F6:1:3", "F6:2:5"])
def test_half_line_even_kernels(text):
    # the integrands are even, so the half-line value is half the symmetric one
    spec = parse_kernel(text)
    k, m = spec.params
    a = 2 * k + 1 if spec.family == "F5" else 2 * k
    with mpmath.workdps(45):
        f = lambda x: mpmath.sinh(a * x) / (x * mpmath.cosh(x) ** m) if x else mpmath.mpf(a)  # noqa: E731
        sym = mpmath.quad(f, [-90, -10, 0, 10, 90])
        assert abs(integrate(spec, 30).value.value - sym / 2) < mpmath.mpf(10) ** -25


def test_substitution_consistency():
    f1 = integrate("F1", 30).value
    f2 = integrate("F2", 30).value
    f3 = integrate("F3:1", 30).value
    tol = mpmath.mpf(10) ** -28
    assert abs(f1.value - f2.value / 2) < tol
    assert abs(f1.value + f3.value / 8) < tol


@pytest.mark.parametrize(
    "text, transform",
    [
        ("F1", Transform.LOG_PULLBACK),
        ("F13:zeta:1", Transform.LOG_PULLBACK),
        ("F5:0:2", Transform.EXP_SINH),
        ("F3:1", Transform.TANH_SINH),
        ("F9:1", Transform.TANH_SINH),
    ],
)
def test_transform_choice(text, transform):
    assert choose_transform(parse_kernel(text)) == transform


def test_missing_quarter_pi_root_is_divergent():
    with pytest.raises(DivergenceError):
        integrate("TRIG:cos4", 30)


def test_non_integrable_endpoint_is_divergent():
    with pytest.raises(DivergenceError):
        integrate_function(lambda ctx, pt: 1 / pt.to_left, Interval.UNIT, Transform.TANH_SINH, 20)


def test_precision_failure_carries_estimate():
    with pytest.raises(PrecisionFailure) as info:
        integrate("F3:1", 30, max_levels=2)
    assert info.value.best is not None
    assert abs(info.value.best.value + mpmath.mpf("0.8525")) < 1e-2


def test_result_json_round_trip():
    r = integrate("F5:0:2", 20)
    again = QuadratureResult.from_json(r.to_json())
    assert again.transform == r.transform and again.nodes_used == r.nodes_used
    assert again.value.value == r.value.value


@pytest.mark.parametrize("text", ["F1", "F3:2", "F5:1:4", "F7:2", "F8:2", "F9:2", "F10:2", "F11:0:2", "F12:3", "F13:beta:2"])
def test_doubling_precision_agrees(text):
    lo = integrate(text, 20).value
    hi = integrate(text, 40).value
    assert abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound + mpmath.mpf(10) ** -20


def test_concurrent_integrations_share_nodes():
    NODE_CACHE.clear()
    results, errors = [], []

    def work():
        try:
            results.append(integrate("F3:2", 25).value.value)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len(set(results)) == 1


def test_residual_threshold():
    pi = constant("pi", 30)
    assert residual_passes(pi - pi, 30)
    assert not residual_passes(pi * 0 + F(1, 10**20), 30)
