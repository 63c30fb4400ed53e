from fractions import Fraction

import mpmath
import pytest

import oracles
from malmsten.constants import (
    ConstantId,
    alternating_sum,
    beta_odd_exact,
    beta_prime_neg_odd,
    beta_value,
    constant,
    eta_nonpositive_exact,
    eta_prime,
    euler_gamma,
    zeta_even_exact,
    zeta_nonpositive_exact,
    zeta_prime_neg_even,
    zeta_value,
)
from malmsten.errors import DomainError, UnknownIdError
from malmsten.precision import context_for_dps

F = Fraction


def close(x, ref, digits):
    """x is a PrecisionReal; ref an mpf-compatible reference."""
    with mpmath.workdps(digits + 20):
        ref = mpmath.mpf(ref) if isinstance(ref, str) else ref
        return abs(mpmath.mpf(x.value) - ref) <= mpmath.mpf(x.error_bound) + mpmath.mpf(10) ** -digits


@pytest.mark.parametrize(
    "cid, text",
    [
        ("pi", "3.14159265358979323846264338328"),
        ("zeta(3)", "1.20205690315959428539973816151"),
        ("zeta(5)", "1.03692775514336992633136548646"),
        ("beta(2)", "0.915965594177219015054603514932"),
        ("beta(4)", "0.988944551741105336108422633228"),
        ("gamma", "0.577215664901532860606512090082"),
        ("ln2", "0.693147180559945309417232121458"),
    ],
)
def test_constants_at_30_digits(cid, text):
    x = constant(cid, 30)
    assert x.is_certified()
    assert close(x, text, 29)


def test_pi_agrees_with_machin():
    assert close(constant("pi", 60), oracles.machin_pi(60), 60)


def test_even_lattice_is_exact():
    with mpmath.workdps(50):
        assert close(constant("zeta(2)", 30), mpmath.pi**2 / 6, 30)
        assert close(constant("beta(1)", 30), mpmath.pi / 4, 30)


@pytest.mark.parametrize("n, expected", [(1, F(1, 6)), (2, F(1, 90)), (3, F(1, 945))])
def test_zeta_even_exact(n, expected):
    assert zeta_even_exact(n) == (expected, 2 * n)


@pytest.mark.parametrize("n, expected", [(0, F(1, 4)), (1, F(1, 32)), (2, F(5, 1536))])
def test_beta_odd_exact(n, expected):
    assert beta_odd_exact(n) == (expected, 2 * n + 1)


@pytest.mark.parametrize("s", [3, 5, 7, 9, 11])
def test_odd_zeta_against_euler_maclaurin(s):
    assert close(zeta_value(s, 40), oracles.euler_maclaurin_zeta(s, 40), 40)


@pytest.mark.parametrize("s", [4, 6, 8])
def test_even_zeta_against_euler_maclaurin(s):
    assert close(zeta_value(s, 40), oracles.euler_maclaurin_zeta(s, 40), 40)


@pytest.mark.parametrize("s", [2, 4, 6, 8, 3, 5])
def test_beta_against_hurwitz(s):
    assert close(beta_value(s, 40), oracles.hurwitz_beta(s, 40), 40)


def test_beta_even_increases_to_one():
    vals = [constant(f"beta({2 * n})", 20).value for n in range(1, 21)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(v < 1 for v in vals)


def test_gamma_against_mpmath():
    with mpmath.workdps(120):
        assert close(euler_gamma(100), +mpmath.euler, 100)


@pytest.mark.parametrize("cid", ["pi", "gamma", "ln2", "lnpi", "zeta(3)", "zeta(7)", "beta(2)", "beta(6)"])
def test_doubling_precision_is_consistent(cid):
    lo, hi = constant(cid, 30), constant(cid, 60)
    assert hi.is_certified()
    assert abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound


def test_zeta_prime_closed_form():
    with mpmath.workdps(50):
        z1 = zeta_prime_neg_even(1, 30)
        assert close(z1, -mpmath.zeta(3) / (4 * mpmath.pi**2), 30)
        assert abs(z1.value - mpmath.mpf("-0.0304484570583")) < 1e-13
        assert close(zeta_prime_neg_even(2, 30), 3 * mpmath.zeta(5) / (4 * mpmath.pi**4), 30)
        for n in range(1, 5):
            assert close(zeta_prime_neg_even(n, 30), mpmath.zeta(-2 * n, derivative=1), 30)


def test_zeta_prime_sign_alternates():
    signs = [zeta_prime_neg_even(n, 20).value > 0 for n in range(1, 7)]
    assert signs == [False, True] * 3


def test_beta_prime_closed_form():
    with mpmath.workdps(50):
        b1 = beta_prime_neg_odd(1, 30)
        assert close(b1, 2 * mpmath.catalan / mpmath.pi, 30)
        assert abs(b1.value - mpmath.mpf("0.58312")) < 1e-5
        assert close(beta_prime_neg_odd(2, 30), -48 * oracles.hurwitz_beta(4, 40) / mpmath.pi**3, 30)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_beta_prime_against_numerical_derivative(n):
    with mpmath.workdps(40):
        quarter = mpmath.mpf(1) / 4
        ref = mpmath.diff(lambda s: 4**-s * (mpmath.zeta(s, quarter) - mpmath.zeta(s, 3 * quarter)), 1 - 2 * n)
        assert abs(beta_prime_neg_odd(n, 30).value - ref) < mpmath.mpf(10) ** -15


def test_eta_prime():
    with mpmath.workdps(50):
        assert close(eta_prime(-2, 30), 7 * mpmath.zeta(3) / (4 * mpmath.pi**2), 30)
        assert close(eta_prime(-4, 30), -31 * 3 * mpmath.zeta(5) / (4 * mpmath.pi**4), 30)
        ref = mpmath.diff(mpmath.altzeta, -4)
        assert abs(eta_prime(-4, 30).value - ref) < mpmath.mpf(10) ** -25
    with pytest.raises(DomainError):
        eta_prime(-3, 30)


def test_trivial_zeros():
    for n in range(1, 11):
        assert zeta_nonpositive_exact(2 * n) == 0
        assert eta_nonpositive_exact(2 * n) == 0
    assert zeta_nonpositive_exact(1) == F(-1, 12)


def test_alternating_sum_for_ln2():
    ctx = context_for_dps(40)
    s = alternating_sum(lambda k: ctx.mpf(1) / (k + 1), 60, ctx)
    assert abs(s - ctx.ln2) < ctx.mpf(10) ** -38


@pytest.mark.parametrize("text", ["zeta(1)", "beta(0)", "pi(2)", "zeta_prime_neg(0)"])
def test_parameter_ranges(text):
    with pytest.raises(DomainError):
        ConstantId.parse(text)


def test_unknown_constant():
    with pytest.raises(UnknownIdError):
        constant("catalan", 20)
    with pytest.raises(DomainError):
        constant("pi", 5)


def test_id_round_trip():
    for text in ["pi", "gamma", "zeta(5)", "beta(4)", "zeta_prime_neg(2)", "beta_prime(1)"]:
        assert str(ConstantId.parse(text)) == text
