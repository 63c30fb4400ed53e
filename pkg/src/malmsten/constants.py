"""High-precision values of pi, gamma, logarithms, zeta and Dirichlet beta.

Odd zeta and even beta values are summed with the Cohen-Rodriguez Villegas-Zagier
acceleration for alternating series, whose remainder bound is explicit for
totally monotone terms such as (k+1)^-s and (2k+1)^-s.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError, UnknownIdError
from .exact.numbers import bernoulli, euler_number
from .precision import GUARD_DIGITS, PrecisionReal, context_for_dps, working_context

_TAGS = ("pi", "gamma", "ln2", "lnpi", "zeta", "beta", "zeta_prime_neg", "beta_prime")


@dataclass(frozen=True)
class ConstantId:
    """A basis constant.  ``param`` is s for zeta/beta and n for the derivative tags.

    zeta_prime_neg with n means zeta'(-2n); beta_prime with n means beta'(1-2n).
    """

    tag: str
    param: int | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise UnknownIdError(f"unknown constant tag {self.tag!r}")
        if self.tag in ("pi", "gamma", "ln2", "lnpi"):
            if self.param is not None:
                raise DomainError(f"{self.tag} takes no parameter")
            return
        if self.param is None:
            raise DomainError(f"{self.tag} needs an integer parameter")
        lower = {"zeta": 2, "beta": 1, "zeta_prime_neg": 1, "beta_prime": 1}[self.tag]
        if self.param < lower:
            raise DomainError(f"{self.tag} parameter must be >= {lower}, got {self.param}")

    @classmethod
    def parse(cls, text: str) -> "ConstantId":
        text = text.strip()
        m = re.fullmatch(r"([a-z_][a-z0-9_]*?)(?:\((-?\d+)\))?", text)
        if not m:
            raise UnknownIdError(f"cannot parse constant id {text!r}")
        tag, arg = m.group(1), m.group(2)
        if tag not in _TAGS:
            raise UnknownIdError(f"unknown constant {text!r}")
        return cls(tag, None if arg is None else int(arg))

    def __str__(self):
        return self.tag if self.param is None else f"{self.tag}({self.param})"


# ---------------------------------------------------------------------------
# exact rational parts


def zeta_even_exact(n: int) -> tuple[Fraction, int]:
    """(r, 2n) with zeta(2n) = r * pi^(2n)."""
    if n < 1:
        raise DomainError("zeta_even_exact needs n >= 1")
    r = (-1) ** (n + 1) * bernoulli(2 * n) * 2 ** (2 * n) / (2 * factorial(2 * n))
    return r, 2 * n


def beta_odd_exact(n: int) -> tuple[Fraction, int]:
    """(s, 2n+1) with beta(2n+1) = s * pi^(2n+1)."""
    if n < 0:
        raise DomainError("beta_odd_exact needs n >= 0")
    s = Fraction((-1) ** n * euler_number(2 * n), 2 ** (2 * n + 2) * factorial(2 * n))
    return s, 2 * n + 1


def zeta_nonpositive_exact(m: int) -> Fraction:
    """zeta(-m) = (-1)^m B_{m+1}/(m+1) for m >= 0."""
    if m < 0:
        raise DomainError("m must be non-negative")
    return (-1) ** m * bernoulli(m + 1) / (m + 1)


def eta_nonpositive_exact(m: int) -> Fraction:
    """Dirichlet eta at -m via eta(s) = (1 - 2^(1-s)) zeta(s)."""
    return (1 - 2 ** (1 + m)) * zeta_nonpositive_exact(m)


# ---------------------------------------------------------------------------
# primitive constants


def _pi(digits: int) -> PrecisionReal:
    ctx = working_context(digits)
    return PrecisionReal.from_mpf(+ctx.pi, 0, digits)


def _ln2(digits: int) -> PrecisionReal:
    ctx = working_context(digits)
    return PrecisionReal.from_mpf(+ctx.ln2, 0, digits)


def _lnpi(digits: int) -> PrecisionReal:
    ctx = working_context(digits)
    return PrecisionReal.from_mpf(ctx.ln(ctx.pi), 0, digits)


def euler_gamma(digits: int) -> PrecisionReal:
    """Euler-Mascheroni constant by the Brent-McMillan Bessel-function scheme.

    With N = ceil(target * ln 10 / 4) the remainder is below pi * exp(-4N).
    """
    target = digits + GUARD_DIGITS
    N = math.ceil((target * math.log(10) + 2) / 4)
    # partial sums grow like exp(2N); carry those digits as extra precision
    ctx = context_for_dps(target + math.ceil(2 * N / math.log(10)) + 10)
    n2 = ctx.mpf(N) ** 2
    A = -ctx.ln(N)
    B = ctx.mpf(1)
    U, V = A, B
    k = 1
    while True:
        B = B * n2 / (k * k)
        A = (A * n2 / k + B) / k
        U += A
        V += B
        if k > 3 * N and abs(A) + abs(B) < V * ctx.mpf(10) ** (-(ctx.dps - 5)):
            break
        k += 1
    value = U / V
    bound = ctx.pi * ctx.exp(-4 * N)
    return PrecisionReal.from_mpf(value, bound, digits)


# ---------------------------------------------------------------------------
# alternating-series acceleration


_CRVZ_RATE = 3 + math.sqrt(8)


def crvz_terms_needed(dps: int) -> int:
    return math.ceil(dps * math.log(10) / math.log(_CRVZ_RATE)) + 3


def alternating_sum(term, n: int, ctx):
    """Accelerated sum_{k>=0} (-1)^k term(k) using n terms.

    For term(k) = integral x^k dmu(x) with mu positive on [0,1] the error is
    at most 2 * term(0) / (3+sqrt 8)^n.
    """
    d = (ctx.mpf(3) + ctx.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = ctx.mpf(-1)
    c = -d
    s = ctx.mpf(0)
    for k in range(n):
        c = b - c
        s += c * term(k)
        b = (k + n) * (k - n) * b / ((k + ctx.mpf(0.5)) * (k + 1))
    return s / d


def _accelerated(term, digits: int) -> PrecisionReal:
    target = digits + GUARD_DIGITS
    n = crvz_terms_needed(target + 2)
    ctx = context_for_dps(target + 10 + len(str(n)))
    s = alternating_sum(lambda k: term(ctx, k), n, ctx)
    bound = 2 * abs(term(ctx, 0)) / ctx.mpf(_CRVZ_RATE) ** n + n * abs(s) * ctx.eps * 4
    return PrecisionReal.from_mpf(s, bound, digits)


def eta(s: int, digits: int) -> PrecisionReal:
    """Dirichlet eta(s) = sum (-1)^(k) / (k+1)^s for integer s >= 1."""
    if s < 1:
        raise DomainError("eta(s) summation needs s >= 1")
    return _accelerated(lambda ctx, k: ctx.mpf(k + 1) ** (-s), digits)


def zeta_odd(n: int, digits: int) -> PrecisionReal:
    """zeta(2n+1) from eta(2n+1) = (1 - 2^-2n) zeta(2n+1)."""
    if n < 1:
        raise DomainError("zeta_odd needs n >= 1")
    e = eta(2 * n + 1, digits)
    return e / (1 - Fraction(1, 2 ** (2 * n)))


def beta_even(n: int, digits: int) -> PrecisionReal:
    """beta(2n) = sum (-1)^m / (2m+1)^(2n)."""
    if n < 1:
        raise DomainError("beta_even needs n >= 1")
    return _accelerated(lambda ctx, k: ctx.mpf(2 * k + 1) ** (-2 * n), digits)


def pi_power(p: int, digits: int) -> PrecisionReal:
    ctx = working_context(digits)
    return PrecisionReal.from_mpf(ctx.pi**p, 0, digits)


def zeta_value(s: int, digits: int) -> PrecisionReal:
    if s < 2:
        raise DomainError("zeta(s) needs s >= 2")
    if s % 2 == 0:
        r, p = zeta_even_exact(s // 2)
        return pi_power(p, digits) * r
    return zeta_odd((s - 1) // 2, digits)


def beta_value(s: int, digits: int) -> PrecisionReal:
    if s < 1:
        raise DomainError("beta(s) needs s >= 1")
    if s % 2 == 1:
        r, p = beta_odd_exact((s - 1) // 2)
        return pi_power(p, digits) * r
    return beta_even(s // 2, digits)


def zeta_prime_neg_even(n: int, digits: int) -> PrecisionReal:
    """zeta'(-2n) = (-1)^n (2n)! / (2 (2 pi)^(2n)) * zeta(2n+1)."""
    if n < 1:
        raise DomainError("zeta_prime_neg_even needs n >= 1")
    factor = Fraction((-1) ** n * factorial(2 * n), 2 * 2 ** (2 * n))
    return zeta_odd(n, digits) * factor / pi_power(2 * n, digits)


def beta_prime_neg_odd(n: int, digits: int) -> PrecisionReal:
    """beta'(1-2n) = (-1)^(n+1) 2^(2n-1) (2n-1)! / pi^(2n-1) * beta(2n)."""
    if n < 1:
        raise DomainError("beta_prime_neg_odd needs n >= 1")
    factor = (-1) ** (n + 1) * 2 ** (2 * n - 1) * factorial(2 * n - 1)
    return beta_even(n, digits) * factor / pi_power(2 * n - 1, digits)


def eta_prime(s: int, digits: int) -> PrecisionReal:
    """eta'(s) at s = -2n, where zeta(-2n) = 0 leaves (1 - 2^(1+2n)) zeta'(-2n)."""
    if s > -2 or s % 2:
        raise DomainError("eta_prime is supported only at negative even integers")
    n = -s // 2
    return zeta_prime_neg_even(n, digits) * (1 - 2 ** (1 + 2 * n))


def zeta_ratio(p: int, digits: int) -> PrecisionReal:
    """zeta(2p+1) / pi^(2p)."""
    return zeta_odd(p, digits) / pi_power(2 * p, digits)


def beta_ratio(p: int, digits: int) -> PrecisionReal:
    """beta(2p) / pi^(2p-1)."""
    return beta_even(p, digits) / pi_power(2 * p - 1, digits)


def constant(cid: ConstantId | str, digits: int) -> PrecisionReal:
    """Evaluate a basis constant to ``digits`` decimal places."""
    if isinstance(cid, str):
        cid = ConstantId.parse(cid)
    if digits < 10:
        raise DomainError("digits must be >= 10")
    tag, p = cid.tag, cid.param
    if tag == "pi":
        return _pi(digits)
    if tag == "gamma":
        return euler_gamma(digits)
    if tag == "ln2":
        return _ln2(digits)
    if tag == "lnpi":
        return _lnpi(digits)
    if tag == "zeta":
        return zeta_value(p, digits)
    if tag == "beta":
        return beta_value(p, digits)
    if tag == "zeta_prime_neg":
        return zeta_prime_neg_even(p, digits)
    if tag == "beta_prime":
        return beta_prime_neg_odd(p, digits)
    raise UnknownIdError(str(cid))  # pragma: no cover
