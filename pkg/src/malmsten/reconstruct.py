"""Recovering exact rational structure from certified high-precision values.

* rational reconstruction by the simplest fraction inside an error window;
* PSLQ integer-relation search with a norm lower bound for negative results;
* coefficient rows  integral = sum_p C_p * basis_p  for the catalog families;
* the polynomial families whose weighted arctanh integrals isolate a single
  zeta or beta ratio, by inverting the triangular monomial system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constants import beta_ratio, constant, zeta_ratio
from .errors import DomainError, InsufficientPrecisionError, UnknownIdError
from .exact.linalg import RationalMatrix, triangular_invert
from .exact.poly import RationalPolynomial
from .kernels import KernelSpec
from .precision import GUARD_DIGITS, PrecisionReal, context_for_dps, sum_reals, working_context
from .quadrature import integrate

# ---------------------------------------------------------------------------
# rational reconstruction


def mpf_to_fraction(x) -> Fraction:
    """Exact value of a binary float."""
    man, exp = x.man_exp  # mantissa is unsigned
    q = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -q if x < 0 else q


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """The fraction with least denominator in [lo, hi] (continued-fraction descent)."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_in_interval(-hi, -lo)
    fl = math.floor(lo)
    if Fraction(fl) == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # both ends share the integer part; recurse on the reciprocals of the tails
    return fl + 1 / simplest_in_interval(1 / (hi - fl), 1 / (lo - fl))


def rational_reconstruct(x: PrecisionReal, max_denominator: int) -> Fraction | None:
    """The smallest-denominator p/q within x's error window, if q <= max_denominator.

    Requires error_bound < 1/(2 q_max^2) so that the answer is unique.
    """
    if max_denominator < 1:
        raise DomainError("max_denominator must be positive")
    err = mpf_to_fraction(x.ctx.mpf(x.error_bound))
    if err >= Fraction(1, 2 * max_denominator**2):
        raise InsufficientPrecisionError(
            f"error bound {x.ctx.nstr(x.error_bound, 3)} is too large to pin a denominator up to {max_denominator}"
        )
    v = mpf_to_fraction(x.ctx.mpf(x.value))
    q = simplest_in_interval(v - err, v + err)
    return q if q.denominator <= max_denominator else None


# ---------------------------------------------------------------------------
# PSLQ


@dataclass(frozen=True)
class RelationResult:
    status: str  # "found" or "none-up-to-bound"
    coefficients: tuple[int, ...] | None
    height_bound: int
    digits_used: int
    residual: PrecisionReal | None
    norm_bound: object = None  # every relation has Euclidean norm >= this
    iterations: int = 0
    labels: tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        ctx = working_context(self.digits_used)
        return {
            "status": self.status,
            "coefficients": list(self.coefficients) if self.coefficients else None,
            "labels": list(self.labels),
            "height_bound": self.height_bound,
            "digits_used": self.digits_used,
            "residual": self.residual.to_json() if self.residual is not None else None,
            "norm_bound": ctx.nstr(self.norm_bound, 15) if self.norm_bound is not None else None,
            "iterations": self.iterations,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelationResult":
        ctx = working_context(int(data["digits_used"]))
        return cls(
            data["status"],
            tuple(data["coefficients"]) if data["coefficients"] else None,
            int(data["height_bound"]),
            int(data["digits_used"]),
            PrecisionReal.from_json(data["residual"]) if data["residual"] else None,
            ctx.mpf(data["norm_bound"]) if data["norm_bound"] is not None else None,
            int(data["iterations"]),
            tuple(data.get("labels", ())),
        )


def required_digits(count: int, max_height: int) -> int:
    """Heuristic precision PSLQ needs to separate relations of this height."""
    return math.ceil(count * math.log10(max(max_height, 2))) + 5


def _normalize_sign(c: list[int]) -> tuple[int, ...]:
    for v in c:
        if v:
            return tuple(c) if v > 0 else tuple(-x for x in c)
    return tuple(c)


def pslq(values, digits: int, max_height: int = 10**6, labels=(), max_iterations: int | None = None) -> RelationResult:
    """Search for integers c with sum c_i v_i = 0 and max |c_i| <= max_height.

    A negative answer is certified by the standard PSLQ bound: every relation
    has norm >= 1/max|H_jj|; once that exceeds sqrt(m) * max_height no relation
    within the height bound exists.
    """
    m = len(values)
    if m < 2:
        raise DomainError("pslq needs at least two values")
    if digits < 10:
        raise DomainError("pslq needs digits >= 10")
    need = required_digits(m, max_height)
    if digits < need:
        raise InsufficientPrecisionError(
            f"{m} values with height bound {max_height} need about {need} digits; got {digits}"
        )
    ctx = context_for_dps(digits + GUARD_DIGITS)
    limit = ctx.mpf(10) ** (-digits)
    for v in values:
        if v.error_bound > limit:
            raise InsufficientPrecisionError(
                f"input error {ctx.nstr(v.error_bound, 3)} exceeds 10^-{digits}; raise the precision"
            )
    x = [ctx.mpf(v.value) for v in values]
    labels = tuple(labels) if labels else tuple(f"v{i}" for i in range(m))

    def result_for(c):
        c = _normalize_sign(list(c))
        res = abs(sum_reals((v * int(k) for v, k in zip(values, c) if k), digits))
        return RelationResult("found", c, max_height, digits, res, None, it, labels)

    it = 0
    # trivial relations: an input that is zero within precision
    for i, xi in enumerate(x):
        if abs(xi) <= limit * 10:
            c = [0] * m
            c[i] = 1
            return result_for(c)

    gamma = ctx.sqrt(ctx.mpf(4) / 3) + ctx.mpf("0.01")
    tol = limit * max_height * 100
    s = [ctx.sqrt(ctx.fsum(xj**2 for xj in x[k:])) for k in range(m)]
    t = s[0]
    y = [xi / t for xi in x]
    s = [sk / t for sk in s]
    H = [[ctx.mpf(0)] * (m - 1) for _ in range(m)]
    for i in range(m):
        for j in range(min(i + 1, m - 1)):
            if i == j:
                H[i][j] = s[j + 1] / s[j]
            else:
                H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1])
    A = [[int(i == j) for j in range(m)] for i in range(m)]
    B = [[int(i == j) for j in range(m)] for i in range(m)]

    def reduce_rows(start: int):
        for i in range(start, m):
            for j in range(min(i - 1, m - 2), -1, -1):
                if H[j][j] == 0:
                    continue
                q = int(ctx.nint(H[i][j] / H[j][j]))
                if q == 0:
                    continue
                y[j] += q * y[i]
                for k in range(j + 1):
                    H[i][k] -= q * H[j][k]
                for k in range(m):
                    A[i][k] -= q * A[j][k]
                    B[k][j] += q * B[k][i]

    def relation():
        """Smallest column of B whose y entry vanishes, if any."""
        small = [j for j in range(m) if abs(y[j]) < tol]
        if not small:
            return None
        cols = [[B[i][j] for i in range(m)] for j in small]
        c = min(cols, key=lambda col: sum(v * v for v in col))
        if max(abs(v) for v in c) <= max_height:
            return result_for(c)
        raise InsufficientPrecisionError(
            f"candidate relation exceeds height {max_height}; precision {digits} is too low to trust it"
        )

    reduce_rows(1)
    found = relation()
    if found is not None:
        return found
    cert = math.sqrt(m) * max_height
    entry_cap = ctx.mpf(10) ** (digits - 2)
    if max_iterations is None:
        max_iterations = 200 * m * m * max(digits, 30)
    norm_bound = ctx.mpf(0)
    while it < max_iterations:
        it += 1
        r = max(range(m - 1), key=lambda i: gamma ** (i + 1) * abs(H[i][i]))
        y[r], y[r + 1] = y[r + 1], y[r]
        A[r], A[r + 1] = A[r + 1], A[r]
        H[r], H[r + 1] = H[r + 1], H[r]
        for row in B:
            row[r], row[r + 1] = row[r + 1], row[r]
        if r < m - 2:
            t0 = ctx.sqrt(H[r][r] ** 2 + H[r][r + 1] ** 2)
            t1, t2 = H[r][r] / t0, H[r][r + 1] / t0
            for i in range(r, m):
                t3, t4 = H[i][r], H[i][r + 1]
                H[i][r] = t1 * t3 + t2 * t4
                H[i][r + 1] = -t2 * t3 + t1 * t4
        reduce_rows(r + 1)

        found = relation()
        if found is not None:
            return found
        diag = max(abs(H[j][j]) for j in range(m - 1))
        if diag == 0:
            raise InsufficientPrecisionError("PSLQ lost all precision; raise the digits")
        norm_bound = max(norm_bound, 1 / diag)
        if norm_bound > cert:
            return RelationResult("none-up-to-bound", None, max_height, digits, None, norm_bound, it, labels)
        if max(abs(v) for row in A for v in row) > entry_cap:
            break
    raise InsufficientPrecisionError(
        f"PSLQ exhausted {digits} digits after {it} iterations without a relation or a certificate; raise the digits"
    )


# ---------------------------------------------------------------------------
# coefficient rows


@dataclass(frozen=True)
class FamilyInfo:
    name: str
    basis: str  # "zeta" or "beta"
    description: str
    kernel: object  # (n, k) -> KernelSpec
    k_range: object = None  # n -> range of admissible k, or None


FAMILY_TABLE: dict[str, FamilyInfo] = {
    f.name: f
    for f in [
        FamilyInfo("sin4nx", "zeta", "sin(4n x)/ln(tan x)", lambda n, k: KernelSpec("F3", (n,))),
        FamilyInfo("cos4nx", "beta", "cos((4n-2) x)/ln(tan x)", lambda n, k: KernelSpec("F4", (n,))),
        FamilyInfo(
            "sinh-odd-zeta", "zeta", "sinh((2k+1)x)/(x cosh^(2n+1) x)",
            lambda n, k: KernelSpec("F5", (k, 2 * n + 1)), lambda n: range(0, n),
        ),
        FamilyInfo(
            "sinh-odd-beta", "beta", "sinh((2k+1)x)/(x cosh^(2n) x)",
            lambda n, k: KernelSpec("F5", (k, 2 * n)), lambda n: range(0, n),
        ),
        FamilyInfo(
            "sinh-even-zeta", "zeta", "sinh(2k x)/(x cosh^(2n+2) x)",
            lambda n, k: KernelSpec("F6", (k, 2 * n + 2)), lambda n: range(1, n + 1),
        ),
        FamilyInfo(
            "sinh-even-beta", "beta", "sinh(2k x)/(x cosh^(2n+1) x)",
            lambda n, k: KernelSpec("F6", (k, 2 * n + 1)), lambda n: range(1, n + 1),
        ),
        FamilyInfo("polylog-zeta", "zeta", "Li_(-2n-1)(-x^2) lnln(1/x)/x", lambda n, k: KernelSpec("F7", (n,))),
        FamilyInfo("polylog-beta", "beta", "Im Li_(-2n)(ix) lnln(1/x)/x", lambda n, k: KernelSpec("F8", (n,))),
        FamilyInfo("arctanh", "zeta", "x^(2n-1)/arctanh x", lambda n, k: KernelSpec("F9", (n,))),
        FamilyInfo(
            "sqrt-arctanh", "beta", "x^(2n-1)/(sqrt(1-x^2) arctanh x)", lambda n, k: KernelSpec("F10", (n,))
        ),
        FamilyInfo("tanh-even", "zeta", "tanh^(2n) x/x^2", lambda n, k: KernelSpec("F11", (0, n))),
        FamilyInfo("tanh-ratio", "zeta", "tanh^(n+1) x/x^(n+1)", lambda n, k: KernelSpec("F11", (1, n))),
    ]
}


def family_info(name: str) -> FamilyInfo:
    try:
        return FAMILY_TABLE[name]
    except KeyError:
        raise UnknownIdError(f"unknown coefficient family {name!r}; known: {', '.join(FAMILY_TABLE)}") from None


def basis_values(basis: str, n: int, digits: int) -> list[PrecisionReal]:
    ratio = zeta_ratio if basis == "zeta" else beta_ratio
    return [ratio(p, digits) for p in range(1, n + 1)]


def basis_label(basis: str, p: int) -> str:
    return f"zeta({2 * p + 1})/pi^{2 * p}" if basis == "zeta" else f"beta({2 * p})/pi^{2 * p - 1}"


@dataclass(frozen=True)
class CoeffRow:
    family: str
    n: int
    k: int | None
    basis: str
    coefficients: tuple[Fraction, ...] | None
    certified: bool
    residual: PrecisionReal | None
    digits_used: int
    numeric: PrecisionReal | None = None  # the integral itself

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "basis": [basis_label(self.basis, p) for p in range(1, self.n + 1)],
            "coefficients": [str(c) for c in self.coefficients] if self.coefficients else None,
            "certified": self.certified,
            "residual": self.residual.to_json() if self.residual is not None else None,
            "digits_used": self.digits_used,
            "integral": self.numeric.to_json() if self.numeric is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoeffRow":
        basis = "zeta" if data["basis"] and data["basis"][0].startswith("zeta") else "beta"
        return cls(
            data["family"],
            int(data["n"]),
            data["k"],
            basis,
            tuple(Fraction(c) for c in data["coefficients"]) if data["coefficients"] else None,
            bool(data["certified"]),
            PrecisionReal.from_json(data["residual"]) if data["residual"] else None,
            int(data["digits_used"]),
            PrecisionReal.from_json(data["integral"]) if data["integral"] else None,
        )


@dataclass(frozen=True)
class CoeffTable:
    family: str
    basis: str
    rows: tuple[CoeffRow, ...]

    @property
    def certified(self) -> bool:
        return all(r.certified for r in self.rows)

    def matrix(self) -> RationalMatrix:
        """Lower-triangular matrix whose row n-1 holds C_{1,n} .. C_{n,n}."""
        if not self.certified:
            raise DomainError("cannot build an exact matrix from uncertified rows")
        return RationalMatrix.lower_from_rows([r.coefficients for r in self.rows])

    def to_json(self) -> dict:
        return {"family": self.family, "basis": self.basis, "rows": [r.to_json() for r in self.rows]}


def combination_residual(integral: PrecisionReal, coeffs, basis: str, digits: int) -> PrecisionReal:
    vals = basis_values(basis, len(coeffs), digits)
    return abs(integral - sum_reals((v * c for v, c in zip(vals, coeffs)), digits))


def solve_coeffs(family: str, n: int, digits: int, k: int | None = None, max_digits: int | None = None) -> CoeffRow:
    """Exact C_{1,n}..C_{n,n} with integral = sum_p C_{p,n} basis_p.

    An integer relation among (integral, basis_1..basis_n) is searched at
    increasing precision starting from ``digits``; the resulting fractions are
    certified by recomputing the residual at twice the precision used.
    """
    info = family_info(family)
    if n < 1:
        raise DomainError("n must be >= 1")
    if info.k_range is not None:
        k = info.k_range(n)[0] if k is None else k
        if k not in info.k_range(n):
            raise DomainError(f"k = {k} outside the admissible range for {family} at n = {n}")
    spec = info.kernel(n, k)
    cap = max_digits or max(4 * digits, 200)
    work = digits
    last = None
    while work <= cap:
        integral = integrate(spec, work).value
        last = integral
        vals = [integral, *basis_values(info.basis, n, work)]
        height = 10 ** max(1, (work - 5) // (n + 1) - 1)
        try:
            rel = pslq(vals, work, height)
        except InsufficientPrecisionError:
            rel = None
        if rel is not None and rel.found and rel.coefficients[0] != 0:
            c0 = rel.coefficients[0]
            coeffs = tuple(Fraction(-c, c0) for c in rel.coefficients[1:])
            check_digits = 2 * work
            check_integral = integrate(spec, check_digits).value
            residual = combination_residual(check_integral, coeffs, info.basis, check_digits)
            threshold = working_context(check_digits).mpf(10) ** (-(check_digits - GUARD_DIGITS))
            if residual.value + residual.error_bound < threshold:
                return CoeffRow(family, n, k, info.basis, coeffs, True, residual, work, integral)
        work *= 2
    return CoeffRow(family, n, k, info.basis, None, False, None, work // 2, last)


def coeff_table(family: str, n_max: int, digits: int, k: int | None = None) -> CoeffTable:
    info = family_info(family)
    rows = tuple(solve_coeffs(family, n, digits, k) for n in range(1, n_max + 1))
    return CoeffTable(family, info.basis, rows)


# ---------------------------------------------------------------------------
# polynomial families

_POLY_SOURCES = {"lambda": "arctanh", "xi": "sqrt-arctanh"}


def poly_family(family: str, n: int, digits: int) -> RationalPolynomial:
    """Lambda_n (arctanh kernel, zeta target) or Xi_n (sqrt-arctanh kernel, beta target).

    Rows I_p = sum_k x_{k,p} J_k of the monomial family are inverted so that
    J_n = sum_p y_p I_p; then P(x) = sum_p y_p x^(2p-2).
    """
    key = family.lower()
    if key not in _POLY_SOURCES:
        raise UnknownIdError(f"unknown polynomial family {family!r}; use 'xi' or 'lambda'")
    table = coeff_table(_POLY_SOURCES[key], n, digits)
    if not table.certified:
        bad = [r.n for r in table.rows if not r.certified]
        raise InsufficientPrecisionError(f"rows {bad} of the {key} system could not be certified at {digits} digits")
    y = triangular_invert(table.matrix(), n)
    coeffs = [Fraction(0)] * (2 * n - 1)
    for p, yp in enumerate(y, start=1):
        coeffs[2 * p - 2] = yp
    return RationalPolynomial(tuple(coeffs))


def poly_kernel(family: str, poly: RationalPolynomial) -> KernelSpec:
    variant = 0 if family.lower() == "lambda" else 1
    return KernelSpec("F15", (variant,), poly.coeffs)


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class FourierRow:
    k: int
    partial_sum: PrecisionReal
    delta: PrecisionReal

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "partial_sum": self.partial_sum.to_json(),
            "delta": self.delta.to_json(),
            "error_bound": self.partial_sum.to_json()["error_bound"],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourierRow":
        return cls(int(data["k"]), PrecisionReal.from_json(data["partial_sum"]), PrecisionReal.from_json(data["delta"]))


def fourier_terms(K: int, digits: int) -> list[FourierRow]:
    """Partial sums -2 sum_{k<K} integral(cos((4k+2)x)/ln tan x)/(2k+1) and their gap to pi/4."""
    if K < 0:
        raise DomainError("K must be non-negative")
    quarter_pi = constant("pi", digits) / 4
    total = PrecisionReal.exact(0, digits)
    rows = []
    for k in range(K):
        term = integrate(KernelSpec("F4", (k + 1,)), digits).value * Fraction(-2, 2 * k + 1)
        total = total + term
        rows.append(FourierRow(k + 1, total, total - quarter_pi))
    return rows


def fourier_partial_sum(K: int, digits: int) -> PrecisionReal:
    if K == 0:
        return PrecisionReal.exact(0, digits)
    return fourier_terms(K, digits)[-1].partial_sum


def kyrion_prefactor(target: str, N: int) -> Fraction:
    """c with target value = c * pi^e * integral; the pi power is returned by kyrion_pi_power."""
    if target == "beta":
        return Fraction((-1) ** N, 2 ** (2 * N - 1) * math.factorial(2 * N - 1))
    if target == "zeta":
        return Fraction((-1) ** N * 2, (2 ** (2 * N + 1) - 1) * math.factorial(2 * N))
    raise DomainError("target must be 'beta' or 'zeta'")


def kyrion_pi_power(target: str, N: int) -> int:
    return 2 * N - 1 if target == "beta" else 2 * N


def verify_kyrion(target: str, N: int, digits: int) -> PrecisionReal:
    """|prefactor * pi^e * integral - value| for beta(2N) or zeta(2N+1)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    factor = kyrion_prefactor(target, N)
    spec = KernelSpec("F13", (("beta", "zeta").index(target), N))
    lhs = integrate(spec, digits).value * factor
    pi = constant("pi", digits)
    for _ in range(kyrion_pi_power(target, N)):
        lhs = lhs * pi
    value = constant(f"beta({2 * N})" if target == "beta" else f"zeta({2 * N + 1})", digits)
    return abs(lhs - value)
