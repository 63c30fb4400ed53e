"""Command-line front end.

Exit codes: 0 when every result is certified, 1 on numeric failure or an
uncertified result, 2 on usage errors (bad flags, unknown ids).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .constants import ConstantId, beta_ratio, constant, zeta_ratio
from .errors import DivergenceError, DomainError, InsufficientPrecisionError, PrecisionFailure, UnknownIdError
from .identities import get_identity, identity_registry, registry_version
from .kernels import parse_kernel
from .precision import PrecisionReal
from .quadrature import integrate, residual_passes, verify_identity
from .reconstruct import FAMILY_TABLE, coeff_table, fourier_terms, pslq, poly_family, poly_kernel

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    digits: int = 30
    max_height: int = 10**6
    output_format: str = "text"
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.digits < 10:
            raise DomainError("--digits must be >= 10")
        if self.output_format not in FORMATS:
            raise DomainError(f"--format must be one of {', '.join(FORMATS)}")
        if self.max_height < 1:
            raise DomainError("--max-height must be positive")
        if self.workers < 1:
            raise DomainError("--workers must be positive")

    def metadata(self) -> dict:
        return {
            "digits": self.digits,
            "max_height": self.max_height,
            "seed": self.seed,
            "registry_version": registry_version(),
            "version": __version__,
        }


def default_digits() -> int:
    raw = os.environ.get("MALMSTEN_DIGITS")
    if raw is None:
        return 30
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"MALMSTEN_DIGITS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# emitting


class Report:
    """Rows of flat records plus the nested JSON payload for one command."""

    def __init__(self, command: str, config: RunConfig):
        self.command = command
        self.config = config
        self.columns: list[str] = []
        self.rows: list[dict] = []
        self.payload: list[dict] = []
        self.ok = True

    def add(self, row: dict, payload: dict):
        for key in row:
            if key not in self.columns:
                self.columns.append(key)
        self.rows.append(row)
        self.payload.append(payload)

    def render(self) -> str:
        fmt = self.config.output_format
        if fmt == "json":
            doc = {
                "command": self.command,
                "status": "ok" if self.ok else "failed",
                "config": self.config.metadata(),
                "results": self.payload,
            }
            return json.dumps(doc, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=self.columns, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: row.get(k, "") for k in self.columns})
            return buf.getvalue().rstrip("\n")
        widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in self.rows)) for c in self.columns}
        lines = ["  ".join(c.ljust(widths[c]) for c in self.columns)]
        for r in self.rows:
            lines.append("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in self.columns).rstrip())
        return "\n".join(lines)


def _short(x: PrecisionReal, digits: int | None = None) -> str:
    return x.decimal(digits)


def _err(x: PrecisionReal) -> str:
    return x.ctx.nstr(x.error_bound, 3)


# ---------------------------------------------------------------------------
# value specs for pslq

_ZETA_SHORT = re.compile(r"^zeta(\d+)-over-pi(\d+)$")
_BETA_SHORT = re.compile(r"^beta(\d+)-over-pi(\d*)$")


def resolve_value(spec: str, digits: int) -> PrecisionReal:
    """A constant id, a basis ratio such as zeta3-over-pi2, or a kernel id."""
    m = _ZETA_SHORT.match(spec)
    if m:
        s, k = int(m.group(1)), int(m.group(2))
        if s % 2 == 0 or s < 3 or k != s - 1:
            raise UnknownIdError(f"{spec!r} is not zeta(2p+1)/pi^2p")
        return zeta_ratio((s - 1) // 2, digits)
    m = _BETA_SHORT.match(spec)
    if m:
        s, k = int(m.group(1)), int(m.group(2) or 1)
        if s % 2 or s < 2 or k != s - 1:
            raise UnknownIdError(f"{spec!r} is not beta(2p)/pi^(2p-1)")
        return beta_ratio(s // 2, digits)
    try:
        cid = ConstantId.parse(spec)
    except UnknownIdError:
        return integrate(parse_kernel(spec), digits).value
    return constant(cid, digits)


# ---------------------------------------------------------------------------
# commands


def _verify_one(args):
    ident_id, digits = args
    residual = verify_identity(ident_id, digits)
    return ident_id, residual.to_json(), residual_passes(residual, digits)


def cmd_verify(ids: list[str], config: RunConfig) -> Report:
    if ids == ["all"] or not ids:
        names = [i.id for i in identity_registry()]
    else:
        names = [get_identity(i).id for i in ids]  # raises on unknown ids before any work
    jobs = [(n, config.digits) for n in names]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    report = Report("verify", config)
    for name, residual_json, passed in results:
        residual = PrecisionReal.from_json(residual_json)
        report.ok &= passed
        report.add(
            {"id": name, "status": "PASS" if passed else "FAIL", "residual": residual.ctx.nstr(residual.value, 3),
             "bound": _err(residual)},
            {"id": name, "status": "PASS" if passed else "FAIL", "residual": residual_json},
        )
    return report


def cmd_coeffs(family: str, n: int, config: RunConfig, k: int | None = None) -> Report:
    report = Report("coeffs", config)
    if family.lower() in ("xi", "lambda"):
        for i in range(1, n + 1):
            poly = poly_family(family, i, config.digits)
            coeffs = [str(c) for c in reversed(poly.coeffs[::2])]
            report.add(
                {"family": family.lower(), "n": i, "coefficients": ", ".join(coeffs), "certified": True},
                {"family": family.lower(), "n": i, "polynomial": str(poly),
                 "coefficients_ascending": [str(c) for c in poly.coeffs], "certified": True},
            )
        return report
    if family not in FAMILY_TABLE:
        raise UnknownIdError(f"unknown family {family!r}; known: {', '.join([*FAMILY_TABLE, 'xi', 'lambda'])}")
    table = coeff_table(family, n, config.digits, k)
    for row in table.rows:
        report.ok &= row.certified
        coeffs = ", ".join(str(c) for c in row.coefficients) if row.coefficients else "uncertified"
        report.add(
            {"family": family, "n": row.n, "k": "" if row.k is None else row.k, "coefficients": coeffs,
             "certified": row.certified},
            row.to_json(),
        )
    return report


def cmd_poly(family: str, n: int, config: RunConfig) -> Report:
    report = Report("poly", config)
    target = zeta_ratio if family.lower() == "lambda" else beta_ratio
    poly = poly_family(family, n, config.digits)
    value = integrate(poly_kernel(family, poly), config.digits).value
    residual = abs(value - target(n, config.digits))
    passed = residual_passes(residual, config.digits)
    report.ok &= passed
    report.add(
        {"family": family.lower(), "n": n, "polynomial": str(poly), "residual": residual.ctx.nstr(residual.value, 3),
         "status": "PASS" if passed else "FAIL"},
        {"family": family.lower(), "n": n, "polynomial": str(poly),
         "coefficients_ascending": [str(c) for c in poly.coeffs], "residual": residual.to_json(),
         "status": "PASS" if passed else "FAIL"},
    )
    return report


def cmd_pslq(specs: list[str], config: RunConfig) -> Report:
    if len(specs) < 2:
        raise DomainError("pslq needs at least two values")
    values = [resolve_value(s, config.digits) for s in specs]
    result = pslq(values, config.digits, config.max_height, labels=specs)
    report = Report("pslq", config)
    if result.found:
        relation = " + ".join(f"{c}*{lab}" for c, lab in zip(result.coefficients, specs) if c)
        row = {"status": result.status, "relation": relation, "coefficients": " ".join(map(str, result.coefficients)),
               "residual": result.residual.ctx.nstr(result.residual.value, 3)}
    else:
        row = {"status": result.status, "norm_bound": f"{float(result.norm_bound):.6g}",
               "height_bound": result.height_bound, "digits": result.digits_used}
    report.add(row, result.to_json())
    return report


def cmd_fourier(K: int, config: RunConfig) -> Report:
    if K < 1:
        raise DomainError("K must be >= 1")
    report = Report("fourier", config)
    for row in fourier_terms(K, config.digits):
        report.add(
            {"k": row.k, "partial_sum": _short(row.partial_sum, 20), "delta": _short(row.delta, 12),
             "error_bound": _err(row.partial_sum)},
            row.to_json(),
        )
    return report


def cmd_constants(ids: list[str], config: RunConfig) -> Report:
    report = Report("constants", config)
    for name in ids:
        v = resolve_value(name, config.digits)
        report.add({"id": name, "value": _short(v), "error_bound": _err(v)}, {"id": name, **v.to_json()})
    return report


def cmd_integrate(kernels: list[str], config: RunConfig) -> Report:
    report = Report("integrate", config)
    for name in kernels:
        spec = parse_kernel(name)
        r = integrate(spec, config.digits)
        report.add(
            {"kernel": spec.id, "interval": spec.interval.value, "value": _short(r.value), "error_bound": _err(r.value),
             "transform": r.transform.value, "nodes": r.nodes_used},
            {"kernel": spec.id, **r.to_json()},
        )
    return report


# ---------------------------------------------------------------------------
# argument parsing


def _add_globals(parser: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--digits", type=int, default=d, help="decimal digits (default 30, or MALMSTEN_DIGITS)")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default=d if suppress else "text")
    parser.add_argument("--max-height", type=int, default=d if suppress else 10**6, help="PSLQ coefficient bound")
    parser.add_argument("--seed", type=int, default=d if suppress else 0, help="seed recorded in the output config")
    parser.add_argument("--workers", type=int, default=d if suppress else 1, help="processes for identity sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="malmsten", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check registry identities by quadrature")
    p.add_argument("ids", nargs="*", default=["all"], help="identity ids or 'all'")
    p = sub.add_parser("coeffs", help="recover exact coefficient rows of a family")
    p.add_argument("--family", required=True, help=f"one of {', '.join([*FAMILY_TABLE, 'xi', 'lambda'])}")
    p.add_argument("--n", type=int, required=True, help="rows 1..n")
    p.add_argument("--k", type=int, default=None, help="k for the sinh families")
    p = sub.add_parser("poly", help="recover Xi_n or Lambda_n and check its integral")
    p.add_argument("--family", required=True, choices=["xi", "lambda"])
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("pslq", help="integer relation search among values")
    p.add_argument("values", nargs="+", help="constant ids, kernel ids, or zetaS-over-piK / betaS-over-piK")
    p = sub.add_parser("fourier", help="partial sums of the cosine series for pi/4")
    p.add_argument("--K", type=int, required=True)
    p = sub.add_parser("constants", help="evaluate basis constants")
    p.add_argument("ids", nargs="+")
    p = sub.add_parser("integrate", help="integrate catalog kernels")
    p.add_argument("kernels", nargs="+")
    for action in sub.choices.values():
        _add_globals(action, suppress=True)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        digits = args.digits if args.digits is not None else default_digits()
        config = RunConfig(digits, args.max_height, args.output_format, args.seed, args.workers)
        cmd = args.command
        if cmd == "verify":
            report = cmd_verify(args.ids, config)
        elif cmd == "coeffs":
            if args.n < 1:
                raise DomainError("--n must be >= 1")
            report = cmd_coeffs(args.family, args.n, config, args.k)
        elif cmd == "poly":
            report = cmd_poly(args.family, args.n, config)
        elif cmd == "pslq":
            report = cmd_pslq(args.values, config)
        elif cmd == "fourier":
            report = cmd_fourier(args.K, config)
        elif cmd == "constants":
            report = cmd_constants(args.ids, config)
        else:
            report = cmd_integrate(args.kernels, config)
    except (UnknownIdError, DomainError) as exc:
        print(f"malmsten: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionFailure, InsufficientPrecisionError, DivergenceError) as exc:
        print(f"malmsten: numeric failure: {exc}", file=sys.stderr)
        if isinstance(exc, InsufficientPrecisionError):
            print("hint: rerun with a larger --digits", file=sys.stderr)
        return EXIT_NUMERIC
    print(report.render(), file=out)
    return EXIT_OK if report.ok else EXIT_NUMERIC


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))
