"""Registry of exact integral identities, loaded from the bundled JSON document."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .constants import beta_ratio, constant, zeta_ratio
from .errors import DomainError, UnknownIdError
from .kernels import KernelSpec, parse_kernel
from .precision import PrecisionReal, sum_reals

_ZETA = re.compile(r"^zeta\((\d+)\)/pi\^(\d+)$")
_BETA = re.compile(r"^beta\((\d+)\)/pi\^(\d+)$")
_PLAIN = ("gamma", "ln2", "lnpi", "pi", "1")


@dataclass(frozen=True)
class BasisTerm:
    """One of zeta(2p+1)/pi^2p, beta(2p)/pi^(2p-1), gamma, ln 2, ln pi, pi or 1."""

    kind: str
    p: int = 0

    @classmethod
    def parse(cls, text: str) -> "BasisTerm":
        text = text.strip().replace(" ", "")
        m = _ZETA.match(text)
        if m:
            s, k = int(m.group(1)), int(m.group(2))
            if s % 2 == 0 or k != s - 1 or s < 3:
                raise UnknownIdError(f"basis {text!r} is not of the form zeta(2p+1)/pi^2p")
            return cls("zeta", (s - 1) // 2)
        m = _BETA.match(text)
        if m:
            s, k = int(m.group(1)), int(m.group(2))
            if s % 2 or k != s - 1 or s < 2:
                raise UnknownIdError(f"basis {text!r} is not of the form beta(2p)/pi^(2p-1)")
            return cls("beta", s // 2)
        if text in _PLAIN:
            return cls(text)
        raise UnknownIdError(f"unknown basis term {text!r}")

    def __str__(self):
        if self.kind == "zeta":
            return f"zeta({2 * self.p + 1})/pi^{2 * self.p}"
        if self.kind == "beta":
            return f"beta({2 * self.p})/pi^{2 * self.p - 1}"
        return self.kind

    def value(self, digits: int) -> PrecisionReal:
        if self.kind == "zeta":
            return zeta_ratio(self.p, digits)
        if self.kind == "beta":
            return beta_ratio(self.p, digits)
        if self.kind == "1":
            return PrecisionReal.exact(1, digits)
        return constant(self.kind, digits)


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    aliases: tuple[str, ...]
    description: str
    lhs: tuple[tuple[Fraction, KernelSpec], ...]
    rhs: tuple[tuple[Fraction, BasisTerm], ...]

    def __post_init__(self):
        bases = [b for _, b in self.rhs]
        if len(set(bases)) != len(bases):
            raise DomainError(f"identity {self.id} repeats a basis term")

    def rhs_value(self, digits: int) -> PrecisionReal:
        return sum_reals((b.value(digits) * c for c, b in self.rhs), digits)

    def coefficient(self, basis: str | BasisTerm) -> Fraction:
        if isinstance(basis, str):
            basis = BasisTerm.parse(basis)
        return next((c for c, b in self.rhs if b == basis), Fraction(0))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "aliases": list(self.aliases),
            "description": self.description,
            "lhs": [[str(c), k.id] for c, k in self.lhs],
            "rhs": [[str(c), str(b)] for c, b in self.rhs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IdentitySpec":
        return cls(
            data["id"],
            tuple(data.get("aliases", ())),
            data.get("description", ""),
            tuple((Fraction(c), parse_kernel(k)) for c, k in data["lhs"]),
            tuple((Fraction(c), BasisTerm.parse(b)) for c, b in data["rhs"]),
        )


@lru_cache(maxsize=1)
def _load() -> tuple[int, tuple[IdentitySpec, ...]]:
    raw = resources.files("malmsten.data").joinpath("identities.json").read_text(encoding="utf-8")
    doc = json.loads(raw)
    return int(doc["version"]), tuple(IdentitySpec.from_json(d) for d in doc["identities"])


def registry_version() -> int:
    return _load()[0]


def identity_registry() -> list[IdentitySpec]:
    """All registered identities, in registry order."""
    return list(_load()[1])


@lru_cache(maxsize=1)
def _index() -> dict[str, IdentitySpec]:
    table = {}
    for ident in identity_registry():
        for name in (ident.id, *ident.aliases):
            if name in table:
                raise RuntimeError(f"duplicate identity name {name!r} in registry")
            table[name] = ident
    return table


def get_identity(name: str) -> IdentitySpec:
    try:
        return _index()[name]
    except KeyError:
        raise UnknownIdError(f"unknown identity id {name!r}") from None
