from fractions import Fraction

import pytest

from malmsten.errors import DomainError, UnknownIdError
from malmsten.identities import BasisTerm, IdentitySpec, get_identity, identity_registry, registry_version
from malmsten.quadrature import residual_passes, verify_identity

F = Fraction


def test_registry_examples():
    assert get_identity("eq-1.1").coefficient("zeta(3)/pi^2") == -7
    row = get_identity("sin20x")
    assert [row.coefficient(f"zeta({2 * p + 1})/pi^{2 * p}") for p in range(1, 6)] == [
        F(-563, 225), F(178064, 945), F(-87376, 15), F(261632, 3), -524032,
    ]
    assert get_identity("prop-2.6-n1").coefficient("zeta(3)/pi^2") == F(-7, 8)
    assert get_identity("malmsten-zeta3").coefficient("zeta(3)/pi^2") == F(7, 8)
    assert get_identity("malmsten-by-parts").coefficient("zeta(3)/pi^2") == F(7, 4)


def test_registry_is_well_formed():
    assert registry_version() >= 1
    idents = identity_registry()
    names = [n for i in idents for n in (i.id, *i.aliases)]
    assert len(names) == len(set(names))
    for ident in idents:
        bases = [b for _, b in ident.rhs]
        assert len(bases) == len(set(bases))
        assert ident.lhs


@pytest.mark.parametrize("ident", identity_registry(), ids=lambda i: i.id)
def test_json_round_trip(ident):
    assert IdentitySpec.from_json(ident.to_json()) == ident


def test_duplicate_basis_rejected():
    data = get_identity("sin8x").to_json()
    data["rhs"] = [["1", "zeta(3)/pi^2"], ["2", "zeta(3)/pi^2"]]
    with pytest.raises(DomainError):
        IdentitySpec.from_json(data)


def test_unknown_id():
    with pytest.raises(UnknownIdError):
        get_identity("bogus-id")


@pytest.mark.parametrize("text", ["zeta(4)/pi^3", "zeta(3)/pi^3", "beta(3)/pi^2", "catalan"])
def test_bad_basis(text):
    with pytest.raises(UnknownIdError):
        BasisTerm.parse(text)


def test_basis_round_trip():
    for text in ["zeta(5)/pi^4", "beta(2)/pi^1", "gamma", "ln2", "lnpi", "pi", "1"]:
        assert str(BasisTerm.parse(text)) == text


@pytest.mark.parametrize("name", ["sin4x", "blagouchine-I2", "malmsten-zeta3"])
def test_verify_examples(name):
    assert verify_identity(name, 30).value < 1e-25


def test_aliases_resolve_to_descriptive_ids():
    assert get_identity("eq-1.1") is get_identity("sin4x")
    assert get_identity("prop-2.7-n1").id != "prop-2.7-n1"
    assert verify_identity("prop-2.7-n1", 30).value < 1e-25


@pytest.mark.parametrize("ident", identity_registry(), ids=lambda i: i.id)
def test_whole_registry_at_20_digits(ident):
    assert residual_passes(verify_identity(ident.id, 20), 20)
