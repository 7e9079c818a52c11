from __future__ import annotations

import contextlib

import pytest

from centlab.config import AppConfig
from centlab.constants import EXTENSION_MAX_ORDER, QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN
from centlab.engine.isomorphism import are_isomorphic
from centlab.engine.queries import center
from centlab.errors import (
    DescriptorError,
    FamilySpecError,
    InconsistentExtensionError,
    InvalidActionError,
    OrderBoundExceededError,
)
from centlab.families import builders
from centlab.families.arith import is_prime, order_formula
from centlab.families.builders import central_extension, heisenberg_mod, make_L, semidirect_cyclic
from centlab.families.identify import describe_family, identify_quotient
from centlab.families.normal_form import (
    ExtensionParams,
    FamilyDescriptor,
    NormalForm,
    NormalFormCodec,
)
from centlab.families.registry import BuildLimits, build_family, parse_family_spec


def test_order_formula_cases() -> None:
    assert order_formula(3, 0, 0) == 1
    assert order_formula(3, 3, 6) == 3
    assert order_formula(3, 1, 0) == 9
    with pytest.raises(ValueError):
        order_formula(3, 9, 0)


def test_is_prime() -> None:
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_codec_labels_and_indices() -> None:
    codec = NormalFormCodec(9, 3)
    x = codec.encode(2, 1, 1)
    assert x == (2 * 9 + 1) * 3 + 1
    assert codec.decode(x) == NormalForm(2, 1, 1)
    assert codec.label(0) == "e"
    assert codec.label(codec.encode(2, 1)) == "a^2 b"


def test_extension_params_are_validated() -> None:
    with pytest.raises(DescriptorError):
        ExtensionParams(p=4, r=0, m=1)
    with pytest.raises(DescriptorError):
        ExtensionParams(p=3, r=1, m=3, alpha=3)
    assert ExtensionParams(p=3, r=1, m=3).order == 243


def test_family_descriptor_arithmetic() -> None:
    desc = FamilyDescriptor(3, 9, QUOTIENT_ABELIAN)
    assert (desc.n, desc.m_coef) == (3, 1)
    assert FamilyDescriptor(3, 3, QUOTIENT_NONABELIAN).m_coef is None
    with pytest.raises(DescriptorError):
        FamilyDescriptor(3, 3, QUOTIENT_ABELIAN)
    with pytest.raises(DescriptorError):
        FamilyDescriptor(3, 9, "cyclic")


def test_invalid_action_is_rejected() -> None:
    with pytest.raises(InvalidActionError):
        semidirect_cyclic(9, 2, 4)


def test_central_extension_matches_heisenberg() -> None:
    for p in (2, 3):
        g = central_extension(ExtensionParams(p=p, r=0, m=p * p, gamma=1))
        assert are_isomorphic(g, heisenberg_mod(p * p))


def test_inconsistent_extension_carries_reason() -> None:
    with pytest.raises(InconsistentExtensionError) as info:
        central_extension(ExtensionParams(p=2, r=0, m=8, gamma=1))
    assert info.value.params is not None
    assert info.value.reason


def test_extension_with_large_center_still_builds() -> None:
    g = central_extension(ExtensionParams(p=3, r=1, m=3, gamma=1))
    assert g.order == 243
    assert center(g).size > 3


def test_identify_quotient_names() -> None:
    ident = identify_quotient(heisenberg_mod(4))
    assert ident.name == "Z4xZ4"
    assert ident.kind == QUOTIENT_ABELIAN
    assert identify_quotient(make_L(3, 0)).name == "trivial"
    assert identify_quotient(heisenberg_mod(3)).name == "other(order 9)"

    desc = describe_family(heisenberg_mod(9))
    assert (desc.p, desc.z_order, desc.n, desc.m_coef) == (3, 9, 3, 1)
    with pytest.raises(DescriptorError):
        describe_family(heisenberg_mod(3))


def test_parse_family_spec_continues_lists() -> None:
    spec = parse_family_spec("search:p=3,r=1,m=3,9")
    assert spec.values == {"p": [3], "r": [1], "m": [3, 9]}
    assert str(spec) == "search:p=3,r=1,m=3,9"
    with pytest.raises(FamilySpecError):
        parse_family_spec("heis")
    with pytest.raises(FamilySpecError):
        parse_family_spec("mystery:q=3")
    with pytest.raises(FamilySpecError):
        parse_family_spec("heis:q=x")


def test_build_family_registry() -> None:
    built = build_family("L:p=3,r=0")
    assert len(built) == 1
    assert built[0].group.order == 81
    assert built[0].group.is_abelian
    assert build_family("heis:q=4")[0].group.order == 64
    with pytest.raises(FamilySpecError):
        build_family("heis:p=3")


def test_build_limits_reach_the_builders() -> None:
    assert build_family("heis:q=4")[0].group.backend == "table"
    (sparse,) = build_family("heis:q=4", BuildLimits(dense_table_limit=10))
    assert sparse.group.backend == "rule"
    assert build_family("cyclic:n=12", BuildLimits(dense_table_limit=10))[0].group.backend == "rule"
    with pytest.raises(OrderBoundExceededError):
        build_family("heis:q=9", BuildLimits(max_order=100))
    with pytest.raises(OrderBoundExceededError):
        build_family("L:p=3,r=1", BuildLimits(max_order=50))


def test_full_scan_limit_selects_the_axiom_check(monkeypatch: pytest.MonkeyPatch) -> None:
    seen: list[bool] = []
    real = builders.validate_axioms

    def recording(*args, **kwargs):
        seen.append(kwargs["full_scan"])
        return real(*args, **kwargs)

    monkeypatch.setattr(builders, "validate_axioms", recording)
    build_family("L:p=2,r=1")
    build_family("L:p=2,r=1", BuildLimits(full_scan_limit=8))
    with contextlib.suppress(InconsistentExtensionError):
        build_family("ce:p=2,r=0,m=2,a=1,b=0,g=0")
    assert seen == [True, False, True]


def test_limits_follow_engine_config() -> None:
    engine = AppConfig.default().engine
    engine.max_order = 123
    engine.dense_table_limit = 45
    engine.full_scan_limit = 67
    assert BuildLimits.from_config(engine) == BuildLimits(123, 45, 67)
    assert BuildLimits(max_order=10**6).extension_max_order() == EXTENSION_MAX_ORDER
