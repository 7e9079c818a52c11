from __future__ import annotations

from collections.abc import Callable
from functools import cache
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centlab.analysis.cccgraph import classes_commute, classes_commute_exhaustive, noncentral_classes
from centlab.analysis.conjugacy import class_of, conjugacy_classes
from centlab.engine.group import GroupHandle, MulRule
from centlab.engine.isomorphism import isomorphic
from centlab.engine.queries import (
    center_mask,
    centralizer_of,
    commuting_mask,
    mul,
    subgroup_generated,
)
from centlab.engine.validate import validate_axioms
from centlab.errors import InconsistentExtensionError
from centlab.families.builders import (
    central_extension,
    collection_rule,
    cyclic,
    direct_product,
    heisenberg_mod,
    make_L,
    semidirect_cyclic,
)
from centlab.families.normal_form import ExtensionParams, NormalFormCodec

CATALOG: dict[str, Callable[[], GroupHandle]] = {
    "L(2,0)": lambda: make_L(2, 0),
    "L(2,1)": lambda: make_L(2, 1),
    "L(3,1)": lambda: make_L(3, 1),
    "heis3": lambda: heisenberg_mod(3),
    "heis4": lambda: heisenberg_mod(4),
}

TWISTED = ExtensionParams(p=3, r=1, m=3, alpha=1, beta=0, gamma=1)


@cache
def _group(name: str) -> GroupHandle:
    return CATALOG[name]()


def _catalog_group(name: str, request: pytest.FixtureRequest) -> GroupHandle:
    if name == "ce":
        return request.getfixturevalue("nonabelian_p3").group
    return _group(name)


def _rule_and_generators(name: str) -> tuple[int, MulRule, int, list[int]]:
    if name == "ce(3,1,3,1,0,1)":
        codec = NormalFormCodec(9, 3)
        gens = [codec.encode(1, 0), codec.encode(0, 1), codec.encode(0, 0, 1)]
        return TWISTED.order, collection_rule(TWISTED), 0, gens
    g = _group(name)
    return g.order, g.rule, g.identity, list(g.generators)


@pytest.mark.parametrize("name", [*CATALOG, "ce(3,1,3,1,0,1)"])
def test_light_test_agrees_with_full_scan(name: str) -> None:
    order, rule, identity, gens = _rule_and_generators(name)
    light = validate_axioms(order, rule, identity, gens)
    full = validate_axioms(order, rule, identity, full_scan=True)
    assert light.ok == full.ok
    if name in CATALOG:
        assert full.ok


def test_twisted_extension_builds_exactly_when_axioms_hold() -> None:
    full = validate_axioms(TWISTED.order, collection_rule(TWISTED), 0, full_scan=True)
    if full.ok:
        assert central_extension(TWISTED).order == 243
    else:
        with pytest.raises(InconsistentExtensionError):
            central_extension(TWISTED)


@pytest.mark.parametrize("name", [*CATALOG, "ce"])
def test_rep_scan_matches_pair_scan_across_catalog(name: str, request: pytest.FixtureRequest) -> None:
    g = _catalog_group(name, request)
    classes = noncentral_classes(g)
    assert (not classes) == g.is_abelian
    for a in classes:
        for b in classes:
            assert classes_commute(g, a, b) == classes_commute_exhaustive(g, a, b)


@settings(max_examples=120, deadline=None)
@given(name=st.sampled_from(sorted(CATALOG)), data=st.data())
def test_random_element_pairs(name: str, data: st.DataObject) -> None:
    g = _group(name)
    elements = st.integers(min_value=0, max_value=g.order - 1)
    x, y, w = data.draw(elements), data.draw(elements), data.draw(elements)

    assert mul(g, mul(g, x, y), w) == mul(g, x, mul(g, y, w))
    commutes = mul(g, x, y) == mul(g, y, x)
    assert bool(commuting_mask(g, x)[y]) == commutes == bool(commuting_mask(g, y)[x])
    assert (y in centralizer_of(g, x)) == commutes

    zmask = center_mask(g)
    if zmask[x] or zmask[y]:
        assert commutes
        return
    classes = conjugacy_classes(g)
    owner = class_of(g)
    cx, cy = classes[int(owner[x])], classes[int(owner[y])]
    joined = classes_commute(g, cx, cy)
    assert joined == classes_commute_exhaustive(g, cx, cy) == classes_commute(g, cy, cx)
    if commutes:
        assert joined


ISO_CATALOG: dict[str, Callable[[], GroupHandle]] = {
    **CATALOG,
    "Z4xZ4": lambda: direct_product(cyclic(4), cyclic(4)),
    "Z9:Z9": lambda: semidirect_cyclic(9, 9, 4),
    "Z16": lambda: cyclic(16),
}


@cache
def _iso_group(name: str) -> GroupHandle:
    return ISO_CATALOG[name]()


@pytest.mark.parametrize("name", sorted(ISO_CATALOG))
def test_isomorphic_is_reflexive(name: str) -> None:
    g = _iso_group(name)
    images = isomorphic(g, g)
    assert images is not None
    assert set(images) <= set(g.generators)
    assert subgroup_generated(g, images).size == g.order
    assert subgroup_generated(g, images.values()).size == g.order


@pytest.mark.parametrize(("left", "right"), list(combinations(sorted(ISO_CATALOG), 2)))
def test_isomorphic_is_symmetric(left: str, right: str) -> None:
    a, b = _iso_group(left), _iso_group(right)
    forward = isomorphic(a, b) is not None
    assert forward == (isomorphic(b, a) is not None)
    expected = {frozenset({"L(2,0)", "Z4xZ4"}), frozenset({"L(3,1)", "Z9:Z9"})}
    assert forward == (frozenset({left, right}) in expected)
