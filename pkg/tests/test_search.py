from __future__ import annotations

from centlab.engine.isomorphism import are_isomorphic
from centlab.engine.queries import center
from centlab.families.builders import heisenberg_mod
from centlab.families.identify import identify_quotient
from centlab.families.normal_form import ExtensionParams
from centlab.families.search import search_extensions


def test_nonabelian_quotient_exemplar_for_p3() -> None:
    found = search_extensions(3, 1, [3], limit=1)
    assert len(found) == 1
    item = found[0]
    assert item.params == ExtensionParams(p=3, r=1, m=3, alpha=1, beta=0, gamma=0)
    assert item.group.order == 243
    assert center(item.group).size == 3
    assert identify_quotient(item.group).name == "Z9:Z9"
    assert item.descriptor.n == 1


def test_no_nonabelian_quotient_for_p2_in_search_space() -> None:
    assert search_extensions(2, 1, [2, 4]) == []


def test_abelian_quotient_search_finds_heisenberg() -> None:
    found = search_extensions(2, 0, [4])
    assert found
    assert found[0].params == ExtensionParams(p=2, r=0, m=4, alpha=0, beta=0, gamma=1)
    assert any(are_isomorphic(item.group, heisenberg_mod(4)) for item in found)


def test_threaded_search_keeps_sequential_order() -> None:
    sequential = search_extensions(2, 0, [4])
    threaded = search_extensions(2, 0, [4], threads=4)
    assert [item.params for item in threaded] == [item.params for item in sequential]
