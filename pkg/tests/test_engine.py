from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from centlab.engine.group import GroupHandle
from centlab.engine.isomorphism import are_isomorphic, isomorphic
from centlab.engine.queries import (
    center,
    central_quotient,
    element_order,
    mul,
    power,
    quotient_by_central,
    subgroup_generated,
)
from centlab.engine.validate import validate_axioms
from centlab.errors import (
    ElementIndexError,
    InvalidGroupError,
    IsoBudgetExceededError,
    NotCentralError,
    OrderBoundExceededError,
)
from centlab.families.builders import (
    cyclic,
    direct_product,
    heisenberg_mod,
    make_L,
    semidirect_cyclic,
)

LOOP_5 = np.asarray(
    [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ],
    dtype=np.int64,
)


def _loop_rule(xs, ys):
    return LOOP_5[xs, ys]


def test_cyclic_orders_and_powers() -> None:
    g = cyclic(4)
    assert Counter(g.element_orders.tolist()) == Counter([1, 2, 4, 4])
    assert element_order(cyclic(9), 3) == 3
    assert power(g, 1, 3) == 3
    assert power(g, 3, 0) == g.identity
    assert cyclic(1).order == 1


def test_element_index_is_checked() -> None:
    g = cyclic(5)
    with pytest.raises(ElementIndexError):
        mul(g, 0, 5)
    with pytest.raises(IndexError):
        g.label(-1)


def test_order_bound_is_enforced() -> None:
    with pytest.raises(OrderBoundExceededError):
        GroupHandle(50, lambda xs, ys: (xs + ys) % 50, max_order=10)


def test_non_associative_loop_is_rejected_with_a_triple() -> None:
    light = validate_axioms(5, _loop_rule, 0, [1, 2, 3, 4])
    assert not light.ok
    assert light.reason == "not associative"
    assert light.triple is not None
    x, s, y = light.triple
    assert LOOP_5[LOOP_5[x, s], y] != LOOP_5[x, LOOP_5[s, y]]

    full = validate_axioms(5, _loop_rule, 0, full_scan=True)
    assert not full.ok
    assert full.method == "full"


def test_generators_must_reach_every_element() -> None:
    s3 = semidirect_cyclic(3, 2, 2)
    with pytest.raises(InvalidGroupError, match="reach 2 of 6"):
        GroupHandle(6, s3.rule, generators=[1])
    assert center(GroupHandle(6, s3.rule, generators=list(s3.generators))).size == 1


def test_non_associative_rule_is_rejected_at_construction() -> None:
    with pytest.raises(InvalidGroupError, match="not associative"):
        GroupHandle(5, _loop_rule, generators=[1, 2, 3, 4])
    unchecked = GroupHandle(5, _loop_rule, generators=[1, 2, 3, 4], validate=False)
    assert unchecked.order == 5


def test_cyclic_rule_passes_both_checks() -> None:
    rule = cyclic(6).rule
    assert validate_axioms(6, rule, 0, [1]).ok
    assert validate_axioms(6, rule, 0, full_scan=True).ok


def test_missing_identity_is_reported() -> None:
    check = validate_axioms(3, lambda xs, ys: np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64), 0)
    assert not check.ok
    assert check.reason == "no two-sided identity"


def test_heisenberg_centers() -> None:
    assert center(heisenberg_mod(3)).size == 3
    g = heisenberg_mod(4)
    assert list(center(g).members) == [0, 1, 2, 3]
    assert center(heisenberg_mod(9)).size == 9


def test_central_quotient_of_heisenberg_is_homocyclic() -> None:
    quotient = central_quotient(heisenberg_mod(4))
    assert quotient.order == 16
    assert quotient.is_abelian
    assert are_isomorphic(quotient, direct_product(cyclic(4), cyclic(4)))


def test_quotient_by_non_central_subgroup_fails() -> None:
    g = heisenberg_mod(3)
    a = 9
    sub = subgroup_generated(g, [a])
    assert sub.size == 3
    with pytest.raises(NotCentralError):
        quotient_by_central(g, sub)


def test_isomorphism_examples() -> None:
    assert isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    assert are_isomorphic(direct_product(cyclic(4), cyclic(4)), make_L(2, 0))
    assert are_isomorphic(make_L(3, 0), direct_product(cyclic(9), cyclic(9)))
    assert are_isomorphic(semidirect_cyclic(9, 9, 4), make_L(3, 1))
    assert are_isomorphic(semidirect_cyclic(5, 3, 1), direct_product(cyclic(5), cyclic(3)))
    assert not are_isomorphic(make_L(3, 0), make_L(3, 1))


def test_isomorphism_budget_is_not_a_negative_answer() -> None:
    with pytest.raises(IsoBudgetExceededError):
        isomorphic(cyclic(6), direct_product(cyclic(2), cyclic(3)), budget=1)


def test_symmetric_group_from_semidirect_product() -> None:
    s3 = semidirect_cyclic(3, 2, 2)
    assert sorted(s3.element_orders.tolist()) == [1, 2, 2, 2, 3, 3]
    assert not s3.is_abelian


def test_presentation_relations_of_L() -> None:
    lg = make_L(3, 1)
    x, y = 9, 1
    assert mul(lg, y, x) == 4 * 9 + 1
    assert element_order(make_L(2, 1), 4 + 1) == 4


def test_dense_and_rule_backends_agree() -> None:
    dense = heisenberg_mod(5)
    sparse = heisenberg_mod(5, dense_table_limit=10)
    assert dense.backend == "table"
    assert sparse.backend == "rule"
    xs = np.arange(dense.order)
    assert np.array_equal(dense.mul_many(xs, xs[::-1]), sparse.mul_many(xs, xs[::-1]))
    assert np.array_equal(dense.inverse_table, sparse.inverse_table)
