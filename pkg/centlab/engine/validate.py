"""Group-axiom validation for multiplication rules (Light's associativity test)."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from centlab.constants import DEFAULT_FULL_SCAN_LIMIT
from centlab.engine.elements import IndexArray
from centlab.engine.group import MulRule, evaluate_rule
from centlab.errors import OrderBoundExceededError
from centlab.utils.logging import debug_event, get_logger

CHUNK_CELLS = 1 << 20

logger = get_logger("centlab.engine")


@dataclass(frozen=True, slots=True)
class AxiomCheck:
    ok: bool
    reason: str = ""
    triple: tuple[int, int, int] | None = None
    method: str = "light"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _rows(order: int) -> int:
    return max(1, CHUNK_CELLS // order)


def _first_true(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in np.argwhere(mask)[0])


def _check_table_shape(order: int, rule: MulRule, identity: int) -> AxiomCheck | None:
    elements = np.arange(order, dtype=np.int64)
    left = evaluate_rule(rule, identity, elements)
    right = evaluate_rule(rule, elements, identity)
    if not (np.array_equal(left, elements) and np.array_equal(right, elements)):
        return AxiomCheck(False, "no two-sided identity")

    rows = _rows(order)
    for start in range(0, order, rows):
        xs = elements[start : start + rows]
        products = evaluate_rule(rule, xs[:, None], elements[None, :])
        outside = (products < 0) | (products >= order)
        if outside.any():
            r, c = _first_true(outside)
            return AxiomCheck(False, f"product of {int(xs[r])} and {c} is not an element")
        missing = ~(products == identity).any(axis=1)
        if missing.any():
            return AxiomCheck(False, f"element {int(xs[int(np.argmax(missing))])} has no inverse")
    return None


def _generated_by_products(order: int, rule: MulRule, gens: IndexArray) -> bool:
    seen = np.zeros(order, dtype=bool)
    seen[gens] = True
    frontier = gens
    while frontier.size:
        products = np.unique(evaluate_rule(rule, frontier[:, None], gens[None, :]).ravel())
        fresh = products[~seen[products]]
        seen[fresh] = True
        frontier = fresh
    return bool(seen.all())


def light_test(order: int, rule: MulRule, gens: IndexArray) -> AxiomCheck:
    """Light's test: ``(x s) y == x (s y)`` for every x, y and each generator s."""
    elements = np.arange(order, dtype=np.int64)
    rows = _rows(order)
    for s in gens.tolist():
        s_times_y = evaluate_rule(rule, s, elements)
        for start in range(0, order, rows):
            xs = elements[start : start + rows]
            lhs = evaluate_rule(rule, evaluate_rule(rule, xs, s)[:, None], elements[None, :])
            rhs = evaluate_rule(rule, xs[:, None], s_times_y[None, :])
            bad = lhs != rhs
            if bad.any():
                r, c = _first_true(bad)
                return AxiomCheck(False, "not associative", (int(xs[r]), int(s), c))
    return AxiomCheck(True)


def _full_scan(order: int, rule: MulRule) -> AxiomCheck:
    elements = np.arange(order, dtype=np.int64)
    table = evaluate_rule(rule, elements[:, None], elements[None, :])
    for x in range(order):
        # (x*y)*w against x*(y*w), indexed [y, w]
        bad = table[table[x]] != table[x][table]
        if bad.any():
            y, w = _first_true(bad)
            return AxiomCheck(False, "not associative", (x, y, w), method="full")
    return AxiomCheck(True, method="full")


def validate_axioms(
    order: int,
    rule: MulRule,
    identity: int,
    generators: Sequence[int] | None = None,
    *,
    full_scan: bool = False,
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT,
) -> AxiomCheck:
    """Check closure, identity, inverses and associativity of ``rule``.

    Associativity uses Light's test over ``generators``; the generators'
    product closure must cover every element for the test to be conclusive.
    With ``full_scan`` every triple is compared instead.
    """
    if full_scan and order > full_scan_limit:
        raise OrderBoundExceededError("full associativity scan", order, full_scan_limit)
    if not 0 <= identity < order:
        return AxiomCheck(False, f"identity {identity} is not an element")

    shape = _check_table_shape(order, rule, identity)
    if shape is not None:
        return shape

    if full_scan:
        result = _full_scan(order, rule)
    else:
        gens = np.unique(
            np.asarray(list(generators) if generators else range(order), dtype=np.int64)
        )
        if not _generated_by_products(order, rule, gens):
            return AxiomCheck(False, "generators do not generate every element")
        result = light_test(order, rule, gens)
    debug_event(logger, "axioms.checked", order=order, ok=result.ok, method=result.method)
    return result
