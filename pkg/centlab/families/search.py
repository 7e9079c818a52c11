"""Exhaustive search for central extensions whose central quotient is L(p, r)."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np

from centlab.constants import (
    DEFAULT_DENSE_TABLE_LIMIT,
    DEFAULT_FULL_SCAN_LIMIT,
    DEFAULT_ISO_BUDGET,
    DEFAULT_ISO_ORDER_BOUND,
    EXTENSION_MAX_ORDER,
    QUOTIENT_ABELIAN,
    QUOTIENT_NONABELIAN,
)
from centlab.engine.group import GroupHandle, evaluate_rule
from centlab.engine.isomorphism import isomorphic
from centlab.engine.queries import center, quotient_by_central
from centlab.errors import InconsistentExtensionError, OrderBoundExceededError
from centlab.families.builders import central_extension, collection_rule, make_L
from centlab.families.normal_form import ExtensionParams, FamilyDescriptor, NormalFormCodec
from centlab.utils.logging import debug_event, get_logger

try:
    from tqdm import tqdm

    _HAS_TQDM = True
except ImportError:
    _HAS_TQDM = False

logger = get_logger("centlab.search")


@dataclass(slots=True)
class ExtensionResult:
    params: ExtensionParams
    group: GroupHandle
    descriptor: FamilyDescriptor

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "group": self.group.describe(),
            "descriptor": self.descriptor.to_dict(),
        }


def _candidates(p: int, r: int, z_orders: Iterable[int]) -> Iterator[ExtensionParams]:
    for m in sorted(set(z_orders)):
        for alpha, beta, gamma in product(range(m), repeat=3):
            yield ExtensionParams(p=p, r=r, m=m, alpha=alpha, beta=beta, gamma=gamma)


def _center_size_from_rule(params: ExtensionParams) -> int:
    """Count elements commuting with ``a`` and ``b``; ``z`` is central by construction."""
    codec = NormalFormCodec(params.p * params.p, params.m)
    rule = collection_rule(params)
    xs = np.arange(params.order, dtype=np.int64)
    mask = np.ones(params.order, dtype=bool)
    for s in (codec.encode(1, 0), codec.encode(0, 1)):
        mask &= evaluate_rule(rule, s, xs) == evaluate_rule(rule, xs, s)
    return int(mask.sum())


class _Screen:
    def __init__(
        self,
        target: GroupHandle,
        iso_order_bound: int,
        iso_budget: int,
        *,
        dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    ) -> None:
        self.target = target
        self.dense_table_limit = dense_table_limit
        self.iso_order_bound = iso_order_bound
        self.iso_budget = iso_budget

    def __call__(self, params: ExtensionParams) -> GroupHandle | None:
        # Conjunctive filters, cheapest first.
        if _center_size_from_rule(params) != params.m:
            return None
        try:
            group = central_extension(params, dense_table_limit=self.dense_table_limit)
        except InconsistentExtensionError:
            return None
        if center(group).size != params.m:
            return None
        quotient = quotient_by_central(group, center(group))
        if quotient.order != self.target.order:
            return None
        mapping = isomorphic(
            quotient, self.target, order_bound=self.iso_order_bound, budget=self.iso_budget
        )
        return group if mapping is not None else None


def search_extensions(
    p: int,
    r: int,
    z_orders: Iterable[int],
    *,
    limit: int | None = None,
    threads: int = 1,
    progress: bool = False,
    max_order: int = EXTENSION_MAX_ORDER,
    iso_order_bound: int = DEFAULT_ISO_ORDER_BOUND,
    iso_budget: int = DEFAULT_ISO_BUDGET,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT,
) -> list[ExtensionResult]:
    """Enumerate ``(m, alpha, beta, gamma)`` lexicographically and keep valid exemplars.

    A candidate is kept when its rule is a group, its center has order ``m``
    and the central quotient is isomorphic to ``make_L(p, r)``. Results are
    deduplicated up to isomorphism, keeping the first of each type; ``limit``
    stops after that many distinct types.
    """
    orders = sorted(set(z_orders))
    for m in orders:
        if p**4 * m > max_order:
            raise OrderBoundExceededError("central extension", p**4 * m, max_order)

    target = make_L(p, r, dense_table_limit=dense_table_limit, full_scan_limit=full_scan_limit)
    screen = _Screen(
        target,
        iso_order_bound,
        iso_budget,
        dense_table_limit=dense_table_limit,
    )
    kind = QUOTIENT_ABELIAN if r == 0 else QUOTIENT_NONABELIAN
    candidates = list(_candidates(p, r, orders))
    results: list[ExtensionResult] = []

    bar = None
    if progress and _HAS_TQDM:
        bar = tqdm(total=len(candidates), desc=f"search p={p} r={r}", unit="cand", leave=False)

    def screened() -> Iterator[tuple[ExtensionParams, GroupHandle | None]]:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                yield from zip(candidates, pool.map(screen, candidates), strict=True)
        else:
            for params in candidates:
                yield params, screen(params)

    try:
        for params, group in screened():
            if bar is not None:
                bar.update(1)
            if group is None:
                continue
            duplicate = any(
                isomorphic(group, kept.group, order_bound=max_order, budget=iso_budget) is not None
                for kept in results
                if kept.params.m == params.m
            )
            debug_event(logger, "search.accepted", duplicate=duplicate, **params.to_dict())
            if duplicate:
                continue
            results.append(ExtensionResult(params, group, FamilyDescriptor(p, params.m, kind)))
            if limit is not None and len(results) >= limit:
                break
    finally:
        if bar is not None:
            bar.close()

    logger.info(
        "Extension search p=%s r=%s |Z| in %s: %s candidates, %s isomorphism types",
        p,
        r,
        orders,
        len(candidates),
        len(results),
    )
    return results
