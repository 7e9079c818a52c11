"""Structural queries on a GroupHandle: powers, orders, center, centralizers, quotients."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt

from centlab.engine.elements import ElementSet, IndexArray
from centlab.engine.group import GroupHandle
from centlab.errors import NotCentralError, NotSubgroupError
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.engine")


def mul(g: GroupHandle, x: int, y: int) -> int:
    return g.mul(x, y)


def power(g: GroupHandle, x: int, k: int) -> int:
    if k < 0:
        raise ValueError(f"power exponent must be non-negative, got {k}")
    result = g.identity
    base = g.check_index(x)
    while k:
        if k & 1:
            result = g.mul(result, base)
        base = g.mul(base, base)
        k >>= 1
    return result


def element_order(g: GroupHandle, x: int) -> int:
    return int(g.element_orders[g.check_index(x)])


def commuting_mask(g: GroupHandle, x: int) -> npt.NDArray[np.bool_]:
    """Boolean mask of the elements commuting with ``x``."""
    x = g.check_index(x)
    if g.table is not None:
        return np.asarray(g.table[x, :] == g.table[:, x])
    xs = g.elements
    return np.asarray(g.mul_many(x, xs) == g.mul_many(xs, x))


def center_mask(g: GroupHandle) -> npt.NDArray[np.bool_]:
    def build() -> npt.NDArray[np.bool_]:
        mask = np.ones(g.order, dtype=bool)
        for s in g.generators:
            mask &= commuting_mask(g, s)
        return mask

    return g.memo("center_mask", build)


def center(g: GroupHandle) -> ElementSet:
    return g.memo("center", lambda: ElementSet.from_mask(center_mask(g)))


def centralizer_of(g: GroupHandle, x: int) -> ElementSet:
    return ElementSet.from_mask(commuting_mask(g, x))


def subgroup_generated(g: GroupHandle, gens: Iterable[int]) -> ElementSet:
    gen_arr = np.unique(np.asarray([g.check_index(s) for s in gens], dtype=np.int64))
    if gen_arr.size == 0:
        raise ValueError("subgroup_generated needs at least one generator")
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    frontier = np.asarray([g.identity], dtype=np.int64)
    # Right multiplication by generators reaches the whole subgroup in a finite group.
    while frontier.size:
        products = np.unique(g.mul_many(frontier[:, None], gen_arr[None, :]).ravel())
        fresh = products[~seen[products]]
        seen[fresh] = True
        frontier = fresh
    return ElementSet.from_mask(seen)


def is_subgroup(g: GroupHandle, subset: ElementSet) -> bool:
    if subset.size == 0 or g.identity not in subset:
        return False
    members = subset.as_array()
    inside = np.zeros(g.order, dtype=bool)
    inside[members] = True
    products = g.mul_many(members[:, None], members[None, :])
    return bool(inside[products].all())


def coset_map(g: GroupHandle, subgroup: ElementSet) -> tuple[IndexArray, IndexArray]:
    """Return ``(representatives, coset_of)`` for the cosets ``xN``.

    Representatives are the least index of each coset, sorted ascending;
    ``coset_of[x]`` is the position of the coset of ``x``.
    """
    members = subgroup.as_array()
    least = g.mul_many(g.elements[:, None], members[None, :]).min(axis=1)
    reps, coset_of = np.unique(least, return_inverse=True)
    return reps.astype(np.int64), coset_of.astype(np.int64).ravel()


def quotient_by_central(g: GroupHandle, subgroup: ElementSet) -> GroupHandle:
    if not is_subgroup(g, subgroup):
        raise NotSubgroupError(f"{subgroup.size} elements of {g.family} do not form a subgroup")
    if not center_mask(g)[subgroup.as_array()].all():
        raise NotCentralError(f"subgroup of size {subgroup.size} is not central in {g.family}")

    reps, coset_of = coset_map(g, subgroup)

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        return coset_of[g.mul_many(reps[xs], reps[ys])]

    identity = int(coset_of[g.identity])
    gens = sorted({int(coset_of[s]) for s in g.generators} - {identity})
    debug_event(logger, "quotient.built", family=g.family, order=len(reps), kernel=subgroup.size)
    return GroupHandle(
        len(reps),
        rule,
        identity=identity,
        generators=gens,
        family=f"{g.family}/N",
        parameters={"parent": g.describe(), "kernel_order": subgroup.size},
        validate=False,
    )


def central_quotient(g: GroupHandle) -> GroupHandle:
    return g.memo("central_quotient", lambda: quotient_by_central(g, center(g)))
