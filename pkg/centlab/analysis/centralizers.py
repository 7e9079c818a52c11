"""Distinct element centralizers Cent(G), their sizes and inclusions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Any

import numpy as np
import numpy.typing as npt

from centlab.constants import DEFAULT_MAX_ORDER
from centlab.engine.elements import ElementSet, IndexArray
from centlab.engine.group import GroupHandle
from centlab.engine.queries import center, center_mask, commuting_mask, coset_map
from centlab.errors import OrderBoundExceededError
from centlab.families.normal_form import FamilyDescriptor
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.analysis")


@dataclass(slots=True)
class CentReport:
    """Cent(G): the whole group first, then proper centralizers by (size, members)."""

    distinct: list[ElementSet]
    witnesses: list[int]
    element_index: IndexArray = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.distinct)

    @property
    def orders(self) -> dict[int, int]:
        return dict(sorted(Counter(c.size for c in self.distinct).items()))

    def centralizer_index(self, x: int) -> int:
        return int(self.element_index[x])

    def to_dict(self, predicted: int | None = None) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "cent_count": self.count,
            "orders": {str(size): mult for size, mult in self.orders.items()},
        }
        if predicted is not None:
            payload["predicted"] = predicted
            payload["match"] = predicted == self.count
        return payload


def _scan(g: GroupHandle, reps: IndexArray) -> tuple[list[npt.NDArray[np.bool_]], IndexArray]:
    masks: list[npt.NDArray[np.bool_]] = []
    lookup: dict[bytes, int] = {}
    rep_index = np.empty(len(reps), dtype=np.int64)
    for pos, x in enumerate(reps.tolist()):
        mask = commuting_mask(g, x)
        key = np.packbits(mask).tobytes()
        slot = lookup.get(key)
        if slot is None:
            slot = len(masks)
            lookup[key] = slot
            masks.append(mask)
        rep_index[pos] = slot
    return masks, rep_index


def distinct_centralizers(
    g: GroupHandle, *, naive: bool = False, max_order: int = DEFAULT_MAX_ORDER
) -> CentReport:
    """Deduplicated centralizers of every element.

    By default one representative per coset of Z(G) is scanned, since
    C(xz) = C(x) for central z; ``naive`` scans every element.
    """
    if g.order > max_order:
        raise OrderBoundExceededError("centralizer scan", g.order, max_order)

    def build() -> CentReport:
        if naive:
            reps = g.elements
            coset_of = g.elements
        else:
            reps, coset_of = coset_map(g, center(g))
        masks, rep_index = _scan(g, reps)
        sets = [ElementSet.from_mask(mask) for mask in masks]
        order = sorted(
            range(len(sets)),
            key=lambda s: (sets[s].size != g.order, sets[s].size, sets[s].members),
        )
        relabel = np.empty(len(order), dtype=np.int64)
        relabel[order] = np.arange(len(order))
        element_index = relabel[rep_index[coset_of]]
        # element_index is ascending in x, so the first hit is the least witness
        witnesses = [int(np.argmax(element_index == slot)) for slot in range(len(order))]
        debug_event(
            logger, "centralizers.scanned", family=g.family, reps=len(reps), distinct=len(sets)
        )
        return CentReport([sets[s] for s in order], witnesses, element_index)

    return g.memo(f"cent_report:{'naive' if naive else 'cosets'}", build)


def cent_count(g: GroupHandle, **kwargs: Any) -> int:
    return distinct_centralizers(g, **kwargs).count


def predicted_cent_count(p: int) -> int:
    return (p + 1) ** 2 + 1


def predicted_cent_count_conjecture(p: int, n: int) -> int:
    return (p + 1) ** n + 1


def centralizer_inclusions(report: CentReport) -> list[tuple[int, int]]:
    """All ``(u, v)`` with ``distinct[u]`` a proper subset of ``distinct[v]``."""
    sets = [set(c.members) for c in report.distinct]
    return [
        (u, v)
        for u, small in enumerate(sets)
        for v, big in enumerate(sets)
        if u != v and len(small) < len(big) and small <= big
    ]


def centralizer_spectrum(report: CentReport) -> dict[int, int]:
    return report.orders


def predicted_spectrum(desc: FamilyDescriptor) -> dict[int, int]:
    """Expected centralizer sizes and multiplicities when G/Z has order p^4.

    Both quotient kinds give p+1 centralizers of size p^3|Z| (those of a^p,
    b^p and the a^(sp) b^p) and p(p+1) of size p^2|Z|.
    """
    p, z = desc.p, desc.z_order
    return {p * p * z: p * (p + 1), p**3 * z: p + 1, p**4 * z: 1}


def proper_spectrum_ok(g: GroupHandle, report: CentReport, p: int) -> bool:
    """Every proper centralizer has size p|Z|, p^2|Z| or p^3|Z| and lies strictly between Z and G."""
    z = center(g).size
    allowed = {p * z, p * p * z, p**3 * z}
    for cent in report.distinct[1:]:
        if cent.size not in allowed or not z < cent.size < g.order:
            return False
    zmask = center_mask(g)
    return all(
        bool(np.isin(np.flatnonzero(zmask), cent.as_array()).all()) for cent in report.distinct
    )


def power_invariance_holds(g: GroupHandle, p: int) -> bool:
    """C(x^k) = C(x) whenever x^(p^2) is central and gcd(k, p) = 1."""
    report = distinct_centralizers(g)
    zmask = center_mask(g)
    xs = g.elements
    current = xs.copy()
    powers = [current]
    exponent = int(g.element_orders.max())
    for _ in range(1, max(exponent, p * p)):
        current = g.mul_many(current, xs)
        powers.append(current)
    eligible = zmask[powers[p * p - 1]]
    base = report.element_index
    for k in range(1, exponent + 1):
        if gcd(k, p) != 1:
            continue
        xk = powers[k - 1]
        if not np.array_equal(base[xk][eligible], base[eligible]):
            return False
    return True
