"""Isomorphism testing for small groups by backtracking over generator images."""

from __future__ import annotations

from collections import Counter, deque

import numpy as np

from centlab.constants import DEFAULT_ISO_BUDGET, DEFAULT_ISO_ORDER_BOUND
from centlab.engine.elements import IndexArray
from centlab.engine.group import GroupHandle
from centlab.engine.queries import subgroup_generated
from centlab.errors import IsoBudgetExceededError, OrderBoundExceededError
from centlab.utils.logging import debug_event, get_logger

CHUNK_CELLS = 1 << 20

Fingerprint = tuple[int, int]

logger = get_logger("centlab.engine")


def _centralizer_sizes(g: GroupHandle) -> IndexArray:
    if g.table is not None:
        return np.asarray((g.table == g.table.T).sum(axis=1), dtype=np.int64)
    xs = g.elements
    sizes = np.empty(g.order, dtype=np.int64)
    rows = max(1, CHUNK_CELLS // g.order)
    for start in range(0, g.order, rows):
        chunk = xs[start : start + rows]
        left = g.mul_many(chunk[:, None], xs[None, :])
        right = g.mul_many(xs[None, :], chunk[:, None])
        sizes[start : start + rows] = (left == right).sum(axis=1)
    return sizes


def fingerprints(g: GroupHandle) -> list[Fingerprint]:
    """Per-element ``(order, class size)`` pairs; invariant under isomorphism."""

    def build() -> list[Fingerprint]:
        class_sizes = g.order // _centralizer_sizes(g)
        return list(zip(g.element_orders.tolist(), class_sizes.tolist(), strict=True))

    return g.memo("fingerprints", build)


def irredundant_generators(g: GroupHandle) -> list[int]:
    kept: list[int] = []
    for s in g.generators:
        if kept and s in subgroup_generated(g, kept):
            continue
        kept.append(s)
        covered = subgroup_generated(g, kept).size
        if covered == g.order:
            break
    return kept


class _Search:
    def __init__(self, g1: GroupHandle, g2: GroupHandle, budget: int) -> None:
        self.g1 = g1
        self.g2 = g2
        self.budget = budget
        self.nodes = 0
        self.f1 = fingerprints(g1)
        self.f2 = fingerprints(g2)
        self.gens = irredundant_generators(g1)
        self.cols1 = [g1.right_column(s) for s in self.gens]
        self._cols2: dict[int, list[int]] = {}
        by_print: dict[Fingerprint, list[int]] = {}
        for y, fp in enumerate(self.f2):
            by_print.setdefault(fp, []).append(y)
        self.candidates = [by_print.get(self.f1[s], []) for s in self.gens]

    def _col2(self, h: int) -> list[int]:
        col = self._cols2.get(h)
        if col is None:
            col = self.g2.right_column(h)
            self._cols2[h] = col
        return col

    def _consistent(self, depth: int, image: int, images: list[int]) -> bool:
        g1, g2 = self.g1, self.g2
        s = self.gens[depth]
        for t, h in zip(self.gens[:depth], images, strict=True):
            if h == image:
                return False
            st, ts = g1.mul(s, t), g1.mul(t, s)
            ih, hi = g2.mul(image, h), g2.mul(h, image)
            if (st == ts) != (ih == hi):
                return False
            if self.f1[st] != self.f2[ih] or self.f1[ts] != self.f2[hi]:
                return False
        return True

    def _extend(self, images: list[int]) -> list[int] | None:
        n = self.g1.order
        phi = [-1] * n
        phi[self.g1.identity] = self.g2.identity
        cols2 = [self._col2(h) for h in images]
        queue = deque([self.g1.identity])
        while queue:
            x = queue.popleft()
            px = phi[x]
            for c1, c2 in zip(self.cols1, cols2, strict=True):
                y = c1[x]
                py = c2[px]
                if phi[y] < 0:
                    phi[y] = py
                    queue.append(y)
                elif phi[y] != py:
                    return None
        if len(set(phi)) != n:
            return None
        return phi

    def run(self, depth: int = 0, images: list[int] | None = None) -> list[int] | None:
        images = images if images is not None else []
        if depth == len(self.gens):
            return images if self._extend(images) is not None else None
        for image in self.candidates[depth]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise IsoBudgetExceededError(self.budget)
            if not self._consistent(depth, image, images):
                continue
            found = self.run(depth + 1, [*images, image])
            if found is not None:
                return found
        return None


def isomorphic(
    g1: GroupHandle,
    g2: GroupHandle,
    *,
    order_bound: int = DEFAULT_ISO_ORDER_BOUND,
    budget: int = DEFAULT_ISO_BUDGET,
) -> dict[int, int] | None:
    """Return generator images of ``g1`` extending to an isomorphism onto ``g2``, or None.

    Candidates are tried in increasing element index, so the first mapping found
    is deterministic. Raises IsoBudgetExceededError rather than answering None
    when the search budget runs out.
    """
    for g in (g1, g2):
        if g.order > order_bound:
            raise OrderBoundExceededError("isomorphism test", g.order, order_bound)
    if g1.order != g2.order:
        return None
    if g1.order == 1:
        return {g1.identity: g2.identity}
    if Counter(fingerprints(g1)) != Counter(fingerprints(g2)):
        return None

    search = _Search(g1, g2, budget)
    images = search.run()
    debug_event(
        logger,
        "iso.finished",
        left=g1.family,
        right=g2.family,
        order=g1.order,
        nodes=search.nodes,
        found=images is not None,
    )
    if images is None:
        return None
    return dict(zip(search.gens, images, strict=True))


def are_isomorphic(g1: GroupHandle, g2: GroupHandle, **kwargs: int) -> bool:
    return isomorphic(g1, g2, **kwargs) is not None
