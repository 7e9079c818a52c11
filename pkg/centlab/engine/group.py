"""Finite groups given by a vectorised multiplication rule plus cached tables."""

from __future__ import annotations

import threading
from collections.abc import Callable, Sequence
from functools import cached_property
from typing import Any, Protocol, TypeVar

import numpy as np

from centlab.constants import DEFAULT_DENSE_TABLE_LIMIT, DEFAULT_MAX_ORDER
from centlab.engine.elements import IndexArray
from centlab.errors import CentlabError, ElementIndexError, InvalidGroupError, OrderBoundExceededError
from centlab.utils.logging import debug_event, get_logger

MulRule = Callable[[IndexArray, IndexArray], IndexArray]

TABLE_CHUNK_CELLS = 1 << 20

T = TypeVar("T")

logger = get_logger("centlab.engine")


class NormalFormDecoder(Protocol):
    """Decodes element indices into normal-form exponents ``(i, j, k)``."""

    q: int
    m: int

    def decode_many(self, xs: IndexArray) -> tuple[IndexArray, IndexArray, IndexArray]: ...

    def label(self, x: int) -> str: ...


def evaluate_rule(rule: MulRule, xs: Any, ys: Any) -> IndexArray:
    """Apply ``rule`` to broadcast index arrays and return an int64 array."""
    a, b = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
    out = rule(np.ascontiguousarray(a), np.ascontiguousarray(b))
    return np.asarray(out, dtype=np.int64).reshape(a.shape)


class GroupHandle:
    """Immutable finite group on element indices ``0..order-1``.

    A dense Cayley table is materialised when ``order <= dense_table_limit``;
    above that, products are computed from the rule on demand. Inverses and
    element orders are cached either way.

    Construction checks that the generators reach every element. With
    ``validate`` and a dense table, the identity and Light's associativity
    test over the generators are checked too.
    """

    def __init__(
        self,
        order: int,
        rule: MulRule,
        *,
        identity: int = 0,
        generators: Sequence[int] = (),
        family: str = "custom",
        parameters: dict[str, Any] | None = None,
        decoder: NormalFormDecoder | None = None,
        labels: Sequence[str] | None = None,
        dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
        max_order: int = DEFAULT_MAX_ORDER,
        validate: bool = True,
    ) -> None:
        if order < 1:
            raise ValueError(f"group order must be positive, got {order}")
        if order > max_order:
            raise OrderBoundExceededError("group order", order, max_order)
        if not 0 <= identity < order:
            raise ElementIndexError(identity, order)

        self.order = int(order)
        self.identity = int(identity)
        gens = tuple(int(g) for g in generators if int(g) != identity)
        self.generators: tuple[int, ...] = gens or (self.identity,)
        for g in self.generators:
            if not 0 <= g < order:
                raise ElementIndexError(g, order)
        self.family = family
        self.parameters = dict(parameters or {})
        self.decoder = decoder
        self._labels = list(labels) if labels is not None else None
        self._rule = rule
        self._memo: dict[str, Any] = {}
        self._lock = threading.Lock()
        self.table: IndexArray | None = None
        if self.order <= dense_table_limit:
            self.table = self._build_table()
        self._check_structure(validate)
        debug_event(
            logger,
            "group.created",
            family=family,
            order=self.order,
            backend=self.backend,
            generators=len(self.generators),
        )

    def _build_table(self) -> IndexArray:
        n = self.order
        table = np.empty((n, n), dtype=np.int64)
        elements = np.arange(n, dtype=np.int64)
        rows = max(1, TABLE_CHUNK_CELLS // n)
        for start in range(0, n, rows):
            xs = elements[start : start + rows]
            table[start : start + rows] = evaluate_rule(self._rule, xs[:, None], elements[None, :])
        if table.min() < 0 or table.max() >= n:
            raise CentlabError(f"{self.family}: multiplication rule leaves 0..{n - 1}")
        return table

    def _check_structure(self, validate: bool) -> None:
        gens = np.asarray(self.generators, dtype=np.int64)
        seen = np.zeros(self.order, dtype=bool)
        seen[self.identity] = True
        frontier = np.asarray([self.identity], dtype=np.int64)
        while frontier.size:
            products = np.unique(self.mul_many(frontier[:, None], gens[None, :]).ravel())
            fresh = products[~seen[products]]
            seen[fresh] = True
            frontier = fresh
        reached = int(seen.sum())
        if reached != self.order:
            raise InvalidGroupError(
                f"{self.family}: generators {list(self.generators)} "
                f"reach {reached} of {self.order} elements"
            )
        if not validate or self.table is None:
            return

        # validate.py imports this module
        from centlab.engine.validate import light_test

        table = self.table
        elements = self.elements
        left, right = table[self.identity], table[:, self.identity]
        if not (np.array_equal(left, elements) and np.array_equal(right, elements)):
            raise InvalidGroupError(f"{self.family}: {self.identity} is not a two-sided identity")
        check = light_test(self.order, lambda xs, ys: table[xs, ys], gens)
        if not check.ok:
            raise InvalidGroupError(f"{self.family}: {check.reason} at {check.triple}")

    @property
    def backend(self) -> str:
        return "table" if self.table is not None else "rule"

    @property
    def rule(self) -> MulRule:
        return self._rule

    @cached_property
    def elements(self) -> IndexArray:
        return np.arange(self.order, dtype=np.int64)

    def check_index(self, x: int) -> int:
        value = int(x)
        if not 0 <= value < self.order:
            raise ElementIndexError(value, self.order)
        return value

    def mul(self, x: int, y: int) -> int:
        x = self.check_index(x)
        y = self.check_index(y)
        if self.table is not None:
            return int(self.table[x, y])
        return int(evaluate_rule(self._rule, np.array([x]), np.array([y]))[0])

    def mul_many(self, xs: Any, ys: Any) -> IndexArray:
        if self.table is not None:
            a, b = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
            return self.table[a, b]
        return evaluate_rule(self._rule, xs, ys)

    def right_column(self, s: int) -> list[int]:
        """Return ``[x * s for x in G]`` as a plain list."""
        s = self.check_index(s)
        if self.table is not None:
            return [int(v) for v in self.table[:, s].tolist()]
        return [int(v) for v in self.mul_many(self.elements, s).tolist()]

    def _orders_and_inverses(self) -> tuple[IndexArray, IndexArray]:
        xs = self.elements
        orders = np.zeros(self.order, dtype=np.int64)
        inverses = np.full(self.order, -1, dtype=np.int64)
        previous = np.full(self.order, self.identity, dtype=np.int64)
        current = xs.copy()
        k = 1
        while True:
            hit = (current == self.identity) & (orders == 0)
            orders[hit] = k
            inverses[hit] = previous[hit]
            if not (orders == 0).any():
                break
            if k >= self.order:
                raise CentlabError(f"{self.family}: some element has no finite order")
            previous = current
            current = self.mul_many(current, xs)
            k += 1
        return orders, inverses

    @cached_property
    def _order_data(self) -> tuple[IndexArray, IndexArray]:
        return self._orders_and_inverses()

    @property
    def element_orders(self) -> IndexArray:
        return self._order_data[0]

    @property
    def inverse_table(self) -> IndexArray:
        return self._order_data[1]

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        for pos, s in enumerate(gens):
            for t in gens[pos + 1 :]:
                if self.mul(s, t) != self.mul(t, s):
                    return False
        return True

    def memo(self, key: str, factory: Callable[[], T]) -> T:
        """Cache a derived structure on the handle; results are pure, so races only recompute."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]  # type: ignore[no-any-return]
        value = factory()
        with self._lock:
            return self._memo.setdefault(key, value)  # type: ignore[no-any-return]

    def label(self, x: int) -> str:
        x = self.check_index(x)
        if self._labels is not None:
            return self._labels[x]
        if self.decoder is not None:
            return self.decoder.label(x)
        return "e" if x == self.identity else f"g{x}"

    def describe(self) -> dict[str, Any]:
        return {"family": self.family, "parameters": dict(self.parameters), "order": self.order}

    def __repr__(self) -> str:
        return f"GroupHandle(family={self.family!r}, order={self.order}, backend={self.backend})"
