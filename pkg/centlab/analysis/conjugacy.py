"""Conjugacy classes, class-size censuses and the eight class types of the normal-form families."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from centlab.constants import DEFAULT_MAX_ORDER
from centlab.engine.elements import ElementSet, IndexArray
from centlab.engine.group import GroupHandle
from centlab.engine.queries import center
from centlab.errors import CentlabError, DescriptorError, OrderBoundExceededError
from centlab.families.normal_form import FamilyDescriptor
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.analysis")


@dataclass(frozen=True, slots=True)
class ConjugacyClass:
    representative: int
    members: ElementSet
    type_label: int | None = None

    @property
    def size(self) -> int:
        return self.members.size


@dataclass(frozen=True, slots=True)
class CensusRow:
    type_label: int
    class_size: int
    count: int


@dataclass(slots=True)
class ClassCensus:
    rows: list[CensusRow] = field(default_factory=list)
    central: int = 0

    @property
    def total_classes(self) -> int:
        return self.central + sum(row.count for row in self.rows)

    def histogram(self) -> dict[int, int]:
        """Class size -> count over non-central classes."""
        counts: Counter[int] = Counter()
        for row in self.rows:
            counts[row.class_size] += row.count
        return dict(sorted(counts.items()))

    def as_triples(self) -> list[tuple[int, int, int]]:
        return sorted((r.type_label, r.class_size, r.count) for r in self.rows)

    def to_dict(self) -> dict[str, Any]:
        return {
            "rows": [
                {"type": t, "class_size": s, "count": c} for t, s, c in self.as_triples()
            ],
            "central": self.central,
            "total_classes": self.total_classes,
        }


class _ClassIndex:
    def __init__(self, classes: list[ConjugacyClass], class_of: IndexArray) -> None:
        self.classes = classes
        self.class_of = class_of


def _conjugation_permutations(g: GroupHandle) -> list[list[int]]:
    xs = g.elements
    perms = []
    for s in g.generators:
        s_inv = int(g.inverse_table[s])
        perms.append(g.mul_many(g.mul_many(s_inv, xs), s).tolist())
    return perms


def _class_index(g: GroupHandle, max_order: int) -> _ClassIndex:
    if g.order > max_order:
        raise OrderBoundExceededError("conjugacy class scan", g.order, max_order)

    def build() -> _ClassIndex:
        perms = _conjugation_permutations(g)
        owner = [-1] * g.order
        orbits: list[list[int]] = []
        for x in range(g.order):
            if owner[x] >= 0:
                continue
            slot = len(orbits)
            owner[x] = slot
            orbit = [x]
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for perm in perms:
                    w = perm[y]
                    if owner[w] < 0:
                        owner[w] = slot
                        orbit.append(w)
                        queue.append(w)
            orbits.append(orbit)

        # x ascends, so each orbit's first element is its least member
        order = sorted(range(len(orbits)), key=lambda s: (len(orbits[s]), orbits[s][0]))
        relabel = np.empty(len(orbits), dtype=np.int64)
        relabel[order] = np.arange(len(orbits))
        classes = [
            ConjugacyClass(orbits[s][0], ElementSet.from_indices(orbits[s])) for s in order
        ]
        debug_event(logger, "classes.built", family=g.family, classes=len(classes))
        return _ClassIndex(classes, relabel[np.asarray(owner, dtype=np.int64)])

    return g.memo("class_index", build)


def conjugacy_classes(g: GroupHandle, *, max_order: int = DEFAULT_MAX_ORDER) -> list[ConjugacyClass]:
    """Conjugation orbits sorted by (size, representative)."""
    return list(_class_index(g, max_order).classes)


def class_of(g: GroupHandle, *, max_order: int = DEFAULT_MAX_ORDER) -> IndexArray:
    """Element -> position of its class in ``conjugacy_classes(g)``."""
    return _class_index(g, max_order).class_of


def class_size_histogram(g: GroupHandle, *, max_order: int = DEFAULT_MAX_ORDER) -> dict[int, int]:
    counts = Counter(c.size for c in conjugacy_classes(g, max_order=max_order))
    return dict(sorted(counts.items()))


def predicted_census(desc: FamilyDescriptor) -> ClassCensus:
    """Class types, sizes and counts for a group with G/Z of order p^4 and the given |Z|.

    Non-abelian quotients fold the a^(sp) b^j classes into type 4.
    """
    p, n = desc.p, desc.n
    q = p * p
    if desc.abelian:
        m = desc.m_coef
        if m is None:
            raise DescriptorError(f"abelian quotient needs p^2 | |Z|, got {desc.z_order}")
        rows = [
            CensusRow(1, p, n * (p - 1)),
            CensusRow(2, q, m * p * (p - 1)),
            CensusRow(3, p, n * (p - 1)),
            CensusRow(4, q, m * p * (p - 1)),
            CensusRow(5, p, n * (p - 1) ** 2),
            CensusRow(6, q, m * p * (p - 1) ** 2),
            CensusRow(7, q, m * p * (p - 1) ** 2),
            CensusRow(8, q, m * q * (p - 1) ** 2),
        ]
    else:
        rows = [
            CensusRow(1, p, n * (p - 1)),
            CensusRow(2, q, n * (p - 1)),
            CensusRow(3, p, n * (p - 1)),
            CensusRow(4, q, n * p * (p - 1)),
            CensusRow(5, p, n * (p - 1) ** 2),
            CensusRow(6, q, n * (p - 1) ** 2),
            CensusRow(8, q, n * p * (p - 1) ** 2),
        ]
    return ClassCensus(rows=rows, central=desc.z_order)


def type_of_exponents(p: int, i: int, j: int) -> int | None:
    """Type 1..8 of ``a^i b^j`` (exponents mod p^2); None for the central pattern i = j = 0."""
    a_p, b_p = i % p == 0, j % p == 0
    if i == 0 and j == 0:
        return None
    if b_p and j == 0:
        return 1 if a_p else 2
    if a_p and i == 0:
        return 3 if b_p else 4
    if a_p and b_p:
        return 5
    if b_p:
        return 6
    if a_p:
        return 7
    return 8


def label_types(g: GroupHandle, desc: FamilyDescriptor) -> list[ConjugacyClass]:
    """Attach type labels to the non-central classes; central singletons keep ``None``.

    Raises when a label is not constant on a class.
    """
    decoder = g.decoder
    if decoder is None or decoder.q != desc.p * desc.p:
        raise DescriptorError(f"{g.family} has no normal-form decoder over Z_{desc.p**2}")
    z = set(center(g).members)
    labelled: list[ConjugacyClass] = []
    for cls in conjugacy_classes(g):
        if cls.size == 1 and cls.representative in z:
            labelled.append(cls)
            continue
        i, j, _ = decoder.decode_many(cls.members.as_array())
        types = {type_of_exponents(desc.p, int(a), int(b)) for a, b in zip(i, j, strict=True)}
        if not desc.abelian:
            types = {4 if t == 7 else t for t in types}
        if len(types) != 1 or None in types:
            raise CentlabError(
                f"class of {g.label(cls.representative)} mixes types {sorted(map(str, types))}"
            )
        labelled.append(replace(cls, type_label=types.pop()))
    return labelled


def class_table(g: GroupHandle, desc: FamilyDescriptor) -> ClassCensus:
    counts: Counter[tuple[int, int]] = Counter()
    central = 0
    for cls in label_types(g, desc):
        if cls.type_label is None:
            central += 1
        else:
            counts[(cls.type_label, cls.size)] += 1
    rows = [CensusRow(t, s, c) for (t, s), c in sorted(counts.items())]
    return ClassCensus(rows=rows, central=central)
