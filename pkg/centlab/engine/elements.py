from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

IndexArray = npt.NDArray[np.int64]


@dataclass(frozen=True, slots=True)
class ElementSet:
    """Sorted, duplicate-free set of element indices."""

    members: tuple[int, ...]

    @classmethod
    def from_indices(cls, values: Iterable[int] | IndexArray) -> ElementSet:
        arr = np.unique(np.asarray(list(values) if not isinstance(values, np.ndarray) else values))
        return cls(tuple(int(v) for v in arr))

    @classmethod
    def from_mask(cls, mask: npt.NDArray[np.bool_]) -> ElementSet:
        return cls(tuple(int(v) for v in np.flatnonzero(mask)))

    @property
    def size(self) -> int:
        return len(self.members)

    def as_array(self) -> IndexArray:
        return np.asarray(self.members, dtype=np.int64)

    def key(self) -> bytes:
        return self.as_array().tobytes()

    def issubset(self, other: ElementSet) -> bool:
        return self.size <= other.size and set(self.members) <= set(other.members)

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, (int, np.integer)):
            return False
        pos = bisect_left(self.members, int(item))
        return pos < len(self.members) and self.members[pos] == int(item)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict[str, object]:
        return {"size": self.size, "members": list(self.members)}
