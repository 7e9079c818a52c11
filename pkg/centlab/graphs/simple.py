"""Undirected simple graphs stored as integer bitsets per row."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any


@dataclass(slots=True)
class SimpleGraph:
    n_vertices: int
    rows: list[int] = field(default_factory=list)
    vertex_labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rows:
            self.rows = [0] * self.n_vertices
        if len(self.rows) != self.n_vertices:
            raise ValueError("adjacency rows must match the vertex count")
        if not self.vertex_labels:
            self.vertex_labels = [str(v) for v in range(self.n_vertices)]
        for v, row in enumerate(self.rows):
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")

    @classmethod
    def from_edges(
        cls, n_vertices: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] = ()
    ) -> SimpleGraph:
        graph = cls(n_vertices, vertex_labels=list(labels))
        for u, v in edges:
            graph.add_edge(u, v)
        return graph

    @classmethod
    def complete(cls, n_vertices: int) -> SimpleGraph:
        full = (1 << n_vertices) - 1
        return cls(n_vertices, [full & ~(1 << v) for v in range(n_vertices)])

    @classmethod
    def cycle(cls, n_vertices: int) -> SimpleGraph:
        return cls.from_edges(n_vertices, ((v, (v + 1) % n_vertices) for v in range(n_vertices)))

    @classmethod
    def path(cls, n_vertices: int) -> SimpleGraph:
        return cls.from_edges(n_vertices, ((v, v + 1) for v in range(n_vertices - 1)))

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
            raise IndexError(f"edge ({u}, {v}) outside 0..{self.n_vertices - 1}")
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        row = self.rows[v]
        out = []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def closed_row(self, v: int) -> int:
        return self.rows[v] | (1 << v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n_vertices):
            for v in self.neighbors(u):
                if u < v:
                    yield u, v

    @property
    def n_edges(self) -> int:
        return sum(self.degrees()) // 2

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            bits = frontier
            while bits:
                low = bits & -bits
                reach |= self.rows[low.bit_length() - 1]
                bits ^= low
            frontier = reach & ~seen
            seen |= frontier
        return seen == (1 << self.n_vertices) - 1

    def relabel(self, permutation: Sequence[int]) -> SimpleGraph:
        """Graph with vertex ``v`` renamed ``permutation[v]``."""
        return SimpleGraph.from_edges(
            self.n_vertices, ((permutation[u], permutation[v]) for u, v in self.edges())
        )

    def induced_is_clique(self, vertices: Sequence[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all((self.closed_row(v) & mask) == mask for v in vertices)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_vertices": self.n_vertices,
            "labels": list(self.vertex_labels),
            "edges": [list(e) for e in self.edges()],
        }
