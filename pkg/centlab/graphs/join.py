"""Joins of cliques: H-join construction, the M1/M2 shapes and their recognition."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from centlab.constants import DEFAULT_GRAPH_VERTEX_BOUND, DEFAULT_ISO_BUDGET
from centlab.errors import DescriptorError, JoinStructureError
from centlab.families.arith import is_prime
from centlab.graphs.isomorphism import graphs_isomorphic, twin_quotient, weighted_isomorphic
from centlab.graphs.simple import SimpleGraph
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.graphs")


@dataclass(slots=True)
class JoinSpec:
    """A quotient graph H whose vertex ``i`` stands for a clique of ``part_sizes[i]`` vertices."""

    quotient: SimpleGraph
    part_sizes: list[int]
    part_names: list[str] = field(default_factory=list)
    name: str = ""
    part_members: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.part_sizes) != self.quotient.n_vertices:
            raise JoinStructureError(
                f"{len(self.part_sizes)} part sizes for {self.quotient.n_vertices} quotient vertices"
            )
        if any(size <= 0 for size in self.part_sizes):
            raise JoinStructureError("part sizes must be positive")
        if not self.part_names:
            self.part_names = [f"P{i}" for i in range(len(self.part_sizes))]

    @property
    def n_vertices(self) -> int:
        return sum(self.part_sizes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "quotient_edges": [list(e) for e in self.quotient.edges()],
            "sizes": list(self.part_sizes),
            "names": list(self.part_names),
            "vertices": self.n_vertices,
        }


def h_join(quotient: SimpleGraph, sizes: Sequence[int]) -> SimpleGraph:
    if len(sizes) != quotient.n_vertices:
        raise JoinStructureError(
            f"{len(sizes)} part sizes for {quotient.n_vertices} quotient vertices"
        )
    if any(size <= 0 for size in sizes):
        raise JoinStructureError("part sizes must be positive")
    offsets = [0]
    for size in sizes:
        offsets.append(offsets[-1] + size)
    blocks = [((1 << size) - 1) << offsets[i] for i, size in enumerate(sizes)]
    rows = []
    for i, size in enumerate(sizes):
        outside = 0
        for j in quotient.neighbors(i):
            outside |= blocks[j]
        for v in range(offsets[i], offsets[i] + size):
            rows.append((blocks[i] | outside) & ~(1 << v))
    labels = [quotient.vertex_labels[i] + f"#{k}" for i, size in enumerate(sizes) for k in range(size)]
    return SimpleGraph(offsets[-1], rows, labels)


def realize(spec: JoinSpec) -> SimpleGraph:
    graph = h_join(spec.quotient, spec.part_sizes)
    graph.vertex_labels = [
        f"{name}#{k}"
        for name, size in zip(spec.part_names, spec.part_sizes, strict=True)
        for k in range(size)
    ]
    return graph


def _hub_and_pendants(
    p: int, pendant_sizes: Sequence[Sequence[int]], hub_size: int, name: str
) -> JoinSpec:
    """(p+1)-clique of hubs; hub ``h`` gets one pendant per entry of ``pendant_sizes[h]``."""
    n_hubs = p + 1
    sizes = [hub_size] * n_hubs
    names = [f"H{h + 1}" for h in range(n_hubs)]
    edges = [(u, v) for u in range(n_hubs) for v in range(u + 1, n_hubs)]
    for hub, pendants in enumerate(pendant_sizes):
        for k, size in enumerate(pendants):
            edges.append((hub, len(sizes)))
            sizes.append(size)
            names.append(f"H{hub + 1}.{k + 1}")
    quotient = SimpleGraph.from_edges(len(sizes), edges, names)
    return JoinSpec(quotient, sizes, names, name=name)


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DescriptorError(f"p must be prime, got {p}")


def build_M1(p: int, z_order: int) -> JoinSpec:
    """Shape of the class graph when G/Z is abelian of order p^4."""
    _require_prime(p)
    if z_order <= 0 or z_order % (p * p):
        raise DescriptorError(f"|Z| = {z_order} must be divisible by p^2 = {p * p}")
    n, m = z_order // p, z_order // (p * p)
    pendants = [[m * (p * p - p)] * p for _ in range(p + 1)]
    return _hub_and_pendants(p, pendants, n * (p - 1), f"M1(p={p},z={z_order})")


def _m2_params(p: int, z_order: int) -> int:
    _require_prime(p)
    if p == 2:
        raise DescriptorError("p must be odd: no such extension exists for p = 2")
    if z_order <= 0 or z_order % p:
        raise DescriptorError(f"|Z| = {z_order} must be divisible by p = {p}")
    return z_order // p


def build_M2(p: int, z_order: int) -> JoinSpec:
    """Non-abelian quotient shape as stated: the first hub has one large pendant, the rest p small ones."""
    n = _m2_params(p, z_order)
    small = n * (p - 1)
    pendants = [[n * p * (p - 1)]] + [[small] * p for _ in range(p)]
    return _hub_and_pendants(p, pendants, small, f"M2(p={p},z={z_order})")


def build_M2_orbit(p: int, z_order: int) -> JoinSpec:
    """Non-abelian quotient shape realised by the class graphs of the constructed groups.

    The a^p hub carries p pendants of size n(p-1); each other hub carries a single
    pendant of size n p(p-1). Vertex count matches ``build_M2``.
    """
    n = _m2_params(p, z_order)
    small = n * (p - 1)
    pendants = [[small] * p] + [[n * p * (p - 1)] for _ in range(p)]
    return _hub_and_pendants(p, pendants, small, f"M2orbit(p={p},z={z_order})")


def decompose_join(graph: SimpleGraph) -> JoinSpec:
    """Finest closed-neighbourhood partition of ``graph`` as a join of cliques."""
    quotient, sizes, classes = twin_quotient(graph)
    for members in classes:
        if not graph.induced_is_clique(members):
            raise JoinStructureError(f"vertices {members[:4]} share a neighbourhood but are not a clique")
    names = [graph.vertex_labels[members[0]] for members in classes]
    quotient.vertex_labels = list(names)
    return JoinSpec(quotient, sizes, names, name="decomposed", part_members=classes)


def _normalized(spec: JoinSpec) -> tuple[SimpleGraph, list[int]]:
    # adjacent parts with equal closed neighbourhoods realise as one clique
    quotient, _, classes = twin_quotient(spec.quotient)
    return quotient, [sum(spec.part_sizes[i] for i in members) for members in classes]


def verify_join_structure(
    graph: SimpleGraph,
    spec: JoinSpec,
    *,
    budget: int = DEFAULT_ISO_BUDGET,
    cross_check: bool = False,
    vertex_bound: int = DEFAULT_GRAPH_VERTEX_BOUND,
) -> bool:
    """True when ``graph`` is the realisation of ``spec`` up to isomorphism.

    Compares weighted quotients; ``cross_check`` also runs the full
    ``graphs_isomorphic(graph, realize(spec))`` and raises if they disagree.
    """
    if graph.n_vertices != spec.n_vertices:
        found = False
    else:
        try:
            actual = decompose_join(graph)
        except JoinStructureError:
            return False
        q_exp, s_exp = _normalized(spec)
        mapping = weighted_isomorphic(actual.quotient, actual.part_sizes, q_exp, s_exp, budget=budget)
        found = mapping is not None
    if cross_check:
        direct = graphs_isomorphic(graph, realize(spec), vertex_bound=vertex_bound, budget=budget)
        if direct != found:
            raise JoinStructureError(f"quotient and direct isomorphism disagree for {spec.name}")
    debug_event(logger, "join.verified", spec=spec.name, vertices=graph.n_vertices, match=found)
    return found


def shape_profile(spec: JoinSpec) -> Counter[tuple[int, tuple[int, ...]]]:
    """Multiset of (part size, sorted neighbouring part sizes) over normalised parts."""
    quotient, sizes = _normalized(spec)
    return Counter(
        (sizes[v], tuple(sorted(sizes[w] for w in quotient.neighbors(v))))
        for v in range(quotient.n_vertices)
    )


def shape_diff(actual: JoinSpec, expected: JoinSpec) -> list[str]:
    """Readable differences between two join shapes; empty when the profiles agree."""
    lines: list[str] = []
    if actual.n_vertices != expected.n_vertices:
        lines.append(f"vertices: expected {expected.n_vertices}, computed {actual.n_vertices}")
    have, want = shape_profile(actual), shape_profile(expected)
    for (size, nbrs), count in sorted((want - have).items()):
        lines.append(f"missing {count} part(s) of size {size} adjacent to sizes {list(nbrs)}")
    for (size, nbrs), count in sorted((have - want).items()):
        lines.append(f"extra {count} part(s) of size {size} adjacent to sizes {list(nbrs)}")
    return lines
