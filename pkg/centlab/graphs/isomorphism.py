"""Exact isomorphism of small graphs: twin reduction, colour refinement, then backtracking."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

from centlab.constants import DEFAULT_GRAPH_VERTEX_BOUND, DEFAULT_ISO_BUDGET
from centlab.errors import IsoBudgetExceededError, OrderBoundExceededError
from centlab.graphs.simple import SimpleGraph
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.graphs")

Color = int


def twin_classes(graph: SimpleGraph) -> list[list[int]]:
    """Groups of vertices with equal closed neighbourhoods, ordered by least member."""
    groups: dict[int, list[int]] = {}
    for v in range(graph.n_vertices):
        groups.setdefault(graph.closed_row(v), []).append(v)
    return sorted(groups.values(), key=lambda members: members[0])


def twin_quotient(graph: SimpleGraph) -> tuple[SimpleGraph, list[int], list[list[int]]]:
    """Collapse true twins; return (quotient, class sizes, class members)."""
    classes = twin_classes(graph)
    owner = [0] * graph.n_vertices
    for idx, members in enumerate(classes):
        for v in members:
            owner[v] = idx
    quotient = SimpleGraph(len(classes))
    for idx, members in enumerate(classes):
        for w in graph.neighbors(members[0]):
            if owner[w] != idx:
                quotient.rows[idx] |= 1 << owner[w]
    return quotient, [len(members) for members in classes], classes


def _refine(
    graphs: Sequence[SimpleGraph], seeds: Sequence[Sequence[object]]
) -> list[list[Color]] | None:
    """Joint colour refinement; None as soon as the colour histograms differ."""
    signatures: list[list[object]] = [
        [(seed[v], graph.degree(v)) for v in range(graph.n_vertices)]
        for graph, seed in zip(graphs, seeds, strict=True)
    ]
    n_colors = -1
    while True:
        distinct = sorted({s for sigs in signatures for s in sigs}, key=repr)
        palette = {sig: idx for idx, sig in enumerate(distinct)}
        colors = [[palette[s] for s in sigs] for sigs in signatures]
        hists = [Counter(c) for c in colors]
        if any(h != hists[0] for h in hists[1:]):
            return None
        if len(palette) == n_colors:
            return colors
        n_colors = len(palette)
        signatures = [
            [
                (col[v], tuple(sorted(col[w] for w in graph.neighbors(v))))
                for v in range(graph.n_vertices)
            ]
            for graph, col in zip(graphs, colors, strict=True)
        ]


def _search_order(graph: SimpleGraph, colors: list[Color]) -> list[int]:
    class_size = Counter(colors)
    remaining = set(range(graph.n_vertices))
    order: list[int] = []
    placed = 0
    while remaining:
        best = min(
            remaining,
            key=lambda v: (-(graph.rows[v] & placed).bit_count(), class_size[colors[v]], v),
        )
        order.append(best)
        remaining.discard(best)
        placed |= 1 << best
    return order


def _backtrack(
    g1: SimpleGraph,
    g2: SimpleGraph,
    colors1: list[Color],
    colors2: list[Color],
    budget: int,
) -> list[int] | None:
    order = _search_order(g1, colors1)
    by_color: dict[Color, list[int]] = {}
    for v, c in enumerate(colors2):
        by_color.setdefault(c, []).append(v)
    phi = [-1] * g1.n_vertices
    used2 = 0
    nodes = 0

    def step(depth: int, mapped1: int) -> bool:
        nonlocal used2, nodes
        if depth == len(order):
            return True
        u = order[depth]
        target = 0
        bits = g1.rows[u] & mapped1
        while bits:
            low = bits & -bits
            target |= 1 << phi[low.bit_length() - 1]
            bits ^= low
        for v in by_color[colors1[u]]:
            if used2 >> v & 1:
                continue
            if g2.rows[v] & used2 != target:
                continue
            nodes += 1
            if nodes > budget:
                raise IsoBudgetExceededError(budget)
            phi[u] = v
            used2 |= 1 << v
            if step(depth + 1, mapped1 | (1 << u)):
                return True
            used2 &= ~(1 << v)
            phi[u] = -1
        return False

    return list(phi) if step(0, 0) else None


def weighted_isomorphic(
    g1: SimpleGraph,
    weights1: Sequence[object],
    g2: SimpleGraph,
    weights2: Sequence[object],
    *,
    budget: int = DEFAULT_ISO_BUDGET,
) -> list[int] | None:
    """Isomorphism preserving vertex weights; returns the vertex map or None."""
    if g1.n_vertices != g2.n_vertices or g1.n_edges != g2.n_edges:
        return None
    if Counter(weights1) != Counter(weights2):
        return None
    colors = _refine([g1, g2], [weights1, weights2])
    if colors is None:
        return None
    return _backtrack(g1, g2, colors[0], colors[1], budget)


def graphs_isomorphic(
    g1: SimpleGraph,
    g2: SimpleGraph,
    *,
    vertex_bound: int = DEFAULT_GRAPH_VERTEX_BOUND,
    budget: int = DEFAULT_ISO_BUDGET,
) -> bool:
    for g in (g1, g2):
        if g.n_vertices > vertex_bound:
            raise OrderBoundExceededError("graph", g.n_vertices, vertex_bound)
    if g1.n_vertices != g2.n_vertices or g1.n_edges != g2.n_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    # Isomorphisms map twin classes onto twin classes of equal size, and back.
    q1, sizes1, _ = twin_quotient(g1)
    q2, sizes2, _ = twin_quotient(g2)
    mapping = weighted_isomorphic(q1, sizes1, q2, sizes2, budget=budget)
    debug_event(
        logger, "graph_iso.finished", vertices=g1.n_vertices, parts=q1.n_vertices, found=mapping is not None
    )
    return mapping is not None
