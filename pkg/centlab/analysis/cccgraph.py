"""Commuting conjugacy class graph on the non-central classes."""

from __future__ import annotations

import numpy as np

from centlab.analysis.conjugacy import ConjugacyClass, class_of, conjugacy_classes
from centlab.constants import DEFAULT_MAX_ORDER
from centlab.engine.group import GroupHandle
from centlab.engine.queries import center_mask, commuting_mask
from centlab.errors import CentlabError, OrderBoundExceededError
from centlab.graphs.simple import SimpleGraph
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.analysis")


def _require_noncentral(g: GroupHandle, cls: ConjugacyClass) -> None:
    if cls.size == 1 and center_mask(g)[cls.representative]:
        raise CentlabError(f"class of {g.label(cls.representative)} is central")


def classes_commute(g: GroupHandle, a: ConjugacyClass, b: ConjugacyClass) -> bool:
    """Some x in A commutes with some y in B; scanning B against A's representative suffices."""
    _require_noncentral(g, a)
    _require_noncentral(g, b)
    mask = commuting_mask(g, a.representative)
    return bool(mask[b.members.as_array()].any())


def classes_commute_exhaustive(g: GroupHandle, a: ConjugacyClass, b: ConjugacyClass) -> bool:
    xs = a.members.as_array()
    ys = b.members.as_array()
    return bool((g.mul_many(xs[:, None], ys[None, :]) == g.mul_many(ys[None, :], xs[:, None])).any())


def vertex_name(g: GroupHandle, cls: ConjugacyClass) -> str:
    type_part = str(cls.type_label) if cls.type_label is not None else "?"
    return f"T{type_part}:{g.label(cls.representative)}"


def noncentral_classes(
    g: GroupHandle, classes: list[ConjugacyClass] | None = None
) -> list[ConjugacyClass]:
    zmask = center_mask(g)
    pool = classes if classes is not None else conjugacy_classes(g)
    return [c for c in pool if not (c.size == 1 and zmask[c.representative])]


def ccc_graph(
    g: GroupHandle,
    classes: list[ConjugacyClass] | None = None,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
) -> SimpleGraph:
    """Vertices are the non-central classes in census order.

    ``classes`` may carry type labels (from ``label_types``); vertex order then
    follows (type, representative), otherwise (size, representative).
    """
    if g.order > max_order:
        raise OrderBoundExceededError("class graph", g.order, max_order)
    vertices = noncentral_classes(g, classes)
    if classes is not None and all(c.type_label is not None for c in vertices):
        vertices.sort(key=lambda c: (c.type_label or 0, c.representative))

    owner = class_of(g)
    position = {}
    for v, cls in enumerate(vertices):
        position[int(owner[cls.representative])] = v

    graph = SimpleGraph(len(vertices), vertex_labels=[vertex_name(g, c) for c in vertices])
    for v, cls in enumerate(vertices):
        touched = np.unique(owner[commuting_mask(g, cls.representative)])
        for slot in touched.tolist():
            w = position.get(int(slot))
            if w is not None and w > v:
                graph.add_edge(v, w)
    debug_event(
        logger, "ccc.built", family=g.family, vertices=graph.n_vertices, edges=graph.n_edges
    )
    return graph
