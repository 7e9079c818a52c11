from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

from centlab.graphs.join import JoinSpec, realize
from centlab.graphs.simple import SimpleGraph


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_ids(graph: SimpleGraph) -> list[str]:
    """Quoted vertex labels as DOT node ids; a repeated label gets its vertex index appended."""
    seen: set[str] = set()
    ids: list[str] = []
    for v, label in enumerate(graph.vertex_labels):
        name = label if label not in seen else f"{label}#{v}"
        seen.add(name)
        ids.append(_quote(name))
    return ids


def graph_to_dot(
    graph: SimpleGraph,
    *,
    name: str = "G",
    parts: Sequence[Sequence[int]] = (),
    part_names: Sequence[str] = (),
) -> str:
    """Undirected DOT text keyed by vertex label; vertices in index order, edges (u, v) with u < v."""
    ids = _node_ids(graph)
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    clustered: set[int] = set()
    for idx, members in enumerate(parts):
        label = part_names[idx] if idx < len(part_names) else f"P{idx}"
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f"    label={_quote(f'{label} (K{len(members)})')};")
        for v in sorted(members):
            lines.append(f"    {ids[v]};")
            clustered.add(v)
        lines.append("  }")
    for v in range(graph.n_vertices):
        if v not in clustered:
            lines.append(f"  {ids[v]};")
    for u, v in graph.edges():
        lines.append(f"  {ids[u]} -- {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spec_to_dot(spec: JoinSpec) -> str:
    graph = realize(spec)
    parts: list[list[int]] = []
    start = 0
    for size in spec.part_sizes:
        parts.append(list(range(start, start + size)))
        start += size
    return graph_to_dot(graph, name=spec.name or "join", parts=parts, part_names=spec.part_names)


def write_dot(text: str, path: str | Path) -> Path:
    out_path = Path(path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(text, encoding="utf-8")
    return out_path
