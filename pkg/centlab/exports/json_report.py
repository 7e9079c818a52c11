from __future__ import annotations

import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from centlab.api_objects.types import VerificationReport
from centlab.graphs.join import JoinSpec
from centlab.graphs.simple import SimpleGraph


def dumps(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=True, sort_keys=True, indent=2) + "\n"


def reports_payload(reports: Sequence[VerificationReport], *, timings: bool = False) -> dict[str, Any]:
    return {"reports": [report.to_dict(timings=timings) for report in reports]}


def graph_payload(graph: SimpleGraph, decomposition: JoinSpec | None = None) -> dict[str, Any]:
    payload = graph.to_dict()
    if decomposition is not None:
        payload["parts"] = [list(members) for members in decomposition.part_members]
        payload["join"] = decomposition.to_dict()
    return payload


def write_json(payload: Any, path: str | Path) -> Path:
    out_path = Path(path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(dumps(payload), encoding="utf-8")
    return out_path
