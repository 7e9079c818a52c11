"""DOT and JSON writers for class graphs, join shapes and reports."""

from centlab.exports.dot import graph_to_dot, spec_to_dot, write_dot
from centlab.exports.json_report import dumps, graph_payload, reports_payload, write_json

__all__ = [
    "dumps",
    "graph_payload",
    "graph_to_dot",
    "reports_payload",
    "spec_to_dot",
    "write_dot",
    "write_json",
]
