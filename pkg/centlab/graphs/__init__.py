"""Simple graphs, joins of cliques and exact isomorphism."""

from centlab.graphs.isomorphism import graphs_isomorphic, twin_quotient, weighted_isomorphic
from centlab.graphs.join import (
    JoinSpec,
    build_M1,
    build_M2,
    build_M2_orbit,
    decompose_join,
    h_join,
    realize,
    shape_diff,
    verify_join_structure,
)
from centlab.graphs.simple import SimpleGraph

__all__ = [
    "JoinSpec",
    "SimpleGraph",
    "build_M1",
    "build_M2",
    "build_M2_orbit",
    "decompose_join",
    "graphs_isomorphic",
    "h_join",
    "realize",
    "shape_diff",
    "twin_quotient",
    "verify_join_structure",
    "weighted_isomorphic",
]
