from __future__ import annotations

from collections import Counter

import pytest

from centlab.analysis.cccgraph import ccc_graph
from centlab.analysis.conjugacy import label_types
from centlab.errors import DescriptorError, JoinStructureError
from centlab.families.identify import describe_family
from centlab.graphs.isomorphism import graphs_isomorphic
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


def test_h_join_basics() -> None:
    k5 = h_join(SimpleGraph.complete(2), [2, 3])
    assert k5.n_vertices == 5
    assert k5.n_edges == 10

    cliques = h_join(SimpleGraph(3), [2, 2, 2])
    assert cliques.n_edges == 3
    assert not cliques.is_connected()

    path = SimpleGraph.path(3)
    assert list(h_join(path, [1, 1, 1]).edges()) == list(path.edges())

    with pytest.raises(JoinStructureError):
        h_join(path, [1, 1])


def test_build_M1_sizes() -> None:
    spec = build_M1(2, 4)
    assert spec.n_vertices == 18
    assert Counter(spec.part_sizes) == Counter({2: 9})
    assert build_M1(3, 9).n_vertices == 96
    assert Counter(build_M1(3, 9).part_sizes) == Counter({6: 16})
    assert build_M1(5, 25).n_vertices == 720
    with pytest.raises(DescriptorError):
        build_M1(3, 3)


def test_build_M2_sizes() -> None:
    spec = build_M2(3, 3)
    assert spec.n_vertices == 32
    assert Counter(spec.part_sizes) == Counter({2: 13, 6: 1})
    assert build_M2(3, 9).n_vertices == 96
    big = build_M2(5, 5)
    assert big.n_vertices == 144
    assert Counter(big.part_sizes) == Counter({4: 31, 20: 1})
    with pytest.raises(DescriptorError):
        build_M2(2, 4)
    with pytest.raises(DescriptorError):
        build_M2(3, 4)


def test_orbit_shape_has_the_same_vertex_count() -> None:
    for p, z in ((3, 3), (3, 9), (5, 5)):
        assert build_M2_orbit(p, z).n_vertices == build_M2(p, z).n_vertices
    orbit = build_M2_orbit(3, 3)
    assert Counter(orbit.part_sizes) == Counter({2: 7, 6: 3})
    assert not verify_join_structure(realize(orbit), build_M2(3, 3))
    assert shape_diff(decompose_join(realize(orbit)), build_M2(3, 3))


def test_decompose_join_examples() -> None:
    merged = decompose_join(h_join(SimpleGraph.complete(2), [2, 3]))
    assert merged.part_sizes == [5]

    cycle = decompose_join(SimpleGraph.cycle(5))
    assert cycle.part_sizes == [1] * 5
    assert graphs_isomorphic(cycle.quotient, SimpleGraph.cycle(5))

    spec = build_M1(2, 4)
    found = decompose_join(realize(spec))
    assert Counter(found.part_sizes) == Counter(spec.part_sizes)
    assert graphs_isomorphic(found.quotient, spec.quotient)


def test_realize_unit_spec_is_the_quotient() -> None:
    quotient = SimpleGraph.cycle(6)
    spec = JoinSpec(quotient, [1] * 6)
    assert list(realize(spec).edges()) == list(quotient.edges())
    with pytest.raises(JoinStructureError):
        JoinSpec(quotient, [1] * 5)


@pytest.mark.parametrize(
    "spec",
    [
        build_M1(2, 4),
        build_M1(3, 9),
        build_M1(5, 25),
        build_M2(3, 3),
        build_M2(5, 5),
        build_M2_orbit(3, 3),
        build_M2_orbit(5, 5),
    ],
    ids=lambda spec: spec.name,
)
def test_round_trip_verification(spec: JoinSpec) -> None:
    assert verify_join_structure(realize(spec), spec, cross_check=True)


def test_vertex_count_mismatch_is_false() -> None:
    assert not verify_join_structure(realize(build_M1(2, 4)), build_M2(3, 3), cross_check=True)


def test_equal_size_shapes_are_told_apart() -> None:
    m1, m2 = realize(build_M1(3, 9)), realize(build_M2(3, 9))
    assert m1.n_vertices == m2.n_vertices == 96
    assert not graphs_isomorphic(m1, m2)
    assert not verify_join_structure(m1, build_M2(3, 9), cross_check=True)


def test_abelian_quotient_graphs_match_M1(heis4, heis9) -> None:
    for g, (p, z) in ((heis4, (2, 4)), (heis9, (3, 9))):
        graph = ccc_graph(g, label_types(g, describe_family(g)))
        assert verify_join_structure(graph, build_M1(p, z), cross_check=True)
    graph9 = ccc_graph(heis9)
    assert not verify_join_structure(graph9, build_M2_orbit(3, 9))


def test_nonabelian_quotient_graph_shape(nonabelian_p3) -> None:
    g, desc = nonabelian_p3.group, nonabelian_p3.descriptor
    graph = ccc_graph(g, label_types(g, desc))
    assert verify_join_structure(graph, build_M2_orbit(3, 3), cross_check=True)
    assert not verify_join_structure(graph, build_M2(3, 3), cross_check=True)
    diff = shape_diff(decompose_join(graph), build_M2(3, 3))
    assert diff
    assert not shape_diff(decompose_join(graph), build_M2_orbit(3, 3))
