from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import DERIVED, c4_letters, complete_graph, multigraphs, sets, triangle
from spancircuit.gf2 import enumerate_circuits, is_circuit, same_matroid
from spancircuit.graph import (
    MultiGraph,
    VertexCut,
    bond_matroid,
    components,
    contract_edge,
    contract_vertex_set,
    cycle_matroid,
    dijkstra_path,
    enumerate_cycles,
    enumerate_minimal_cutsets,
    is_connected,
    is_minimal_cutset,
    subdivide,
)


def test_components_examples():
    assert len(components(c4_letters())) == 1
    two = MultiGraph("abcxyz", [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "a"),
                                ("4", "x", "y"), ("5", "y", "z"), ("6", "z", "x")])
    assert len(components(two)) == 2
    assert components(MultiGraph()) == []
    assert is_connected(c4_letters())


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        MultiGraph("ab", [("x", "a", "b"), ("x", "b", "a")])
    with pytest.raises(ValueError):
        MultiGraph("ab", [("x", "a", "b", -1)])


def test_contract_vertex_set_examples():
    g = c4_letters()
    h, mapping = contract_vertex_set(g, {"a", "b"})
    assert h.edges["ab"].is_loop
    assert len(h.edges) == len(g.edges)
    assert mapping["a"] == mapping["b"]
    same, _ = contract_vertex_set(g, {"c"})
    assert same.edge_list() == g.edge_list()
    with pytest.raises(KeyError):
        contract_vertex_set(g, {"zz"})


def test_contract_edge_turns_parallels_into_loops():
    g = MultiGraph("abc", [("x", "a", "b"), ("y", "a", "b"), ("z", "b", "c")])
    h = contract_edge(g, "x")
    assert h.edges["x"].is_loop and h.edges["y"].is_loop
    assert not h.edges["z"].is_loop
    with pytest.raises(KeyError):
        contract_edge(g, "nope")


def test_minimal_cutset_examples():
    g = c4_letters()
    assert is_minimal_cutset(g, ["ab", "cd"])
    assert not is_minimal_cutset(g, ["ab", "bc", "cd"])
    path = MultiGraph("abc", [("x", "a", "b"), ("y", "b", "c")])
    assert is_minimal_cutset(path, ["x"])


def test_enumerated_cuts_match_frozen_values():
    assert set(enumerate_minimal_cutsets(c4_letters())) == sets(DERIVED["c4_minimal_cuts"])
    assert set(enumerate_minimal_cutsets(complete_graph())) == sets(DERIVED["k4_minimal_cuts"])
    tree = MultiGraph("abcd", [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "d")])
    assert set(enumerate_minimal_cutsets(tree)) == {frozenset([x]) for x in "xyz"}


def test_cycle_matroid_examples():
    m = cycle_matroid(triangle())
    assert m.rank == 2 and len(enumerate_circuits(m)) == 1
    loop = MultiGraph("ab", [("l", "a", "a"), ("x", "a", "b")])
    assert is_circuit(cycle_matroid(loop), ["l"])
    assert set(enumerate_circuits(cycle_matroid(c4_letters()))) == sets(DERIVED["c4_cycle_circuits"])
    assert set(enumerate_circuits(cycle_matroid(complete_graph()))) == sets(DERIVED["k4_cycle_circuits"])


def test_bond_matroid_examples():
    assert set(enumerate_circuits(bond_matroid(c4_letters()))) == sets(DERIVED["c4_bond_circuits"])
    assert set(enumerate_circuits(bond_matroid(triangle(("ab", "bc", "ca"))))) == sets(DERIVED["k3_minimal_cuts"])
    bridge = MultiGraph("abc", [("e", "a", "b"), ("f", "b", "c"), ("g", "c", "a"), ("b", "c", "d")])
    assert is_circuit(bond_matroid(bridge), ["b"])


def test_vertex_cut_edges():
    g = c4_letters()
    cut = VertexCut(frozenset("ab"), frozenset("cd"))
    assert cut.edges(g) == {"bc", "da"}


def test_dijkstra_path():
    g = MultiGraph("abc", [("x", "a", "b", 1), ("y", "b", "c", 1), ("z", "a", "c", 5)])
    assert dijkstra_path(g, "a", "c") == (2, ["x", "y"])
    assert dijkstra_path(g, "a", "c", banned_edges=["x"])[0] == 5


# -- properties -------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=10))
def test_cycle_matroid_circuits_are_cycles(g):
    assert set(enumerate_circuits(cycle_matroid(g))) == set(enumerate_cycles(g))


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=10))
def test_bond_matroid_circuits_are_minimal_cuts(g):
    cuts = set(enumerate_minimal_cutsets(g))
    assert set(enumerate_circuits(bond_matroid(g))) == cuts


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8), st.data())
def test_is_minimal_cutset_agrees_with_enumeration(g, data):
    cuts = set(enumerate_minimal_cutsets(g))
    labels = sorted(g.edges)
    if not labels:
        return
    s = frozenset(data.draw(st.lists(st.sampled_from(labels), unique=True, max_size=len(labels))))
    assert is_minimal_cutset(g, s) == (s in cuts)


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8), st.data())
def test_contraction_keeps_every_edge(g, data):
    xs = data.draw(st.sets(st.sampled_from(list(g.vertices)), min_size=1))
    h, mapping = contract_vertex_set(g, xs)
    assert set(h.edges) == set(g.edges)
    assert len(h.vertices) == len(g.vertices) - len(xs) + 1
    for x, e in g.edges.items():
        f = h.edges[x]
        assert {f.u, f.v} == {mapping[e.u], mapping[e.v]}
        assert f.weight == e.weight


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8, loops=False), st.data())
def test_subdividing_adds_a_parallel_in_the_bond_matroid(g, data):
    if not g.edges:
        return
    x = data.draw(st.sampled_from(sorted(g.edges)))
    h = subdivide(g, x, "new", "x_new")
    m = bond_matroid(h)
    assert m.cols[m.index(x)] == m.cols[m.index("x_new")]
    if m.cols[m.index(x)]:
        assert is_circuit(m, [x, "x_new"])
    assert same_matroid(bond_matroid(g), _delete(m, "x_new"))


def _delete(m, x):
    from spancircuit.gf2 import delete

    # contracting the new edge restores g, and graph contraction deletes from the bond matroid
    return delete(m, [x])
