from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import DERIVED, complete_graph, cycle_graph, triangle
from spancircuit.decomp import BasicNode, ConflictTree, TreeEdge, compose
from spancircuit.gf2 import enumerate_circuits, is_circuit, r10
from spancircuit.graph import MultiGraph, cycle_matroid
from spancircuit.solvers import (
    CircuitConstraint,
    apply_leaf_rule,
    choose_root,
    deepest_leaf,
    esc_r10,
    ewmsc_cographic,
    ewmsc_graphic,
    ewmsc_r10,
    solve_basic,
    solve_esc,
    solve_ewmsc,
    solve_sc,
    solve_wmsc,
)
from spancircuit.toolkit.generators import gen_random_tree
from spancircuit.toolkit.oracles import oracle_constraint, oracle_sc, oracle_wmsc


def unit(node) -> dict:
    return {x: 1 for x in node.labels}


def two_triangles() -> ConflictTree:
    a = BasicNode.graphic(MultiGraph("abc", [("e1", "a", "b"), ("e2", "b", "c"), ("f", "c", "a")]))
    b = BasicNode.graphic(MultiGraph("cda", [("e3", "c", "d"), ("e4", "d", "a"), ("f", "a", "c")]))
    return ConflictTree.build([a, b], [(0, 1)])


# -- basic nodes -------------------------------------------------------------------


def test_graphic_c4_through_one_edge():
    node = BasicNode.graphic(cycle_graph(4))
    out = solve_wmsc(node, None, {"e1"}, DERIVED["c4_wmsc_e1_optimum"])
    assert out.yes and out.witness == set(node.labels) and out.weight == 4
    assert not solve_wmsc(node, None, {"e1"}, 3)


def test_cographic_c4_opposite_edges():
    node = BasicNode.cographic(cycle_graph(4))
    cc = CircuitConstraint(node, {"e1", "e3"}, weights=unit(node), k=0)
    out = solve_ewmsc(cc)
    assert out.yes and out.witness == {"e1", "e3"}
    assert ewmsc_cographic(cc).witness == {"e1", "e3"}


def test_r10_has_no_cheap_circuit_through_one_element():
    node = BasicNode.r10()
    assert not solve_ewmsc(CircuitConstraint(node, {"r0"}, weights=unit(node), k=2))
    assert solve_ewmsc(CircuitConstraint(node, {"r0"}, weights=unit(node), k=3))


def test_r10_girth_reached_without_terminals():
    node = BasicNode.r10()
    assert DERIVED["r10_girth"] == 4
    out = solve_ewmsc(CircuitConstraint(node, weights=unit(node), k=4))
    assert out.yes and len(out.witness) == 4
    assert not solve_ewmsc(CircuitConstraint(node, weights=unit(node), k=3))


def test_r10_rejects_constraint_sets_and_triangles():
    node = BasicNode.r10()
    x = frozenset({"r0", "r1", "r2"})
    cc = CircuitConstraint(node, xs=(x,), menu={x: (frozenset({"r0"}),)}, weights=unit(node), k=9)
    assert not ewmsc_r10(cc)
    assert not esc_r10(CircuitConstraint(node, xs=(x,), menu={x: (frozenset({"r0"}),)}).with_(z=(x, "r0")))


def test_r10_skips_the_expensive_parallel():
    node = BasicNode.r10(parallels=[("p", "r0")], weights={"p": 5})
    w = node.weights()
    for t in ("r1", "r5", "r9"):
        out = ewmsc_r10(CircuitConstraint(node, {t}, weights=w, k=20))
        assert out.yes and "p" not in out.witness


def test_r10_element_bound_is_enforced():
    node = BasicNode.r10(parallels=[(f"p{i}", f"r{i % 10}") for i in range(35)])
    with pytest.raises(AssertionError):
        esc_r10(CircuitConstraint(node, {f"p{i}" for i in range(35)}))


def test_graphic_triangle_condition_rejects_terminal_at_apex():
    # z = triangle abc with tip bc; the apex a is incident to the terminal ad
    g = complete_graph()
    node = BasicNode.graphic(g)
    z = (frozenset({"ab", "bc", "ac"}), "bc")
    cc = CircuitConstraint(node, {"ad"}, z=z, weights=unit(node), k=9)
    assert not ewmsc_graphic(cc)
    ok = CircuitConstraint(node, set(), z=z, weights=unit(node), k=9)
    out = ewmsc_graphic(ok)
    assert out.yes and out.witness == {"bc", "bd", "cd"}


def test_graphic_without_sets_is_a_cycle_search():
    g = complete_graph()
    node = BasicNode.graphic(g)
    out = ewmsc_graphic(CircuitConstraint(node, {"ab", "cd"}, weights=unit(node), k=2))
    assert out.yes and len(out.witness) == 4
    assert not ewmsc_graphic(CircuitConstraint(node, {"ab", "cd"}, weights=unit(node), k=1))


def test_esc_examples():
    k4 = BasicNode.graphic(complete_graph())
    out = solve_sc(k4, {"ab", "bc", "ac"})
    assert out.yes and out.witness == {"ab", "bc", "ac"}
    assert not solve_sc(k4, {"ab", "ac", "ad"})
    tree_graph = MultiGraph("abcd", [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "d")])
    bond = BasicNode.cographic(tree_graph)
    # every bridge is a loop of the bond matroid: alone it is a circuit, two never share one
    for t in ("x", "y", "z"):
        assert solve_sc(bond, {t}).witness == {t} == oracle_sc(bond, {t})
    for t in ({"x", "y"}, {"x", "y", "z"}):
        assert not solve_sc(bond, t)
        assert oracle_sc(bond, t) is None


def test_plain_matroids_are_refused():
    with pytest.raises(TypeError):
        solve_sc(cycle_matroid(triangle()), {"e"})
    with pytest.raises(TypeError):
        solve_wmsc(r10(), None, {"r0"}, 5)


def test_weight_mode_mismatch_is_refused():
    node = BasicNode.graphic(triangle())
    with pytest.raises(ValueError):
        solve_ewmsc(CircuitConstraint(node, {"e"}))
    with pytest.raises(ValueError):
        solve_esc(CircuitConstraint(node, {"e"}, weights=unit(node), k=3))


def test_budget_below_terminal_weight_is_no():
    assert not solve_wmsc(BasicNode.graphic(triangle()), None, {"e", "f"}, 1)


# -- leaf rules --------------------------------------------------------------------


def test_triangle_leaf_prices_the_shared_element():
    t = two_triangles()
    cc = CircuitConstraint(t, {"e1"}, weights=t.weights(), k=3)
    cc = cc.with_(matroid=t.rerooted(choose_root(cc)))
    red = apply_leaf_rule(cc, deepest_leaf(cc.matroid))
    assert red.instance.weights["f"] == DERIVED["triangle_leaf_price"]
    assert len(red.instance.matroid.nodes) == 1


def test_leaf_without_a_circuit_through_the_shared_element():
    # f is a pendant edge of the leaf graph, so no leaf circuit uses it
    root = BasicNode.graphic(MultiGraph("abc", [("e1", "a", "b"), ("e2", "b", "c"), ("f", "c", "a")]))
    leaf = BasicNode.graphic(MultiGraph("cdxy", [("f", "c", "d"), ("g", "x", "y"), ("h", "y", "c"), ("i", "c", "x")]))
    t = ConflictTree.build([root, leaf], [(0, 1)])
    k = 3
    cc = CircuitConstraint(t, {"e1"}, weights=t.weights(), k=k)
    red = apply_leaf_rule(cc, 1)
    assert red.instance.weights["f"] == k + 1
    assert not solve_ewmsc(cc)


def test_three_leaf_with_empty_menu_says_no():
    # the leaf terminal p is a bridge of the leaf graph, so no leaf circuit holds it
    root = BasicNode.graphic(MultiGraph("1234", [("s12", "1", "2"), ("s23", "2", "3"), ("s13", "1", "3"),
                                                 ("r14", "1", "4"), ("r24", "2", "4"), ("r34", "3", "4")]))
    leaf = BasicNode.graphic(MultiGraph("1235", [("s12", "1", "2"), ("s23", "2", "3"), ("s13", "1", "3"),
                                                 ("p", "3", "5")]))
    t = ConflictTree((root, leaf), (TreeEdge(0, 1, frozenset({"s12", "s23", "s13"})),))
    for cc in (CircuitConstraint(t, {"r14", "p"}, weights=t.weights(), k=6),
               CircuitConstraint(t, xs=(frozenset({"r14"}), frozenset({"p"})),
                                 menu={frozenset({"r14"}): (frozenset({"r14"}),), frozenset({"p"}): (frozenset({"p"}),)})):
        red = apply_leaf_rule(cc, 1)
        assert red.stopped


def test_one_leaf_rule():
    a = BasicNode.graphic(triangle())
    b = BasicNode.graphic(triangle(("x", "y", "z")))
    t = ConflictTree.build([a, b], [(0, 1)])
    assert apply_leaf_rule(CircuitConstraint(t, {"e", "x"}, weights=t.weights(), k=5), 1).stopped
    red = apply_leaf_rule(CircuitConstraint(t, {"e"}, weights=t.weights(), k=5), 1)
    assert red.instance.matroid.ground == {"e", "f", "g"}


def test_scir_two_leaf_keeps_a_usable_element():
    t = two_triangles()
    cc = CircuitConstraint(t, xs=(frozenset({"e1"}),), menu={frozenset({"e1"}): (frozenset({"e1"}),)})
    red = apply_leaf_rule(cc, 1)
    assert "f" in red.instance.matroid.nodes[0].labels


def test_root_never_reduced():
    t = two_triangles()
    with pytest.raises(ValueError):
        apply_leaf_rule(CircuitConstraint(t, {"e1"}, weights=t.weights(), k=3), 0)


def _random_constraint(seed: int, weighted: bool) -> CircuitConstraint:
    rng = random.Random(seed)
    t = gen_random_tree(seed, max_nodes=3, max_elements=18, min_nodes=2)
    ground = sorted(t.ground)
    terms = frozenset(rng.sample(ground, rng.randint(1, min(3, len(ground)))))
    if weighted:
        cc = CircuitConstraint(t, terms, weights=t.weights(), k=rng.randint(0, 10))
    else:
        xs = tuple(frozenset([x]) for x in sorted(terms))
        cc = CircuitConstraint(t, xs=xs, menu={x: (x,) for x in xs})
    return cc.with_(matroid=t.rerooted(choose_root(cc)))


def _check_one_rule(cc: CircuitConstraint) -> None:
    if len(cc.matroid.nodes) < 2:
        return
    before = oracle_constraint(cc)
    red = apply_leaf_rule(cc, deepest_leaf(cc.matroid))
    if red.stopped:
        assert before is None
        return
    assert red.instance.k <= cc.k
    after = oracle_constraint(red.instance)
    assert (before is None) == (after is None)
    if after is not None:
        lifted = red.lift(after[0])
        assert cc.is_feasible(lifted, compose(cc.matroid))


@pytest.mark.parametrize("seed", range(40))
def test_weighted_leaf_rule_preserves_the_verdict(seed):
    _check_one_rule(_random_constraint(seed, True))


@pytest.mark.parametrize("seed", range(40))
def test_unweighted_leaf_rule_preserves_the_verdict(seed):
    _check_one_rule(_random_constraint(seed, False))


# -- end to end --------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(50))
def test_solve_wmsc_matches_oracle(seed):
    rng = random.Random(seed)
    t = gen_random_tree(seed, max_nodes=3, max_elements=18)
    ground = sorted(t.ground)
    terms = rng.sample(ground, rng.randint(0, min(3, len(ground))))
    budget = rng.randint(0, 12)
    w = t.weights()
    want = oracle_wmsc(compose(t), w, terms, budget)
    got = solve_wmsc(t, None, terms, budget)
    assert got.yes == (want is not None)
    if got.yes:
        assert got.weight == want
        assert is_circuit(compose(t), got.witness) and set(terms) <= got.witness


@pytest.mark.parametrize("seed", range(50))
def test_solve_sc_matches_oracle(seed):
    rng = random.Random(seed)
    t = gen_random_tree(seed, max_nodes=3, max_elements=18)
    ground = sorted(t.ground)
    terms = rng.sample(ground, rng.randint(1, min(4, len(ground))))
    want = oracle_sc(compose(t), terms)
    got = solve_sc(t, terms)
    assert got.yes == (want is not None)
    if got.yes:
        assert is_circuit(compose(t), got.witness) and set(terms) <= got.witness


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_more_budget_never_hurts(seed):
    rng = random.Random(seed)
    t = gen_random_tree(seed, max_nodes=3, max_elements=16)
    terms = rng.sample(sorted(t.ground), 1)
    verdicts = [solve_wmsc(t, None, terms, b).yes for b in range(0, 10)]
    assert verdicts == sorted(verdicts)


def test_spanning_circuit_of_the_two_triangles():
    t = two_triangles()
    out = solve_sc(t, {"e1", "e3"})
    assert out.yes and out.witness == {"e1", "e2", "e3", "e4"}
    assert set(enumerate_circuits(compose(t))) == {out.witness}


def test_solve_basic_dispatch_and_constraint_checks():
    node = BasicNode.graphic(triangle())
    assert solve_basic(CircuitConstraint(node, {"e"})).yes
    with pytest.raises(ValueError):
        CircuitConstraint(node, {"e"}, xs=(frozenset({"e"}),)).check()
    with pytest.raises(ValueError):
        CircuitConstraint(node, {"zz"}).check()
