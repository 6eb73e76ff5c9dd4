from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import DERIVED, binary_matroids, complete_graph, cycle_graph, sets, triangle
from spancircuit.gf2 import (
    BinaryMatroid,
    Gf2Matrix,
    add_parallel,
    circuit_in,
    contract,
    delete,
    dual,
    enumerate_circuits,
    fundamental_circuit,
    is_circuit,
    is_cycle,
    is_independent,
    matrix_rank,
    null_space,
    r10,
    rank,
    same_matroid,
)
from spancircuit.graph import cycle_matroid
from spancircuit.toolkit.oracles import oracle_circuits


def test_rank_small_matrices():
    assert rank(Gf2Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(Gf2Matrix.from_rows([[0, 0, 0, 0], [0, 0, 0, 0]])) == 0


def test_rank_r10_matches_frozen_value():
    assert rank(r10().matrix) == DERIVED["r10_rank"]
    assert r10().rank == DERIVED["r10_rank"]


def test_matrix_round_trip_through_numpy():
    a = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    m = Gf2Matrix.from_array(a)
    assert (m.to_array() == a).all()


def test_ragged_and_non_binary_rows_rejected():
    with pytest.raises(ValueError):
        Gf2Matrix.from_rows([[1, 0], [1]])
    with pytest.raises(ValueError):
        Gf2Matrix.from_rows([[2, 0]])


def test_independence_in_triangle():
    m = cycle_matroid(triangle())
    assert is_independent(m, ["e", "f"])
    assert not is_independent(m, ["e", "f", "g"])
    assert is_independent(m, [])


def test_cycles_and_circuits_in_triangle():
    m = cycle_matroid(triangle())
    assert is_cycle(m, [])
    assert is_cycle(m, ["e", "f", "g"])
    assert is_circuit(m, ["e", "f", "g"])
    assert not is_circuit(m, ["e"])


def test_symmetric_difference_of_circuits_is_cycle():
    m = cycle_matroid(complete_graph())
    cs = enumerate_circuits(m)
    for a, b in combinations(cs, 2):
        assert is_cycle(m, a ^ b)


def test_r10_has_no_three_element_circuit():
    m = r10()
    for s in combinations(m.labels, 3):
        assert not is_circuit(m, s)


def test_fundamental_circuit_examples():
    c4 = cycle_matroid(cycle_graph(4))
    assert fundamental_circuit(c4, ["e1", "e2", "e3"], "e4") == {"e1", "e2", "e3", "e4"}
    k3 = cycle_matroid(triangle())
    assert fundamental_circuit(k3, ["e", "f"], "g") == {"e", "f", "g"}
    p = add_parallel(k3, "e", "e2")
    assert fundamental_circuit(p, ["e2", "f"], "e") == {"e", "e2"}


def test_fundamental_circuit_errors():
    k3 = cycle_matroid(triangle())
    with pytest.raises(ValueError):
        fundamental_circuit(k3, ["e"], "g")
    with pytest.raises(ValueError):
        fundamental_circuit(k3, ["e", "f"], "e")


def test_circuit_in_finds_circuit_through_element():
    m = cycle_matroid(complete_graph())
    c = circuit_in(m, m.labels, "ab")
    assert c is not None and "ab" in c and is_circuit(m, c)
    assert circuit_in(m, ["ab", "ac"], "ab") is None


def test_enumerate_circuits_examples():
    assert enumerate_circuits(cycle_matroid(triangle())) == [frozenset("efg")]
    assert all(len(c) % 2 == 0 for c in enumerate_circuits(r10()))
    p = add_parallel(cycle_matroid(triangle()), "e", "e2")
    assert frozenset({"e", "e2"}) in enumerate_circuits(p)


def test_enumerate_circuits_cap():
    big = BinaryMatroid(Gf2Matrix.from_rows([[1] * 25]))
    with pytest.raises(ValueError):
        enumerate_circuits(big)


def test_r10_frozen_facts():
    m = r10()
    assert len(m) == 10
    assert all(bin(c).count("1") == 3 for c in m.cols)
    cs = enumerate_circuits(m)
    assert len(cs) == DERIVED["r10_circuit_count"]
    assert sorted({len(c) for c in cs}) == DERIVED["r10_circuit_sizes"]
    assert min(len(c) for c in cs) == DERIVED["r10_girth"]


def test_dual_examples():
    k4 = cycle_matroid(complete_graph())
    assert set(enumerate_circuits(dual(dual(k4)))) == set(enumerate_circuits(k4))
    c4 = cycle_matroid(cycle_graph(4))
    assert set(enumerate_circuits(dual(c4))) == {frozenset(p) for p in combinations(c4.labels, 2)}


def test_coloop_becomes_loop_of_dual():
    # a pendant edge is a coloop of the cycle matroid
    from spancircuit.graph import MultiGraph

    g = MultiGraph("abcd", [("e", "a", "b"), ("f", "b", "c"), ("g", "c", "a"), ("p", "c", "d")])
    d = dual(cycle_matroid(g))
    assert is_circuit(d, ["p"])


def test_delete_and_parallel():
    m = cycle_matroid(complete_graph())
    assert len(delete(m, ["ab", "cd"])) == len(m) - 2
    p = add_parallel(m, "ab", "ab2")
    assert is_circuit(p, ["ab", "ab2"])
    with pytest.raises(KeyError):
        delete(m, ["nope"])
    with pytest.raises(ValueError):
        add_parallel(m, "ab", "cd")


def test_parallel_exchange():
    m = add_parallel(cycle_matroid(complete_graph()), "ab", "ab2")
    for c in enumerate_circuits(m):
        if "ab" in c and "ab2" not in c:
            assert is_circuit(m, (c - {"ab"}) | {"ab2"})


def test_contract_is_dual_of_delete():
    m = cycle_matroid(complete_graph())
    assert same_matroid(contract(m, ["ab"]), dual(delete(dual(m), ["ab"])))


# -- properties -------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(binary_matroids())
def test_rank_bounded_and_null_space_orthogonal(m):
    mat = m.matrix
    r = matrix_rank(mat)
    assert r <= min(mat.nrows, mat.ncols)
    ns = null_space(mat.rows, mat.ncols)
    assert len(ns) == mat.ncols - r
    for v in ns:
        for row in mat.rows:
            assert bin(row & v).count("1") % 2 == 0


@settings(max_examples=60, deadline=None)
@given(binary_matroids(max_cols=9))
def test_enumerated_circuits_match_definition(m):
    assert set(enumerate_circuits(m)) == set(oracle_circuits(m))


@settings(max_examples=60, deadline=None)
@given(binary_matroids(max_cols=9), st.data())
def test_circuit_elimination(m, data):
    cs = enumerate_circuits(m)
    for c in cs:
        assert c and not any(c < d for d in cs)
    pairs = [(a, b) for a, b in combinations(cs, 2) if a & b]
    if not pairs:
        return
    a, b = data.draw(st.sampled_from(pairs))
    e = data.draw(st.sampled_from(sorted(a & b)))
    rest = (a | b) - {e}
    assert any(c <= rest for c in cs)


@settings(max_examples=60, deadline=None)
@given(binary_matroids(max_cols=9))
def test_dual_involution_and_loops(m):
    d = dual(m)
    assert same_matroid(dual(d), m)
    for x in m.labels:
        coloop = m.rank_mask(m.full_mask & ~(1 << m.index(x))) < m.rank
        assert coloop == (d.cols[d.index(x)] == 0)
