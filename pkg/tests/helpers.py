"""Small graphs and strategies shared by the test modules."""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

from spancircuit.gf2 import BinaryMatroid, Gf2Matrix
from spancircuit.graph import MultiGraph

DERIVED = json.loads((Path(__file__).parent / "fixtures" / "derived.json").read_text())


def sets(items):
    """Frozen sets from nested lists, for comparison with library output."""
    return {frozenset(x) for x in items}


def cycle_graph(n: int, prefix: str = "e", weight: int = 1) -> MultiGraph:
    return MultiGraph(range(n), [(f"{prefix}{i + 1}", i, (i + 1) % n, weight) for i in range(n)])


def c4_letters() -> MultiGraph:
    return MultiGraph("abcd", [("ab", "a", "b", 1), ("bc", "b", "c", 1), ("cd", "c", "d", 1), ("da", "d", "a", 1)])


def complete_graph(vs: str = "abcd", weight: int = 1) -> MultiGraph:
    return MultiGraph(vs, [(u + v, u, v, weight) for u, v in combinations(vs, 2)])


def triangle(labels=("e", "f", "g"), verts=("a", "b", "c")) -> MultiGraph:
    a, b, c = verts
    return MultiGraph(verts, [(labels[0], a, b, 1), (labels[1], b, c, 1), (labels[2], c, a, 1)])


@st.composite
def multigraphs(draw, max_vertices: int = 7, max_edges: int = 10, wmax: int = 3, loops: bool = True):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_edges))
    es = []
    for i in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v and not loops:
            continue
        es.append((f"e{i}", u, v, draw(st.integers(1, wmax))))
    return MultiGraph(range(n), es)


@st.composite
def binary_matroids(draw, max_rows: int = 5, max_cols: int = 10):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return BinaryMatroid(Gf2Matrix.from_rows(rows, c), tuple(f"m{j}" for j in range(c)))
