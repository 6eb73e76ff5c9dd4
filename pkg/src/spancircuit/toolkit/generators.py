"""Random conflict trees and the clique reduction instance."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, count
from typing import Sequence

from ..ctse import CtseInstance
from ..decomp import BasicNode, ConflictTree, validate
from ..emwc import EmwcInstance
from ..gf2 import enumerate_circuits
from ..graph import MultiGraph, enumerate_cycles, is_connected


def _random_graph(rng: random.Random, fresh, n: int, m: int, wmax: int) -> MultiGraph:
    while True:
        es = []
        # spanning tree first, then extra edges (loops and parallels allowed)
        for v in range(1, n):
            es.append((fresh(), rng.randrange(v), v, rng.randint(1, wmax)))
        for _ in range(max(0, m - (n - 1))):
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v and rng.random() < 0.7:
                continue
            es.append((fresh(), u, v, rng.randint(1, wmax)))
        g = MultiGraph(range(n), es)
        if is_connected(g):
            return g


def _node_with(rng, fresh, kind: str, shared: Sequence[str], wmax: int, size: int) -> BasicNode:
    """A node of ``kind`` containing ``shared`` (one label, or a triple forming a circuit)."""
    if kind == "r10":
        labels = [fresh() for _ in range(10)]
        if shared:
            labels[rng.randrange(10)] = shared[0]
        protect = set(shared)
        deletable = [x for x in labels if x not in protect]
        deleted = rng.sample(deletable, rng.randint(0, 3))
        parallels = []
        for _ in range(rng.randint(0, 2)):
            base = rng.choice([x for x in labels if x not in deleted])
            parallels.append((fresh(), base))
        weights = {x: rng.randint(1, wmax) for x in labels + [p for p, _ in parallels]}
        return BasicNode.r10(labels, parallels, deleted, weights)
    n = rng.randint(2, max(2, size))
    g = _random_graph(rng, fresh, n, rng.randint(n - 1, n + 2), wmax)
    extra = []
    if len(shared) == 1:
        u, v = rng.randrange(n), rng.randrange(n)
        while u == v and n > 1:
            v = rng.randrange(n)
        extra.append((shared[0], u, v, rng.randint(1, wmax)))
    elif len(shared) == 3:
        if kind == "graphic":
            if n < 3:
                g = _random_graph(rng, fresh, 3, 3, wmax)
                n = 3
            a, b, c = rng.sample(range(n), 3)
            extra += [(shared[0], a, b, 1), (shared[1], b, c, 1), (shared[2], c, a, 1)]
        else:
            hub = n
            for x in shared:
                extra.append((x, hub, rng.randrange(n), 1))
    if rng.random() < 0.5:
        # a fresh triangle (graphic) or degree-3 hub (cographic) for later 3-sums
        if kind == "graphic" and n >= 2:
            a, b = rng.sample(range(n), 2)
            c = n + 1
            extra += [(fresh(), a, b, rng.randint(1, wmax)), (fresh(), b, c, rng.randint(1, wmax)),
                      (fresh(), c, a, rng.randint(1, wmax))]
        elif kind == "cographic":
            hub = n + 2
            extra += [(fresh(), hub, rng.randrange(n), rng.randint(1, wmax)) for _ in range(3)]
    g = g.with_edges(extra)
    return BasicNode(kind, g)


def _triangles(node: BasicNode, taken: set) -> list[tuple[str, ...]]:
    out = []
    for c in enumerate_circuits(node.matroid, size_cap=3):
        if len(c) == 3 and not c & taken:
            out.append(tuple(sorted(c)))
    return out


def gen_random_tree(
    seed: int, max_nodes: int = 3, max_elements: int = 20, *, wmax: int = 3,
    kinds: Sequence[str] = ("graphic", "cographic", "r10"), node_size: int = 4,
    arities: Sequence[int] = (0, 1, 1, 3, 3), min_nodes: int = 1,
) -> ConflictTree:
    """A random valid conflict tree whose composed ground set has at most ``max_elements`` elements."""
    rng = random.Random(seed)
    for _ in range(200):
        counter = count()

        def fresh():
            return f"x{next(counter)}"

        n_nodes = rng.randint(min(min_nodes, max_nodes), max_nodes)
        nodes = [_node_with(rng, fresh, rng.choice(kinds), (), wmax, node_size)]
        links = []
        taken: set = set()
        for i in range(1, n_nodes):
            parent = rng.randrange(len(nodes))
            pnode = nodes[parent]
            arity = rng.choice(arities)
            shared: tuple = ()
            kind = rng.choice(kinds)
            if arity == 3:
                tris = _triangles(pnode, taken) if pnode.kind != "r10" else []
                if tris and kind != "r10":
                    shared = rng.choice(tris)
                else:
                    arity = 1
            if arity == 1:
                pm = pnode.matroid
                free = [x for x in pnode.labels if x not in taken and pm.sum_mask(pm.mask([x])) != 0]
                if free:
                    shared = (rng.choice(free),)
                else:
                    arity = 0
            taken |= set(shared)
            nodes.append(_node_with(rng, fresh, kind, shared, wmax, node_size))
            links.append((parent, i))
        tree = ConflictTree.build(nodes, links)
        if min_nodes > 1 and any(len(e.shared) not in arities for e in tree.edges):
            continue
        if len(tree.ground) <= max_elements and validate(tree):
            return tree
    raise RuntimeError("could not generate a tree within the size budget")


def random_multigraph(
    rng: random.Random, n: int, m: int, wmax: int = 3, *, loops: bool = True, connected: bool = False,
) -> MultiGraph:
    """``m`` random edges ``e0..`` on vertices ``0..n-1`` (parallels allowed)."""
    while True:
        es = []
        for i in range(m):
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v and not loops:
                continue
            es.append((f"e{i}", u, v, rng.randint(1, wmax)))
        g = MultiGraph(range(n), es)
        if not connected or is_connected(g):
            return g


def gen_emwc_instance(
    seed: int, max_vertices: int = 8, max_k: int = 3, wmax: int = 3, *, with_sides: bool = True,
) -> EmwcInstance:
    """A random connected cut instance with up to two terminal edges."""
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    g = random_multigraph(rng, n, rng.randint(n - 1, 2 * n), wmax, connected=True)
    t = frozenset(rng.sample(list(g.edges), rng.randint(0, min(2, len(g.edges)))))
    r1 = r2 = frozenset()
    if with_sides:
        vs = list(g.vertices)
        r1 = frozenset(rng.sample(vs, rng.randint(0, 1)))
        r2 = frozenset(rng.sample(vs, rng.randint(0, 1)))
    return EmwcInstance(g, t, r1, r2, rng.randint(0, max_k))


def gen_ctse_instance(seed: int, max_vertices: int = 9, max_k: int = 4, wmax: int = 3) -> CtseInstance:
    """A random cycle instance; most terminal sets are drawn from an actual cycle."""
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    g = random_multigraph(rng, n, rng.randint(n, 2 * n + 2), wmax)
    cycles = enumerate_cycles(g)
    if cycles and rng.random() < 0.7:
        c = sorted(rng.choice(cycles))
        t = frozenset(rng.sample(c, rng.randint(1, len(c))))
    else:
        t = frozenset(rng.sample(list(g.edges), rng.randint(0, min(3, len(g.edges)))))
    return CtseInstance(g, t, rng.randint(0, max_k))


@dataclass(frozen=True)
class CliqueReduction:
    graph: MultiGraph
    terminals: frozenset[str]
    budget: int


def gen_clique_reduction(g: MultiGraph, k: int, partition: Sequence[Sequence]) -> CliqueReduction:
    """Cut instance that has a terminal minimal cut of size ``budget`` iff ``g`` has a k-clique
    with one vertex in each part.

    ``g`` must be simple and d-regular with k < d <= n - 1.
    """
    n = len(g.vertices)
    if any(e.is_loop for e in g.edges.values()):
        raise ValueError("graph must be simple")
    pairs = [frozenset((e.u, e.v)) for e in g.edges.values()]
    if len(set(pairs)) != len(pairs):
        raise ValueError("graph must be simple")
    degrees = {g.degree(v) for v in g.vertices}
    if len(degrees) != 1:
        raise ValueError("graph must be regular")
    d = degrees.pop()
    if not k < d <= n - 1:
        raise ValueError(f"need k < d <= n - 1, got k={k}, d={d}, n={n}")
    parts = [list(p) for p in partition]
    if len(parts) != k or sorted(v for p in parts for v in p) != sorted(g.vertices):
        raise ValueError("partition must split the vertices into k parts")
    p = 2 * n * n
    vs = [("g", v) for v in g.vertices]
    vs += [("s", i) for i in range(k)]
    vs += [("x", i) for i in range(n)]
    vs += [("y", i) for i in range(p)]
    es = []
    c = count()

    def add(u, v):
        es.append((f"h{next(c)}", u, v, 1))

    for e in g.edges.values():
        add(("g", e.u), ("g", e.v))
    for i, part in enumerate(parts):
        for v in part:
            add(("s", i), ("g", v))
    for a, b in combinations(range(n), 2):
        add(("x", a), ("x", b))
    for a in range(n):
        for v in g.vertices:
            add(("x", a), ("g", v))
    for a, b in combinations(range(p), 2):
        add(("y", a), ("y", b))
    for a in range(p):
        for b in range(n):
            add(("y", a), ("x", b))
    terminals = []
    for i in range(k):
        label = f"t{i}"
        es.append((label, ("y", 0), ("s", i), 1))
        terminals.append(label)
    budget = n + (n + d - k + 1) * k
    return CliqueReduction(MultiGraph(vs, es), frozenset(terminals), budget)
