"""Labeled multigraphs with loops and parallel edges, cuts, and graph matroids."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

from .gf2 import BinaryMatroid, dual

Vertex = Hashable
CUTSET_VERTEX_CAP = 20


class Edge(NamedTuple):
    u: Vertex
    v: Vertex
    weight: int = 1

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: Vertex) -> Vertex:
        return self.v if x == self.u else self.u


class MultiGraph:
    """Undirected multigraph whose edges carry unique string labels and integer weights.

    Instances are treated as immutable; every operation returns a new graph.
    """

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence] = ()):
        vs: list[Vertex] = []
        seen = set()
        for x in vertices:
            if x not in seen:
                seen.add(x)
                vs.append(x)
        es: dict[str, Edge] = {}
        for item in edges:
            label, u, v, *rest = item
            w = int(rest[0]) if rest else 1
            label = str(label)
            if label in es:
                raise ValueError(f"duplicate edge label {label!r}")
            if w < 0:
                raise ValueError(f"negative weight on {label!r}")
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    vs.append(x)
            es[label] = Edge(u, v, w)
        self.vertices: tuple[Vertex, ...] = tuple(vs)
        self.edges: dict[str, Edge] = es
        self._adj: dict[Vertex, list[str]] | None = None

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and set(self.vertices) == set(other.vertices)
            and self.edges == other.edges
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.edges)

    def edge_list(self) -> list[tuple[str, Vertex, Vertex, int]]:
        return [(x, e.u, e.v, e.weight) for x, e in self.edges.items()]

    def weight(self, label: str) -> int:
        return self.edges[label].weight

    def total_weight(self, labels: Iterable[str]) -> int:
        return sum(self.edges[x].weight for x in labels)

    def incident(self, x: Vertex) -> list[str]:
        if self._adj is None:
            adj: dict[Vertex, list[str]] = {v: [] for v in self.vertices}
            for label, e in self.edges.items():
                adj[e.u].append(label)
                if not e.is_loop:
                    adj[e.v].append(label)
            self._adj = adj
        return self._adj[x]

    def neighbors(self, x: Vertex) -> set[Vertex]:
        return {self.edges[l].other(x) for l in self.incident(x) if not self.edges[l].is_loop}

    def degree(self, x: Vertex) -> int:
        return sum(2 if self.edges[l].is_loop else 1 for l in self.incident(x))

    # -- editing -------------------------------------------------------

    def with_edges(self, edges: Iterable[Sequence]) -> "MultiGraph":
        return MultiGraph(self.vertices, list(self.edge_list()) + list(edges))

    def with_weights(self, weights: dict[str, int]) -> "MultiGraph":
        return MultiGraph(
            self.vertices,
            [(x, e.u, e.v, weights.get(x, e.weight)) for x, e in self.edges.items()],
        )

    def delete_edges(self, labels: Iterable[str]) -> "MultiGraph":
        drop = set(labels)
        return MultiGraph(self.vertices, [t for t in self.edge_list() if t[0] not in drop])

    def delete_vertices(self, xs: Iterable[Vertex]) -> "MultiGraph":
        drop = set(xs)
        return MultiGraph(
            [v for v in self.vertices if v not in drop],
            [t for t in self.edge_list() if t[1] not in drop and t[2] not in drop],
        )

    def induced(self, xs: Iterable[Vertex]) -> "MultiGraph":
        keep = set(xs)
        return self.delete_vertices(v for v in self.vertices if v not in keep)

    def edge_subgraph(self, labels: Iterable[str]) -> "MultiGraph":
        keep = set(labels)
        return MultiGraph(self.vertices, [t for t in self.edge_list() if t[0] in keep])

    def cut_edges(self, side: Iterable[Vertex]) -> frozenset[str]:
        """E(A, V - A)."""
        a = set(side)
        return frozenset(x for x, e in self.edges.items() if (e.u in a) != (e.v in a))


@dataclass(frozen=True)
class VertexCut:
    side_a: frozenset
    side_b: frozenset

    def edges(self, g: MultiGraph) -> frozenset[str]:
        return frozenset(
            x for x, e in g.edges.items()
            if (e.u in self.side_a and e.v in self.side_b) or (e.v in self.side_a and e.u in self.side_b)
        )

    def flipped(self) -> "VertexCut":
        return VertexCut(self.side_b, self.side_a)


class _DSU:
    def __init__(self, items: Iterable[Vertex]):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def components(g: MultiGraph, ignore: Iterable[str] = ()) -> list[frozenset]:
    """Connected components, optionally pretending the ``ignore`` edges are absent."""
    skip = set(ignore)
    dsu = _DSU(g.vertices)
    for x, e in g.edges.items():
        if x not in skip:
            dsu.union(e.u, e.v)
    groups: dict[Vertex, list[Vertex]] = {}
    for v in g.vertices:
        groups.setdefault(dsu.find(v), []).append(v)
    return [frozenset(vs) for vs in groups.values()]


def is_connected(g: MultiGraph, ignore: Iterable[str] = ()) -> bool:
    return len(components(g, ignore)) <= 1


def is_connected_set(g: MultiGraph, xs: Iterable[Vertex]) -> bool:
    """Whether G[xs] is connected (the empty set counts as connected)."""
    xs = set(xs)
    if not xs:
        return True
    start = next(iter(xs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for l in g.incident(x):
            y = g.edges[l].other(x)
            if y in xs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(xs)


def contract_vertex_set(g: MultiGraph, xs: Iterable[Vertex], name: Vertex | None = None):
    """Identify the vertices of ``xs`` into one vertex.

    Every edge survives; edges inside ``xs`` become loops.  The new vertex is
    named ``name`` or, by default, the first member of ``xs`` in vertex order.
    Returns ``(graph, mapping)`` where ``mapping`` sends old vertices to new ones.
    """
    xs = set(xs)
    if not xs:
        raise ValueError("cannot contract an empty vertex set")
    missing = xs - set(g.vertices)
    if missing:
        raise KeyError(f"vertices not in the graph: {sorted(map(str, missing))}")
    if name is None:
        name = next(v for v in g.vertices if v in xs)
    elif name in g.vertices and name not in xs:
        raise ValueError(f"name {name!r} collides with a surviving vertex")
    mapping = {v: (name if v in xs else v) for v in g.vertices}
    vs = []
    for v in g.vertices:
        m = mapping[v]
        if m not in vs:
            vs.append(m)
    es = [(x, mapping[e.u], mapping[e.v], e.weight) for x, e in g.edges.items()]
    return MultiGraph(vs, es), mapping


def contract_edges(g: MultiGraph, labels: Iterable[str]):
    """Contract a set of edges at once.  Returns ``(graph, mapping)``."""
    dsu = _DSU(g.vertices)
    for x in labels:
        e = g.edges[x]
        dsu.union(e.u, e.v)
    order = {v: i for i, v in enumerate(g.vertices)}
    groups: dict[Vertex, list[Vertex]] = {}
    for v in g.vertices:
        groups.setdefault(dsu.find(v), []).append(v)
    mapping = {}
    for members in groups.values():
        rep = min(members, key=order.__getitem__)
        for v in members:
            mapping[v] = rep
    vs = [v for v in g.vertices if mapping[v] == v]
    es = [(x, mapping[e.u], mapping[e.v], e.weight) for x, e in g.edges.items()]
    return MultiGraph(vs, es), mapping


def contract_edge(g: MultiGraph, label: str) -> MultiGraph:
    e = g.edges[label]
    return contract_vertex_set(g, {e.u, e.v})[0]


def is_minimal_cutset(g: MultiGraph, s: Iterable[str]) -> bool:
    """Whether ``s`` is E(A, B) for a partition with G[A] and G[B] connected.

    For a disconnected graph the test runs inside the component holding ``s``.
    """
    s = frozenset(s)
    if not s:
        return False
    for x in s:
        if x not in g.edges:
            raise KeyError(f"{x!r} is not an edge")
        if g.edges[x].is_loop:
            return False
    comps = components(g)
    home = [c for c in comps if g.edges[next(iter(s))].u in c]
    comp = home[0]
    if any(g.edges[x].u not in comp for x in s):
        return False
    sub = g.induced(comp)
    parts = components(sub, ignore=s)
    if len(parts) != 2:
        return False
    a = parts[0]
    return all((g.edges[x].u in a) != (g.edges[x].v in a) for x in s)


def minimal_cut_sides(g: MultiGraph, s: Iterable[str]) -> VertexCut | None:
    """The (A, B) realising a minimal cut-set, or None."""
    s = frozenset(s)
    if not is_minimal_cutset(g, s):
        return None
    comp = next(c for c in components(g) if g.edges[next(iter(s))].u in c)
    parts = components(g.induced(comp), ignore=s)
    return VertexCut(parts[0], parts[1])


def enumerate_minimal_cutsets(g: MultiGraph) -> list[frozenset[str]]:
    """All minimal cut-sets (bonds), by exhaustive bipartition of each component."""
    if len(g.vertices) > CUTSET_VERTEX_CAP:
        raise ValueError(f"cut enumeration is capped at {CUTSET_VERTEX_CAP} vertices")
    out: set[frozenset[str]] = set()
    for comp in components(g):
        if len(comp) < 2:
            continue
        order = [v for v in g.vertices if v in comp]
        first, rest = order[0], order[1:]
        for mask in range(1 << len(rest)):
            a = {first} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
            b = comp - a
            if not b:
                continue
            if is_connected_set(g, a) and is_connected_set(g, b):
                out.add(g.cut_edges(a))
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def enumerate_cycles(g: MultiGraph) -> list[frozenset[str]]:
    """All cycles (as edge-label sets) by depth-first search, loops included."""
    out: set[frozenset[str]] = set()
    for x, e in g.edges.items():
        if e.is_loop:
            out.add(frozenset([x]))
    order = {v: i for i, v in enumerate(g.vertices)}
    for s in g.vertices:
        # cycles whose lowest vertex is s
        def dfs(x, used_v, used_e):
            for l in g.incident(x):
                e = g.edges[l]
                if e.is_loop or l in used_e:
                    continue
                y = e.other(x)
                if y == s and len(used_e) >= 1:
                    out.add(frozenset(used_e | {l}))
                elif y not in used_v and order[y] > order[s]:
                    used_v.add(y)
                    used_e.add(l)
                    dfs(y, used_v, used_e)
                    used_v.discard(y)
                    used_e.discard(l)

        dfs(s, {s}, set())
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def cycle_matroid(g: MultiGraph) -> BinaryMatroid:
    """Vertex-edge incidence matrix over GF(2); loops give zero columns."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    cols = []
    for e in g.edges.values():
        cols.append(0 if e.is_loop else (1 << idx[e.u]) | (1 << idx[e.v]))
    return BinaryMatroid.from_columns(cols, len(g.vertices), g.labels)


def bond_matroid(g: MultiGraph) -> BinaryMatroid:
    """Cographic matroid: circuits are the minimal cut-sets."""
    return dual(cycle_matroid(g))


def subdivide(g: MultiGraph, label: str, new_vertex: Vertex, new_label: str) -> MultiGraph:
    e = g.edges[label]
    es = [t for t in g.edge_list() if t[0] != label]
    es += [(label, e.u, new_vertex, e.weight), (new_label, new_vertex, e.v, e.weight)]
    return MultiGraph(list(g.vertices) + [new_vertex], es)


def dijkstra_path(
    g: MultiGraph, source: Vertex, target: Vertex, banned_edges: Iterable[str] = ()
) -> tuple[int, list[str]] | None:
    """Cheapest source-target path as (weight, edge labels)."""
    import heapq

    banned = set(banned_edges)
    dist = {source: 0}
    prev: dict[Vertex, tuple[Vertex, str]] = {}
    heap = [(0, 0, source)]
    tick = 1
    done = set()
    while heap:
        d, _, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        if x == target:
            break
        for l in g.incident(x):
            if l in banned:
                continue
            e = g.edges[l]
            if e.is_loop:
                continue
            y = e.other(x)
            nd = d + e.weight
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                prev[y] = (x, l)
                heapq.heappush(heap, (nd, tick, y))
                tick += 1
    if target not in done:
        return None
    path = []
    x = target
    while x != source:
        x, l = prev[x]
        path.append(l)
    return dist[target], path[::-1]


def iter_subsets(items: Sequence, max_size: int) -> Iterator[tuple]:
    for r in range(min(max_size, len(items)) + 1):
        yield from combinations(items, r)
