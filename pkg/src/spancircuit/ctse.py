"""Cycle through specified edges.

Find a cycle containing every terminal edge with ``w(C - T) <= k``.  Terminal
paths are dissolved into single edges; one terminal edge is a shortest-path
question; otherwise color coding joins the terminal edges with colorful paths.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import MultiGraph, Vertex, components, dijkstra_path

INF = math.inf


@dataclass(frozen=True, eq=False)
class CtseInstance:
    graph: MultiGraph
    terminals: frozenset[str]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        for x in self.terminals:
            if x not in self.graph.edges:
                raise KeyError(f"terminal {x!r} is not an edge")


def is_cycle_edges(g: MultiGraph, edges: Iterable[str]) -> bool:
    """Whether the edge set forms one cycle (a loop, two parallel edges, ...)."""
    edges = frozenset(edges)
    if not edges:
        return False
    deg: dict = {}
    for x in edges:
        e = g.edges[x]
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    sub = MultiGraph(list(deg), [(x, g.edges[x].u, g.edges[x].v) for x in edges])
    return len(components(sub)) == 1


def is_solution(inst: CtseInstance, cycle: Iterable[str]) -> bool:
    cycle = frozenset(cycle)
    if not inst.terminals <= cycle or not is_cycle_edges(inst.graph, cycle):
        return False
    return inst.graph.total_weight(cycle - inst.terminals) <= inst.k


def _shortest_cycle(g: MultiGraph, banned: set) -> tuple[int, frozenset[str]] | None:
    best = None
    for x, e in g.edges.items():
        if x in banned:
            continue
        if e.is_loop:
            cand = (e.weight, frozenset([x]))
        else:
            p = dijkstra_path(g, e.u, e.v, banned_edges=banned | {x})
            if p is None:
                continue
            cand = (e.weight + p[0], frozenset([x, *p[1]]))
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _terminal_paths_ok(g: MultiGraph, t: frozenset[str]) -> bool:
    deg: dict = {}
    for x in t:
        e = g.edges[x]
        if e.is_loop:
            return False
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    if any(d > 2 for d in deg.values()):
        return False
    sub = MultiGraph(list(deg), [(x, g.edges[x].u, g.edges[x].v) for x in t])
    # a forest with maximum degree 2 is a union of paths
    return len(t) == len(deg) - len(components(sub))


def dissolve(g: MultiGraph, t: frozenset[str]):
    """Replace each terminal path by one terminal edge.

    Returns (graph, terminals, expansion) where expansion maps a new edge to
    the original terminal labels it stands for.
    """
    expand = {x: (x,) for x in t}
    t = set(t)
    counter = 0
    while True:
        hit = None
        for v in g.vertices:
            inc = [x for x in g.incident(v) if x in t]
            if len(inc) == 2:
                hit = (v, inc)
                break
        if hit is None:
            break
        v, (a, b) = hit
        x, y = g.edges[a].other(v), g.edges[b].other(v)
        name = f"~{counter}"
        while name in g.edges:
            counter += 1
            name = f"~{counter}"
        counter += 1
        g = g.delete_vertices([v]).with_edges([(name, x, y, 1)])
        t -= {a, b}
        t.add(name)
        expand[name] = expand.pop(a) + expand.pop(b)
    return g, frozenset(t), expand


def _cheapest_edges(g: MultiGraph, t: frozenset[str]) -> dict:
    best: dict = {}
    for x, e in g.edges.items():
        if x in t or e.is_loop:
            continue
        for a, b in ((e.u, e.v), (e.v, e.u)):
            cur = best.get((a, b))
            if cur is None or e.weight < g.edges[cur].weight:
                best[(a, b)] = x
    return best


@dataclass
class PathTables:
    """Colorful path values s(X, u, z) with parent pointers."""

    value: dict
    parent: dict
    pair_of: dict
    coloring: dict
    edges: dict
    graph: MultiGraph


def dp_paths(g: MultiGraph, coloring: dict, pairs: Sequence[tuple[Vertex, Vertex]], h: int,
             t: frozenset[str]) -> PathTables:
    """Cheapest u-z paths whose inner vertices are colored with distinct colors from X.

    ``coloring`` maps usable vertices outside the terminal endpoints to colors
    ``0..h-1``; uncolored vertices are unusable.  Keys are ``(X, u, z)`` with
    ``X`` a color bitmask.
    """
    edges = _cheapest_edges(g, t)
    pair_of = {}
    for i, (a, b) in enumerate(pairs):
        pair_of[a] = i
        pair_of[b] = i
    ends = list(pair_of)
    off = [v for v in g.vertices if v in coloring]
    nbrs: dict = {v: [] for v in g.vertices}
    for (a, b), x in edges.items():
        nbrs[b].append(a)
    value: dict = {}
    parent: dict = {}
    order = sorted(range(1 << h), key=lambda m: bin(m).count("1"))
    for u in ends:
        for mask in order:
            value[(mask, u, u)] = 0
            for z in off:
                c = coloring[z]
                best, arg = INF, None
                if mask >> c & 1:
                    sub = mask & ~(1 << c)
                    for x in nbrs[z]:
                        if x != u and x not in coloring:
                            continue
                        cand = value.get((sub, u, x), INF)
                        if cand < INF:
                            cand += g.edges[edges[(x, z)]].weight
                            if cand < best:
                                best, arg = cand, x
                value[(mask, u, z)] = best
                parent[(mask, u, z)] = (sub if arg is not None else None, arg)
            for z in ends:
                if pair_of[z] == pair_of[u]:
                    continue
                best, arg = INF, None
                for x in nbrs[z]:
                    if x != u and x not in coloring:
                        continue
                    cand = value.get((mask, u, x), INF)
                    if cand < INF:
                        cand += g.edges[edges[(x, z)]].weight
                        if cand < best:
                            best, arg = cand, x
                value[(mask, u, z)] = best
                parent[(mask, u, z)] = (mask, arg)
    return PathTables(value, parent, pair_of, coloring, edges, g)


def _unwind_path(tab: PathTables, mask: int, u, z) -> list[str]:
    out = []
    while z != u:
        sub, x = tab.parent[(mask, u, z)]
        out.append(tab.edges[(x, z)])
        mask, z = sub, x
    return out[::-1]


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            break
        sub = (sub - 1) & mask


def dp_stitch(tab: PathTables, pairs: Sequence[tuple[Vertex, Vertex]], h: int) -> tuple[float, list[str]]:
    """Cheapest colorful cycle through all terminal pairs, as (extra weight, path edges)."""
    r = len(pairs)
    full = (1 << h) - 1
    s = tab.value
    x1, y1 = pairs[0]
    # c'(X, Y, v): from y1 through the pairs in Y, ending at v
    memo: dict = {}

    def c(mask: int, ymask: int, v):
        key = (mask, ymask, v)
        if key in memo:
            return memo[key][0]
        if ymask == 0:
            val = s.get((mask, y1, v), INF)
            memo[key] = (val, None)
            return val
        best, arg = INF, None
        for j in range(1, r):
            if not ymask >> j & 1:
                continue
            for enter, leave in (pairs[j], pairs[j][::-1]):
                for part in _submasks(mask):
                    tail = s.get((part, leave, v), INF)
                    if tail == INF:
                        continue
                    head = c(mask & ~part, ymask & ~(1 << j), enter)
                    if head + tail < best:
                        best, arg = head + tail, (j, enter, leave, part)
        memo[key] = (best, arg)
        return best

    all_y = ((1 << r) - 1) & ~1
    best, arg = INF, None
    for j in range(1, r):
        for enter, leave in (pairs[j], pairs[j][::-1]):
            for part in _submasks(full):
                tail = s.get((part, leave, x1), INF)
                if tail == INF:
                    continue
                head = c(full & ~part, all_y & ~(1 << j), enter)
                if head + tail < best:
                    best, arg = head + tail, (j, enter, leave, part)
    if arg is None:
        return INF, []
    path: list[str] = []
    j, enter, leave, part = arg
    path += _unwind_path(tab, part, leave, x1)
    mask, ymask, v = full & ~part, all_y & ~(1 << j), enter
    while ymask:
        _, (j, enter, leave, part) = memo[(mask, ymask, v)]
        path += _unwind_path(tab, part, leave, v)
        mask, ymask, v = mask & ~part, ymask & ~(1 << j), enter
    path += _unwind_path(tab, mask, y1, v)
    return best, path


def _colorings(off: list, h: int, mode: str, rng: random.Random | None, trials: int | None):
    if h <= 0:
        yield {}
        return
    if h >= len(off):
        yield {v: i for i, v in enumerate(off)}
        return
    if mode == "randomized":
        n = trials if trials is not None else math.ceil(20 * math.e ** h)
        for _ in range(n):
            yield {v: rng.randrange(h) for v in off}
        return
    for chosen in combinations(off, h):
        yield {v: i for i, v in enumerate(chosen)}


def solve_ctse(
    inst: CtseInstance, *, mode: str = "derandomized", seed: int | None = None,
    trials: int | None = None,
) -> frozenset[str] | None:
    """Cheapest cycle through all terminal edges within budget, or None."""
    if mode not in ("derandomized", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")
    g, t, k = inst.graph, inst.terminals, inst.k
    if not t:
        found = _shortest_cycle(g, set())
        return found[1] if found is not None and found[0] <= k else None
    if is_cycle_edges(g, t):
        return t
    if not _terminal_paths_ok(g, t):
        return None
    zero = any(e.weight == 0 for x, e in g.edges.items() if x not in t)
    g2, t2, expand = dissolve(g, t)
    r = len(t2)
    if r > k and not zero:
        return None
    if r == 1:
        (x,) = t2
        e = g2.edges[x]
        p = dijkstra_path(g2, e.u, e.v, banned_edges={x})
        if p is None or p[0] > k:
            return None
        return _lift(expand, t2, p[1], inst)
    pairs = [(g2.edges[x].u, g2.edges[x].v) for x in sorted(t2)]
    ends = {v for pr in pairs for v in pr}
    off = [v for v in g2.vertices if v not in ends]
    h = len(off) if zero else min(k - r, len(off))
    if h < 0:
        return None
    rng = random.Random(seed) if mode == "randomized" else None
    best: tuple[float, list[str]] | None = None
    for coloring in _colorings(off, h, mode, rng, trials):
        tab = dp_paths(g2, coloring, pairs, h, t2)
        val, path = dp_stitch(tab, pairs, h)
        if val <= k and (best is None or val < best[0]):
            best = (val, path)
    if best is None:
        return None
    return _lift(expand, t2, best[1], inst)


def _lift(expand: dict, t2: frozenset[str], path: list[str], inst: CtseInstance) -> frozenset[str]:
    out = set(path)
    for x in t2:
        out.update(expand[x])
    out = frozenset(out)
    if not is_solution(inst, out):
        raise AssertionError("assembled cycle is not a solution")
    return out
