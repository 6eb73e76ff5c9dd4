"""Extended minimum weight cut with terminal edges.

Given a connected multigraph, terminal edges ``T``, vertex sets ``R1``, ``R2``
and a budget ``k``, find a minimal cut-set ``C`` containing ``T`` with
``w(C - T) <= k`` whose two sides separate ``R1`` from ``R2``.

The solver follows the recursive-understanding scheme: find a good
separation, solve the smaller side for every border contraction, contract
the edges no optimal partial solution uses, and repeat.  Unbreakable graphs
are handled by an initial cut (through odd cycle transversal) refined by
random separation.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .graph import (
    MultiGraph,
    VertexCut,
    Vertex,
    components,
    contract_edges,
    contract_vertex_set,
    is_connected,
    is_connected_set,
)

log = logging.getLogger(__name__)


class InvariantError(AssertionError):
    """An internal consistency check failed."""


@dataclass(frozen=True, eq=False)
class EmwcInstance:
    graph: MultiGraph
    terminals: frozenset[str]
    r1: frozenset = frozenset()
    r2: frozenset = frozenset()
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "r1", frozenset(self.r1))
        object.__setattr__(self, "r2", frozenset(self.r2))
        for x in self.terminals:
            if x not in self.graph.edges:
                raise KeyError(f"terminal {x!r} is not an edge")
        vs = set(self.graph.vertices)
        if not (self.r1 | self.r2) <= vs:
            raise KeyError("R1/R2 mention unknown vertices")
        if self.k < 0:
            raise ValueError("negative budget")


@dataclass(frozen=True, eq=False)
class BorderInstance(EmwcInstance):
    border: frozenset = frozenset()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "border", frozenset(self.border))
        if not self.border <= set(self.graph.vertices):
            raise KeyError("border terminals must be vertices")


@dataclass(frozen=True)
class ParamPair:
    """Separation parameters: at most ``p`` cut edges, both sides above ``q`` vertices."""

    p: int
    q: int

    @classmethod
    def default(cls, k: int) -> "ParamPair":
        if k <= 0:
            return cls(0, 1)
        # k^2 * 2^(4k + 4k log 4k) + 4k + 1, written without logarithms
        q = k * k * 2 ** (4 * k) * (4 * k) ** (4 * k) + 4 * k + 1
        return cls(2 * k, q)


def extra_weight(g: MultiGraph, cut: Iterable[str], terminals: Iterable[str]) -> int:
    t = set(terminals)
    return sum(g.edges[x].weight for x in cut if x not in t)


def terminal_cut_sides(inst: EmwcInstance, cut: Iterable[str]) -> VertexCut | None:
    """Sides (X1 holding R1, X2 holding R2) if ``cut`` is an (R1,R2)-terminal cut-set."""
    g = inst.graph
    cut = frozenset(cut)
    if not inst.terminals <= cut or not cut:
        return None
    if any(g.edges[x].is_loop for x in cut):
        return None
    parts = components(g, ignore=cut)
    if len(parts) != 2:
        return None
    a, b = parts
    if not all((g.edges[x].u in a) != (g.edges[x].v in a) for x in cut):
        return None
    if inst.r1 <= a and inst.r2 <= b:
        return VertexCut(a, b)
    if inst.r1 <= b and inst.r2 <= a:
        return VertexCut(b, a)
    return None


def is_solution(inst: EmwcInstance, cut: Iterable[str]) -> bool:
    cut = frozenset(cut)
    if terminal_cut_sides(inst, cut) is None:
        return False
    return extra_weight(inst.graph, cut, inst.terminals) <= inst.k


def _trivially_no(inst: EmwcInstance) -> bool:
    if inst.r1 & inst.r2:
        return True
    return any(inst.graph.edges[x].is_loop for x in inst.terminals)


def brute_force(inst: EmwcInstance) -> frozenset[str] | None:
    """Cheapest solution by trying every set of non-terminal edges within budget."""
    if _trivially_no(inst):
        return None
    g = inst.graph
    pool = sorted(
        (x for x, e in g.edges.items() if x not in inst.terminals and not e.is_loop),
        key=lambda x: g.edges[x].weight,
    )
    found: list[tuple[int, frozenset[str]]] = []

    def grow(i: int, chosen: list[str], weight: int):
        found.append((weight, frozenset(chosen)))
        for j in range(i, len(pool)):
            w = g.edges[pool[j]].weight
            if weight + w > inst.k:
                break
            chosen.append(pool[j])
            grow(j + 1, chosen, weight + w)
            chosen.pop()

    grow(0, [], 0)
    found.sort(key=lambda t: (t[0], len(t[1])))
    for _, extra in found:
        cut = inst.terminals | extra
        if terminal_cut_sides(inst, cut) is not None:
            return cut
    return None


# -- odd cycle transversal -------------------------------------------------


def _two_color(g: MultiGraph, removed: set) -> dict | None:
    color: dict = {}
    for s in g.vertices:
        if s in removed or s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for l in g.incident(x):
                e = g.edges[l]
                y = e.other(x)
                if y in removed:
                    continue
                if e.is_loop:
                    return None
                if y not in color:
                    color[y] = color[x] ^ 1
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def is_bipartite_after(g: MultiGraph, removed: Iterable[Vertex]) -> bool:
    return _two_color(g, set(removed)) is not None


def _min_vertex_cut(g: MultiGraph, skip: set, sources: set, sinks: set, limit: int) -> set | None:
    """Smallest vertex set (terminals deletable) separating sources from sinks, if at most ``limit``."""
    # unit vertex capacities via in/out copies
    cap: dict = {}
    adj: dict = {}

    def arc(a, b, c):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)

    big = limit + 5
    live = [v for v in g.vertices if v not in skip]
    for v in live:
        arc(("i", v), ("o", v), 1)
        if v in sources:
            arc("S", ("i", v), big)
        if v in sinks:
            arc(("o", v), "T", big)
    for e in g.edges.values():
        if e.u in skip or e.v in skip or e.is_loop:
            continue
        arc(("o", e.u), ("i", e.v), big)
        arc(("o", e.v), ("i", e.u), big)
    if "S" not in adj or "T" not in adj:
        return set()
    flow = 0
    while True:
        prev = {"S": None}
        queue = deque(["S"])
        while queue and "T" not in prev:
            a = queue.popleft()
            for b in adj[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if "T" not in prev:
            break
        flow += 1
        if flow > limit:
            return None
        b = "T"
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
    reach = set(prev)
    return {v for v in live if ("i", v) in reach and ("o", v) not in reach}


def _compress(g: MultiGraph, sol: list, k: int) -> set | None:
    rest_removed = set(sol)
    color = _two_color(g, rest_removed)
    assert color is not None
    for roles in product((0, 1, 2), repeat=len(sol)):
        deleted = {v for v, r in zip(sol, roles) if r == 0}
        if len(deleted) > k:
            continue
        left = {v for v, r in zip(sol, roles) if r == 1}
        right = {v for v, r in zip(sol, roles) if r == 2}
        bad = False
        for e in g.edges.values():
            if (e.u in left and e.v in left) or (e.u in right and e.v in right):
                bad = True
                break
        if bad:
            continue
        flip, keep = set(), set()
        for v in left:
            for y in g.neighbors(v):
                if y in color:
                    # y must end on the right (1)
                    (keep if color[y] == 1 else flip).add(y)
        for v in right:
            for y in g.neighbors(v):
                if y in color:
                    (keep if color[y] == 0 else flip).add(y)
        cut = _min_vertex_cut(g, rest_removed, flip, keep, k - len(deleted))
        if cut is not None:
            return deleted | cut
    return None


def odd_cycle_transversal(g: MultiGraph, k: int) -> frozenset | None:
    """A vertex set of size at most ``k`` whose removal leaves ``g`` bipartite (iterative compression)."""
    forced = {e.u for e in g.edges.values() if e.is_loop}
    if len(forced) > k:
        return None
    h = g.delete_vertices(forced)
    budget = k - len(forced)
    sol: set = set()
    added: list = []
    for v in h.vertices:
        added.append(v)
        sub = h.induced(added)
        if is_bipartite_after(sub, sol):
            continue
        if len(sol) + 1 <= budget:
            sol = sol | {v}
            continue
        new = _compress(sub, sorted(sol | {v}, key=added.index), budget)
        if new is None:
            return None
        sol = new
    return frozenset(sol | forced)


# -- initial cut ------------------------------------------------------------


def _oct_reduction(inst: EmwcInstance):
    g, k = inst.graph, inst.k
    twins = {v: [("v", v, i) for i in range(k + 1)] for v in g.vertices}
    vs = [t for v in g.vertices for t in twins[v]]
    es = []
    n = 0
    seen_pairs = set()
    for x, e in g.edges.items():
        if e.is_loop:
            continue
        if x in inst.terminals:
            pair = frozenset((e.u, e.v))
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            for a in twins[e.u]:
                for b in twins[e.v]:
                    es.append((f"t{n}", a, b))
                    n += 1
        else:
            for j in range(min(e.weight, k + 1)):
                z = ("z", x, j)
                vs.append(z)
                for a in twins[e.u] + twins[e.v]:
                    es.append((f"s{n}", a, z))
                    n += 1
    return MultiGraph(vs, es), twins


def initial_cut(inst: EmwcInstance) -> VertexCut | None:
    """A cut (A, B) with T inside E(A, B) and w(E(A, B) - T) <= k, or None if there is none."""
    g = inst.graph
    if any(g.edges[x].is_loop for x in inst.terminals):
        return None
    h, twins = _oct_reduction(inst)
    s = odd_cycle_transversal(h, inst.k)
    if s is None:
        return None
    s = set(s)
    for v in sorted(s, key=str):
        if is_bipartite_after(h, s - {v}):
            s.discard(v)
    color = _two_color(h, s)
    a = frozenset(v for v in g.vertices if color.get(twins[v][0], 0) == 0)
    b = frozenset(g.vertices) - a
    cut = VertexCut(a, b)
    edges = cut.edges(g)
    if not inst.terminals <= edges or extra_weight(g, edges, inst.terminals) > inst.k:
        raise InvariantError("decoded initial cut violates its guarantee")
    return cut


# -- separations ----------------------------------------------------------


def good_separation(g: MultiGraph, q: int, p: int) -> VertexCut | None:
    """A cut with both sides connected, above ``q`` vertices, and at most ``p`` edges.

    None certifies that ``g`` is (pq, p)-unbreakable.
    """
    n = len(g.vertices)
    if n < 2 * (q + 1):
        return None
    verts = list(g.vertices)
    plain = [x for x, e in g.edges.items() if not e.is_loop]
    by_edges = sum(math.comb(len(plain), i) for i in range(p + 1))
    if n <= 20 and (1 << (n - 1)) <= by_edges:
        first, rest = verts[0], verts[1:]
        for mask in range(1 << len(rest)):
            a = {first} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
            if len(a) <= q or n - len(a) <= q:
                continue
            if len(g.cut_edges(a)) > p:
                continue
            b = set(verts) - a
            if is_connected_set(g, a) and is_connected_set(g, b):
                return VertexCut(frozenset(a), frozenset(b))
        return None
    for r in range(1, p + 1):
        for drop in combinations(plain, r):
            parts = components(g, ignore=drop)
            if len(parts) != 2:
                continue
            a, b = parts
            if len(a) > q and len(b) > q and len(g.cut_edges(a)) <= p:
                return VertexCut(a, b)
    return None


def separation_family(
    universe: Sequence, a: int, b: int, *, rng: random.Random | None = None,
    trials: int = 0, red_probability: float = 0.5,
) -> list[frozenset]:
    """Subsets S such that any disjoint A, B (|A| <= a, |B| <= b) has some S with A in S, B outside.

    Deterministic mode uses either all complements of sets of size <= b or all
    sets of size <= a, whichever list is shorter.  With ``rng`` it returns
    ``trials`` random subsets instead (no coverage guarantee).
    """
    items = list(universe)
    if rng is not None:
        return [frozenset(x for x in items if rng.random() < red_probability) for _ in range(trials)]
    n = len(items)
    a, b = min(a, n), min(b, n)
    full = frozenset(items)
    by_b = sum(math.comb(n, i) for i in range(b + 1))
    by_a = sum(math.comb(n, i) for i in range(a + 1))
    out = []
    if by_b <= by_a:
        for r in range(b + 1):
            for drop in combinations(items, r):
                out.append(full - frozenset(drop))
    else:
        for r in range(a + 1):
            for keep in combinations(items, r):
                out.append(frozenset(keep))
    return out


# -- unbreakable case -------------------------------------------------------


def _red_components(g: MultiGraph, red: set) -> list[set]:
    out, seen = [], set()
    for s in g.vertices:
        if s not in red or s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in red and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(comp)
    return out


def _refine_coloring(inst: EmwcInstance, cut: VertexCut, red: set, pq: int) -> list[set]:
    g = inst.graph
    red = set(red)
    # T-reduction
    changed = True
    while changed:
        changed = False
        for comp in _red_components(g, red):
            for x in inst.terminals:
                e = g.edges[x]
                if (e.u in comp and e.v not in red) or (e.v in comp and e.u not in red):
                    red -= comp
                    changed = True
                    break
            if changed:
                break
    side_a = cut.side_a
    out = []
    for comp in _red_components(g, red):
        crossing = False
        for x in comp:
            for l in g.incident(x):
                y = g.edges[l].other(x)
                if y not in comp and ((x in side_a) != (y in side_a)):
                    crossing = True
                    break
            if crossing:
                break
        if not crossing:
            # flipping such a component isolates it on its new side; that is only
            # impossible when the receiving side cannot be swallowed by the flip
            in_a = bool(comp & side_a)
            in_b = bool(comp - side_a)
            safe = (not in_a or len(cut.side_b) > pq) and (not in_b or len(side_a) > pq)
            if safe:
                continue
        out.append(comp)
    return out


def _check_mode(mode: str) -> None:
    if mode not in ("derandomized", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")


def solve_unbreakable(
    inst: EmwcInstance, params: ParamPair | None = None, *, mode: str = "derandomized",
    seed: int | None = None, trials: int | None = None,
) -> frozenset[str] | None:
    """Cheapest solution, assuming the graph is (pq, p)-unbreakable."""
    _check_mode(mode)
    params = params or ParamPair.default(inst.k)
    if _trivially_no(inst):
        return None
    g, k = inst.graph, inst.k
    pq = params.p * params.q
    if k == 0 or len(g.vertices) <= pq:
        return brute_force(inst)
    cut = initial_cut(inst)
    if cut is None:
        return None
    if mode == "randomized":
        rng = random.Random(seed)
        if trials is None:
            trials = min(20000, 8 * 4 * pq ** (2 * k))
        family = separation_family(g.vertices, pq, params.p, rng=rng, trials=trials,
                                   red_probability=1 - 1 / pq)
    else:
        family = separation_family(g.vertices, pq, params.p)
    best: tuple[int, frozenset[str]] | None = None
    tried: set[frozenset] = set()
    for red in family:
        comps = _refine_coloring(inst, cut, set(red), pq)
        for r in range(len(comps) + 1):
            for pick in combinations(range(len(comps)), r):
                flip = frozenset().union(*(comps[i] for i in pick)) if pick else frozenset()
                if flip in tried:
                    continue
                tried.add(flip)
                side = cut.side_a ^ flip
                cand = g.cut_edges(side)
                if not is_solution(inst, cand):
                    continue
                w = extra_weight(g, cand, inst.terminals)
                if best is None or w < best[0]:
                    best = (w, cand)
    return None if best is None else best[1]


# -- border instances -------------------------------------------------------


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


Key = frozenset  # of (block, side) pairs


def border_keys(border: Iterable) -> Iterator[Key]:
    for part in set_partitions(list(border)):
        blocks = [frozenset(b) for b in part]
        for sides in product((1, 2), repeat=len(blocks)):
            yield frozenset(zip(blocks, sides))


def border_contraction(inst: EmwcInstance, key: Key) -> EmwcInstance | None:
    """Contract every block of the key and add it to the requested R side."""
    g = inst.graph
    r1, r2 = set(inst.r1), set(inst.r2)
    for block, side in key:
        g, mapping = contract_vertex_set(g, block)
        r1 = {mapping.get(v, v) for v in r1}
        r2 = {mapping.get(v, v) for v in r2}
        (r1 if side == 1 else r2).add(mapping[next(iter(block))])
    if r1 & r2:
        return None
    return EmwcInstance(g, inst.terminals, frozenset(r1), frozenset(r2), inst.k)


@dataclass
class BorderOutput:
    """Cheapest witness (or None) for every border contraction."""

    entries: dict[Key, frozenset[str] | None] = field(default_factory=dict)
    k: int = 0
    graph: MultiGraph | None = None
    terminals: frozenset[str] = frozenset()

    def witness(self, key: Key, budget: int | None = None) -> frozenset[str] | None:
        c = self.entries.get(key)
        if c is None:
            return None
        budget = self.k if budget is None else budget
        return c if extra_weight(self.graph, c, self.terminals) <= budget else None

    def items(self):
        """Yield ((key, budget), witness) for every budget 0..k."""
        for key in self.entries:
            for kk in range(self.k + 1):
                yield (key, kk), self.witness(key, kk)

    def union(self) -> frozenset[str]:
        out: set[str] = set()
        for c in self.entries.values():
            if c is not None:
                out |= c
        return frozenset(out)


def _stopping_rule(inst: BorderInstance) -> bool:
    parts = components(inst.graph, ignore=inst.terminals)
    plain = sum(1 for c in parts if not c & inst.border)
    touched = sum(1 for c in parts if c & inst.border)
    return plain + min(touched, 1) >= 3


def _solve_each(inst: BorderInstance, solver) -> BorderOutput:
    out = BorderOutput(k=inst.k, graph=inst.graph, terminals=inst.terminals)
    for key in border_keys(inst.border):
        sub = border_contraction(inst, key)
        out.entries[key] = None if sub is None else solver(sub)
    return out


def border_solve(
    inst: BorderInstance, params: ParamPair | None = None, *, mode: str = "derandomized",
    seed: int | None = None, _depth: int = 0,
) -> BorderOutput:
    """Solve every border contraction of ``inst`` at once."""
    params = params or ParamPair.default(inst.k)
    g = inst.graph
    if not is_connected(g):
        raise ValueError("border instances need a connected graph")
    if _stopping_rule(inst):
        out = BorderOutput(k=inst.k, graph=g, terminals=inst.terminals)
        for key in border_keys(inst.border):
            out.entries[key] = None
        return out

    def direct(sub: EmwcInstance):
        return solve_unbreakable(sub, params, mode=mode, seed=seed)

    sep = good_separation(g, params.q, params.p)
    if sep is None:
        return _finish(inst, _solve_each(inst, direct))
    u, w = sep.side_a, sep.side_b
    if len(inst.border & u) > params.p or (len(inst.border & w) <= params.p and len(w) < len(u)):
        u, w = w, u
    gu = g.induced(u)
    crossing_ends = {v for e in g.edges.values() for v in (e.u, e.v)
                     if v in u and ((e.u in u) != (e.v in u))}
    sub = BorderInstance(
        gu,
        frozenset(x for x in inst.terminals if x in gu.edges),
        inst.r1 & u,
        inst.r2 & u,
        inst.k,
        border=(inst.border & u) | crossing_ends,
    )
    partial = border_solve(sub, params, mode=mode, seed=seed, _depth=_depth + 1)
    keep = partial.union() | inst.terminals
    g2, alpha = contract_edges(g, [x for x in gu.edges if x not in keep])
    if len(g2.vertices) >= len(g.vertices):
        log.debug("separation did not shrink the graph at depth %d; solving directly", _depth)
        return _finish(inst, _solve_each(inst, brute_force))
    shrunk = BorderInstance(
        g2,
        inst.terminals,
        frozenset(alpha[v] for v in inst.r1),
        frozenset(alpha[v] for v in inst.r2),
        inst.k,
        border=frozenset(alpha[v] for v in inst.border),
    )
    inner = border_solve(shrunk, params, mode=mode, seed=seed, _depth=_depth + 1)
    out = BorderOutput(k=inst.k, graph=g, terminals=inst.terminals)
    for key in border_keys(inst.border):
        out.entries[key] = inner.entries.get(_image_key(key, alpha)) if _image_key(key, alpha) is not None else None
    return _finish(inst, out)


def _image_key(key: Key, alpha: dict) -> Key | None:
    blocks = [(frozenset(alpha[v] for v in block), side) for block, side in key]
    # merge blocks whose images meet
    merged: list[tuple[set, int]] = []
    for img, side in blocks:
        img = set(img)
        hit = [i for i, (m, _) in enumerate(merged) if m & img]
        for i in hit:
            if merged[i][1] != side:
                return None
        for i in sorted(hit, reverse=True):
            img |= merged.pop(i)[0]
        merged.append((img, side))
    return frozenset((frozenset(m), s) for m, s in merged)


def _finish(inst: BorderInstance, out: BorderOutput) -> BorderOutput:
    for key, c in out.entries.items():
        if c is None:
            continue
        sub = border_contraction(inst, key)
        if sub is None or not is_solution(sub, c):
            raise InvariantError("border entry is not a solution of its contraction")
    return out


def solve_emwc(
    inst: EmwcInstance, params: ParamPair | None = None, *, mode: str = "derandomized",
    seed: int | None = None,
) -> frozenset[str] | None:
    """Cheapest (R1, R2)-terminal cut-set with w(C - T) <= k, or None."""
    _check_mode(mode)
    if not is_connected(inst.graph):
        raise ValueError("the input graph must be connected")
    if _trivially_no(inst):
        return None
    b = BorderInstance(inst.graph, inst.terminals, inst.r1, inst.r2, inst.k, border=frozenset())
    out = border_solve(b, params, mode=mode, seed=seed)
    c = out.witness(frozenset())
    if c is not None and not is_solution(inst, c):
        raise InvariantError("returned cut is not a solution")
    return c
