"""Solvers for circuit constraints on a single graphic, cographic or R10-derived node."""

from __future__ import annotations

from itertools import product
from typing import Iterator

from ..ctse import CtseInstance, solve_ctse
from ..decomp import BasicNode
from ..emwc import EmwcInstance, solve_emwc
from ..gf2 import bits, popcount
from ..graph import MultiGraph, components, contract_edges, is_connected_set
from .constraint import NO, CircuitConstraint, Outcome

R10_ELEMENT_CAP = 40


def _guesses(cc: CircuitConstraint) -> Iterator[tuple[frozenset[str], int]]:
    """Every choice of one menu entry per constraint set: (union of choices, their weight)."""
    menus = [cc.menu.get(x, ()) for x in cc.xs]
    for pick in product(*menus):
        chosen = frozenset().union(*pick) if pick else frozenset()
        cost = sum(cc.xweights.get(x, {}).get(y, 0) for x, y in zip(cc.xs, pick)) if cc.weighted else 0
        if cc.weighted and cost > cc.k:
            continue
        yield chosen, cost


def _too_many_sets(cc: CircuitConstraint) -> bool:
    if not cc.weighted or len(cc.xs) <= cc.k:
        return False
    # only a shortcut when every menu entry costs at least one
    return all(v >= 1 for x in cc.xs for v in cc.xweights.get(x, {}).values()) and all(
        y in cc.xweights.get(x, {}) for x in cc.xs for y in cc.menu.get(x, ())
    )


def _best(cc: CircuitConstraint, found) -> Outcome:
    best = None
    for c in found:
        if c is None or not cc.is_feasible(c):
            continue
        w = cc.omega(c) if cc.weighted else len(c)
        if best is None or w < best.weight:
            best = Outcome(c, w)
    return best or NO


def _graph(cc: CircuitConstraint) -> MultiGraph:
    g = cc.matroid.graph
    if cc.weights is not None:
        g = g.with_weights({x: cc.weights[x] for x in g.edges if x in cc.weights})
    return g


def _triangle_apex(g: MultiGraph, zset: frozenset[str], t: str):
    a, b = sorted(zset - {t})
    ea, eb = g.edges[a], g.edges[b]
    common = {ea.u, ea.v} & {eb.u, eb.v}
    et = g.edges[t]
    common -= {et.u, et.v}
    if len(common) != 1:
        raise ValueError("z is not a triangle of the graph")
    return common.pop()


# -- weighted -----------------------------------------------------------------


def ewmsc_r10(cc: CircuitConstraint) -> Outcome:
    """Brute force after dropping dominated parallel non-terminals."""
    if cc.xs or cc.z is not None:
        return NO
    m = cc.binary
    keep: dict[int, str] = {}
    for j, x in enumerate(m.labels):
        if x in cc.terminals:
            continue
        col = m.cols[j]
        cur = keep.get(col)
        if cur is None or cc.weight_of(x) < cc.weight_of(cur):
            keep[col] = x
    free = sorted(keep.values())
    tmask = m.mask(cc.terminals)
    found = []
    for sel in range(1 << len(free)):
        chosen = [free[i] for i in bits(sel)]
        if sum(cc.weight_of(x) for x in chosen) > cc.k:
            continue
        cmask = tmask | m.mask(chosen)
        if m.is_circuit_mask(cmask):
            found.append(m.unmask(cmask))
    return _best(cc, found)


def ewmsc_graphic(cc: CircuitConstraint) -> Outcome:
    """Guess the menu choices, delete the rest, and look for a cheap cycle through the terminals."""
    if _too_many_sets(cc):
        return NO
    g = _graph(cc)
    cov = cc.covered
    found = []
    for chosen, cost in _guesses(cc):
        h = g.delete_edges(cov - chosen)
        t = cc.terminals | chosen
        budget = cc.k - cost
        if cc.z is not None:
            zset, tip = cc.z
            apex = _triangle_apex(g, zset, tip)
            if any(apex in (h.edges[x].u, h.edges[x].v) for x in t):
                continue
            h = h.delete_vertices([apex])
            t = t | {tip}
            budget -= cc.weight_of(tip)
        if budget < 0:
            continue
        found.append(solve_ctse(CtseInstance(h, t, budget)))
    return _best(cc, found)


def _component_with(g: MultiGraph, labels, vertices) -> frozenset | None:
    need = set(vertices)
    for x in labels:
        need |= {g.edges[x].u, g.edges[x].v}
    for comp in components(g):
        if need <= comp:
            return comp
    return None


def _triad_shores(h: MultiGraph, zset: frozenset[str], tip: str, t) -> Iterator[tuple[MultiGraph, set, set]]:
    """Where the rest of a cut through ``tip`` can live when ``C ^ Z`` must stay a cut.

    ``Z`` splits its component into two shores.  A feasible ``C`` is ``tip``
    plus a minimal cut of one shore separating the shore ends of the other two
    edges of ``Z`` from the shore end of ``tip``.  Yields the shore graph with
    those two vertex sets, for each shore holding every edge of ``t``.
    """
    comp = _component_with(h, zset, ())
    if comp is None:
        return
    shores = components(h.induced(comp), ignore=zset)
    if len(shores) != 2:
        return
    et = h.edges[tip]
    for shore in shores:
        if any(h.edges[x].u not in shore or h.edges[x].v not in shore for x in t):
            continue
        near = {v for x in zset - {tip} for v in (h.edges[x].u, h.edges[x].v) if v in shore}
        far = {v for v in (et.u, et.v) if v in shore}
        if near & far:
            continue
        yield h.induced(shore), near, far


def ewmsc_cographic(cc: CircuitConstraint) -> Outcome:
    """Guess the menu choices, contract the rest, and look for a cheap terminal cut."""
    if _too_many_sets(cc):
        return NO
    g = _graph(cc)
    cov = cc.covered
    found = []
    for chosen, cost in _guesses(cc):
        h, _ = contract_edges(g, cov - chosen)
        t = cc.terminals | chosen
        budget = cc.k - cost
        if cc.z is not None:
            zset, tip = cc.z
            budget -= cc.weight_of(tip)
            if budget < 0:
                continue
            for shore, near, far in _triad_shores(h, zset, tip, t):
                c = solve_emwc(EmwcInstance(shore, t, frozenset(near), frozenset(far), budget))
                found.append(None if c is None else c | {tip})
            continue
        if budget < 0:
            continue
        if t:
            comps = [_component_with(h, t, ())]
            if comps[0] is None:
                continue
        else:
            comps = [c for c in components(h) if len(c) > 1]
        for comp in comps:
            found.append(solve_emwc(EmwcInstance(h.induced(comp), t, frozenset(), frozenset(), budget)))
    return _best(cc, found)


# -- unweighted -----------------------------------------------------------------


def esc_r10(cc: CircuitConstraint) -> Outcome:
    """Reject too many sets, merge parallel elements outside the sets, then brute force."""
    if cc.z is not None or len(cc.xs) > 10:
        return NO
    m = cc.binary
    cov = cc.covered
    keep: dict[int, str] = {}
    for j, x in enumerate(m.labels):
        if x in cov or x in cc.terminals:
            continue
        keep.setdefault(m.cols[j], x)
    free = sorted(keep.values())
    if len(free) + len(cov) + len(cc.terminals) > R10_ELEMENT_CAP:
        raise AssertionError("R10 instance exceeds the post-merge element bound")
    found = []
    for chosen, _ in _guesses(cc):
        base = m.mask(cc.terminals | chosen)
        for sel in range(1 << len(free)):
            cmask = base | m.mask(free[i] for i in bits(sel))
            if m.is_circuit_mask(cmask):
                found.append(m.unmask(cmask))
                break
    return _best(cc, found)


def esc_graphic(cc: CircuitConstraint) -> Outcome:
    g = cc.matroid.graph
    g = MultiGraph(g.vertices, [(x, e.u, e.v, 1) for x, e in g.edges.items()])
    cov = cc.covered
    found = []
    for chosen, _ in _guesses(cc):
        h = g.delete_edges(cov - chosen)
        t = cc.terminals | chosen
        if cc.z is not None:
            zset, tip = cc.z
            apex = _triangle_apex(g, zset, tip)
            if any(apex in (h.edges[x].u, h.edges[x].v) for x in t):
                continue
            h = h.delete_vertices([apex])
            t = t | {tip}
        c = solve_ctse(CtseInstance(h, t, len(h.edges)))
        if c is not None:
            found.append(c)
            break
    return _best(cc, found)


def _two_connected_sides(g: MultiGraph, comp: frozenset, side_a: set, side_b: set) -> frozenset | None:
    """A side A with side_a inside, side_b outside, and both A and comp - A connected."""
    free = [v for v in g.vertices if v in comp and v not in side_a and v not in side_b]
    if len(free) > 22:
        raise ValueError("cographic search capped at 22 free vertices")
    for mask in range(1 << len(free)):
        a = set(side_a) | {free[i] for i in bits(mask)}
        b = comp - a
        if not a or not b:
            continue
        if is_connected_set(g, a) and is_connected_set(g, b):
            return frozenset(a)
    return None


def _split_connected(h: MultiGraph, comp: frozenset, t, side_a: set, side_b: set) -> frozenset | None:
    """Orient every edge of ``t`` across a cut of ``comp`` into two connected sides."""
    t = sorted(t)
    if any(h.edges[x].is_loop for x in t):
        return None
    for orient in range(1 << len(t)):
        a_side, b_side = set(side_a), set(side_b)
        for i, x in enumerate(t):
            e = h.edges[x]
            a, b = (e.u, e.v) if orient >> i & 1 else (e.v, e.u)
            a_side.add(a)
            b_side.add(b)
        if a_side & b_side:
            continue
        a = _two_connected_sides(h, comp, a_side, b_side)
        if a is not None:
            return a
    return None


def esc_cographic(cc: CircuitConstraint) -> Outcome:
    """Guess the menu choices and sides of the terminal edges, then split into two connected parts."""
    g = cc.matroid.graph
    cov = cc.covered
    for chosen, _ in _guesses(cc):
        h, alpha = contract_edges(g, cov - chosen)
        t = cc.terminals | chosen
        if cc.z is not None:
            zset, tip = cc.z
            tries = [(sh, frozenset(sh.vertices), near, far) for sh, near, far in _triad_shores(h, zset, tip, t)]
            extra = frozenset({tip})
        else:
            if t:
                comp = _component_with(h, t, ())
                comps = [] if comp is None else [comp]
            else:
                comps = [c for c in components(h) if len(c) > 1]
            tries = [(h, comp, set(), set()) for comp in comps]
            extra = frozenset()
        for sub, comp, near, far in tries:
            a = _split_connected(sub, comp, t, near, far)
            if a is None:
                continue
            c = frozenset(x for x, e in sub.edges.items() if (e.u in a) != (e.v in a)) | extra
            if cc.is_feasible(c):
                return Outcome(c, len(c))
    return NO


def solve_basic(cc: CircuitConstraint) -> Outcome:
    node = cc.matroid
    if not isinstance(node, BasicNode):
        raise TypeError("expected a basic node")
    table = {
        (True, "r10"): ewmsc_r10,
        (True, "graphic"): ewmsc_graphic,
        (True, "cographic"): ewmsc_cographic,
        (False, "r10"): esc_r10,
        (False, "graphic"): esc_graphic,
        (False, "cographic"): esc_cographic,
    }
    return table[(cc.weighted, node.kind)](cc)
