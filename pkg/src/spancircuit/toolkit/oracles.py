"""Brute-force reference answers for small instances.

These deliberately avoid the solver machinery: circuits come from subset
enumeration or from the composed matrix, cuts from vertex bipartitions,
cycles from depth-first search.
"""

from __future__ import annotations

from itertools import combinations

from ..ctse import CtseInstance
from ..ctse import is_solution as ctse_ok
from ..decomp import BasicNode, ConflictTree, compose
from ..emwc import EmwcInstance, extra_weight
from ..emwc import is_solution as emwc_ok
from ..gf2 import BinaryMatroid, enumerate_circuits, popcount
from ..graph import enumerate_cycles, enumerate_minimal_cutsets
from ..solvers.constraint import CircuitConstraint

SUBSET_CAP = 16


def oracle_circuits(m: BinaryMatroid) -> list[frozenset[str]]:
    """Circuits straight from the definition: dependent sets all of whose one-smaller subsets are independent."""
    n = len(m)
    if n > SUBSET_CAP:
        raise ValueError(f"subset oracle capped at {SUBSET_CAP} elements")
    indep = [False] * (1 << n)
    for s in range(1 << n):
        indep[s] = m.rank_mask(s) == popcount(s)
    out = []
    for s in range(1, 1 << n):
        if indep[s]:
            continue
        if all(indep[s & ~(1 << j)] for j in range(n) if s >> j & 1):
            out.append(m.unmask(s))
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def _matroid(m) -> BinaryMatroid:
    if isinstance(m, ConflictTree):
        return compose(m)
    if isinstance(m, BasicNode):
        return m.matroid
    return m


def oracle_constraint(cc: CircuitConstraint) -> tuple[frozenset[str], int] | None:
    """Cheapest feasible circuit (by omega, or by size when unweighted)."""
    m = _matroid(cc.matroid)
    best = None
    for c in enumerate_circuits(m):
        if not cc.is_feasible(c, m):
            continue
        w = cc.omega(c) if cc.weighted else len(c)
        if best is None or w < best[1]:
            best = (c, w)
    return best


def oracle_wmsc(m, weights: dict[str, int], terminals, budget: int) -> int | None:
    """Least total weight of a circuit through the terminals, if it is at most ``budget``."""
    mat = _matroid(m)
    t = frozenset(terminals)
    best = None
    for c in enumerate_circuits(mat):
        if t <= c:
            w = sum(weights[x] for x in c)
            if best is None or w < best:
                best = w
    return best if best is not None and best <= budget else None


def oracle_sc(m, terminals) -> frozenset[str] | None:
    mat = _matroid(m)
    t = frozenset(terminals)
    for c in enumerate_circuits(mat):
        if t <= c:
            return c
    return None


def oracle_emwc(inst: EmwcInstance) -> int | None:
    """Least extra weight over all minimal cut-sets that solve the instance."""
    best = None
    for c in enumerate_minimal_cutsets(inst.graph):
        if emwc_ok(inst, c):
            w = extra_weight(inst.graph, c, inst.terminals)
            if best is None or w < best:
                best = w
    return best


def oracle_ctse(inst: CtseInstance) -> int | None:
    best = None
    for c in enumerate_cycles(inst.graph):
        if ctse_ok(inst, c):
            w = inst.graph.total_weight(c - inst.terminals)
            if best is None or w < best:
                best = w
    return best


def is_unbreakable(g, a: int, b: int) -> bool:
    """No vertex bipartition with both sides larger than ``a`` and at most ``b`` crossing edges."""
    verts = list(g.vertices)
    n = len(verts)
    if n > 2 * SUBSET_CAP:
        raise ValueError("bipartition oracle capped")
    for r in range(a + 1, n - a):
        for side in combinations(verts, r):
            if len(g.cut_edges(set(side))) <= b:
                return False
    return True


def feasible_cuts(g, terminals, k: int) -> list[frozenset]:
    """Every side A (up to complement) of a cut containing ``terminals`` with extra weight at most ``k``."""
    verts = list(g.vertices)
    t = frozenset(terminals)
    out = []
    rest = verts[1:]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            a = frozenset((verts[0],) + extra)
            cut = g.cut_edges(a)
            if t <= cut and g.total_weight(cut - t) <= k:
                out.append(a)
    return out
