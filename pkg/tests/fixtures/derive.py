"""Recompute the frozen reference values in ``derived.json``.

Everything here is brute force written from the definitions, with no
imports from the package: rank by elimination over lists, circuits as
minimal dependent subsets, cuts as vertex bipartitions, cycles by search.

    python3 tests/fixtures/derive.py > tests/fixtures/derived.json
"""

from __future__ import annotations

import json
from itertools import combinations

# -- tiny independent toolbox -------------------------------------------------


def rank(vectors: list[list[int]]) -> int:
    rows = [list(v) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def transpose(m):
    return [list(col) for col in zip(*m)]


def circuits(columns: dict[str, list[int]]) -> list[list[str]]:
    labels = sorted(columns)

    def indep(s):
        return not s or rank([columns[x] for x in s]) == len(s)

    out = []
    for r in range(1, len(labels) + 1):
        for s in combinations(labels, r):
            if not indep(s) and all(indep(tuple(y for y in s if y != x)) for x in s):
                out.append(list(s))
    return out


def incidence(vertices, edges):
    """Columns of the vertex-edge incidence matrix over GF(2)."""
    cols = {}
    for x, u, v in edges:
        cols[x] = [0 if u == v else int(w in (u, v)) for w in vertices]
    return cols


def connected(vertices, edges) -> bool:
    vs = set(vertices)
    if not vs:
        return True
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for _, u, v in edges:
            for p, q in ((u, v), (v, u)):
                if p == a and q in vs and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen == vs


def minimal_cuts(vertices, edges) -> list[list[str]]:
    vs = list(vertices)
    out = set()
    for r in range(1, len(vs)):
        for side in combinations(vs, r):
            a = set(side)
            b = set(vs) - a
            ea = [e for e in edges if e[1] in a and e[2] in a]
            eb = [e for e in edges if e[1] in b and e[2] in b]
            if connected(a, ea) and connected(b, eb):
                out.add(tuple(sorted(x for x, u, v in edges if (u in a) != (v in a))))
    return sorted(list(c) for c in out)


def cycles(edges) -> list[list[str]]:
    """Edge sets whose every vertex has degree two and which are connected."""
    out = []
    for r in range(1, len(edges) + 1):
        for sub in combinations(edges, r):
            deg: dict = {}
            for x, u, v in sub:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if all(d == 2 for d in deg.values()) and connected(deg, list(sub)):
                out.append(sorted(x for x, _, _ in sub))
    return out


def k4():
    vs = "abcd"
    return vs, [(u + v, u, v) for u, v in combinations(vs, 2)]


C4 = ("abcd", [("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("da", "d", "a")])


def r10_columns():
    cols = []
    for trip in combinations(range(5), 3):
        cols.append([int(i in trip) for i in range(5)])
    return {f"r{j}": c for j, c in enumerate(cols)}


# -- reference values -------------------------------------------------------------


def derive() -> dict:
    d: dict = {}
    r10 = r10_columns()
    d["r10_rank"] = rank(transpose(list(r10.values())))
    rc = circuits(r10)
    d["r10_circuit_count"] = len(rc)
    d["r10_circuit_sizes"] = sorted({len(c) for c in rc})
    d["r10_girth"] = min(len(c) for c in rc)

    vs, es = C4
    d["c4_minimal_cuts"] = minimal_cuts(vs, es)
    d["c4_bond_circuits"] = d["c4_minimal_cuts"]
    d["k4_minimal_cuts"] = minimal_cuts(*k4())
    d["k3_minimal_cuts"] = minimal_cuts("abc", [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")])
    d["c4_cycle_circuits"] = circuits(incidence(vs, es))
    d["k4_cycle_circuits"] = circuits(incidence(*k4()))

    # 2-sum of two triangles along f, realized as the 4-cycle a-b-c-d
    d["two_triangles_circuits"] = cycles([("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"), ("e4", "d", "a")])
    # 3-sum of two K4 along a triangle abc: apexes p and q joined to a, b, c
    k23 = [(f"{s}{x}", s, x) for s in "pq" for x in "abc"]
    d["two_k4_3sum_circuits"] = cycles(k23)

    # cut instance on C4: minimal cuts through ab, separating a from c, one extra edge
    good = []
    for cut in minimal_cuts(vs, es):
        if "ab" not in cut or len(cut) - 1 > 1:
            continue
        rest = [e for e in es if e[0] not in cut]
        side_a = {"a"}
        grow = True
        while grow:
            grow = False
            for _, u, v in rest:
                for p, q in ((u, v), (v, u)):
                    if p in side_a and q not in side_a:
                        side_a.add(q)
                        grow = True
        if "c" not in side_a:
            good.append(cut)
    d["c4_emwc_solutions"] = good

    # odd cycle transversal of two disjoint triangles
    tri2 = [("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x")]
    best = None
    verts = "abcxyz"
    for r in range(len(verts) + 1):
        for rem in combinations(verts, r):
            left = [e for e in tri2 if e[0] not in rem and e[1] not in rem]
            ok = False
            keep = [v for v in verts if v not in rem]
            for mask in range(1 << len(keep)):
                color = {v: mask >> i & 1 for i, v in enumerate(keep)}
                if all(color[u] != color[v] for u, v in left):
                    ok = True
                    break
            if ok:
                best = r
                break
        if best is not None:
            break
    d["two_triangles_oct"] = best

    # K6 with q = 2: no cut with both sides above 2 and at most 2 edges
    k6 = [(f"{u}{v}", u, v) for u, v in combinations("abcdef", 2)]
    smallest = min(
        sum(1 for _, u, v in k6 if (u in side) != (v in side))
        for r in range(3, 4) for side in combinations("abcdef", r)
    )
    d["k6_balanced_min_cut"] = smallest

    # cycles through terminals
    c4 = [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"), ("e4", "d", "a")]
    d["c4_ctse_e1"] = [c for c in cycles(c4) if "e1" in c]
    _, k4e = k4()
    through = [c for c in cycles(k4e) if {"ab", "cd"} <= set(c)]
    best_len = min(len(c) for c in through)
    d["k4_ctse_ab_cd"] = {"extra": best_len - 2, "optimal": [c for c in through if len(c) == best_len]}

    # square with a chord, terminals on two opposite sides, weights 1 except the chord
    sq = [("t1", "a", "b", 1), ("s1", "b", "c", 1), ("t2", "c", "d", 1), ("s2", "d", "a", 2), ("h", "a", "c", 1)]
    found = [c for c in cycles([e[:3] for e in sq]) if {"t1", "t2"} <= set(c)]
    w = {x: wt for x, _, _, wt in sq}
    d["square_two_terminals_extra"] = min(sum(w[x] for x in c if x not in ("t1", "t2")) for c in found)

    # minimum total weight of a circuit through e1 in M(C4), unit weights
    d["c4_wmsc_e1_optimum"] = min(len(c) for c in cycles(c4) if "e1" in c)
    # cheapest circuit through e in the triangle {e, f, g}
    d["triangle_leaf_price"] = min(len(c) - 1 for c in cycles([("e", "a", "b"), ("f", "b", "c"), ("g", "c", "a")])
                                   if "e" in c)
    return d


if __name__ == "__main__":
    print(json.dumps(derive(), indent=2, sort_keys=True))
