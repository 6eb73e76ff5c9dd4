"""Leaf rules and drivers for circuit constraints on conflict trees.

Each rule removes one leaf of the conflict tree and returns the reduced
instance together with a ``lift`` that turns a solution of the reduced
instance back into a solution of the original one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..decomp import BasicNode, ConflictTree, validate
from ..gf2 import circuit_in, is_circuit
from ..emwc import InvariantError
from .basic import solve_basic
from .constraint import NO, CircuitConstraint, Outcome

Lift = Callable[[frozenset], frozenset]


@dataclass
class Reduction:
    """Result of one leaf rule: a smaller instance, or None when the rule proved a no-instance."""

    instance: CircuitConstraint | None
    lift: Lift | None = None

    @property
    def stopped(self) -> bool:
        return self.instance is None


@dataclass
class _Leaf:
    index: int
    parent: int
    node: BasicNode
    shared: frozenset[str]
    labels: frozenset[str]


def _leaf_info(cc: CircuitConstraint, leaf: int) -> _Leaf:
    tree = cc.matroid
    if leaf == tree.root:
        raise ValueError("the root is never reduced")
    nbrs = tree.neighbors(leaf)
    if len(nbrs) != 1:
        raise ValueError(f"node {leaf} is not a leaf")
    parent, edge = nbrs[0]
    node = tree.nodes[leaf]
    return _Leaf(leaf, parent, node, edge.shared, frozenset(node.labels))


def _drop_leaf(
    cc: CircuitConstraint, info: _Leaf, *, terminals: Iterable[str] = (), xs_add=(),
    menu_add=None, xweights_add=None, weights_set=None, k: int | None = None,
    delete_from_parent: Iterable[str] = (),
) -> CircuitConstraint:
    tree: ConflictTree = cc.matroid
    parent = tree.nodes[info.parent]
    for x in delete_from_parent:
        parent = parent.delete(x)
    tree = tree.replace_node(info.parent, parent).remove_leaf(info.index)
    xs = tuple(x for x in cc.xs if not x <= info.labels) + tuple(frozenset(x) for x in xs_add)
    menu = {x: cc.menu[x] for x in xs if x in cc.menu}
    menu.update(menu_add or {})
    xw = {x: cc.xweights[x] for x in xs if x in cc.xweights}
    xw.update(xweights_add or {})
    weights = None
    if cc.weights is not None:
        weights = {x: v for x, v in cc.weights.items() if x not in info.labels - info.shared}
        weights.update(weights_set or {})
    return CircuitConstraint(
        matroid=tree,
        terminals=(cc.terminals - info.labels) | frozenset(terminals),
        xs=xs,
        menu=menu,
        z=None,
        weights=weights,
        xweights=xw,
        k=cc.k if k is None else k,
    )


def _leaf_parts(cc: CircuitConstraint, info: _Leaf):
    t_leaf = cc.terminals & info.labels
    x_leaf = tuple(x for x in cc.xs if x <= info.labels)
    return t_leaf, x_leaf


def _solve_leaf(cc: CircuitConstraint, info: _Leaf, **kw) -> Outcome:
    sub = cc.restricted_to(info.node, **kw)
    return solve_basic(sub)


def _least(out: Outcome, cap: int) -> int | None:
    # basic solvers return an optimal witness, so the optimum is the least feasible budget
    if not out.yes or out.weight > cap:
        return None
    return out.weight


def _swap(c: frozenset, s: frozenset) -> frozenset:
    return c ^ s


def _third(s: frozenset, a: str, b: str) -> str:
    (h,) = s - {a, b}
    return h


def _joined_circuit(m, ci: frozenset, cj: frozenset, s: frozenset, eh: str) -> frozenset:
    c = circuit_in(m, ci ^ cj ^ s, eh)
    if c is None or c & s != {eh}:
        raise InvariantError("could not rebuild a leaf circuit through the triangle")
    return c


# -- weighted rules ---------------------------------------------------------


def wmsc_rule_1leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    t_leaf, x_leaf = _leaf_parts(cc, info)
    if t_leaf or x_leaf:
        return Reduction(None)
    return Reduction(_drop_leaf(cc, info), lambda c: c)


def wmsc_rule_2leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    (e,) = info.shared
    t_leaf, x_leaf = _leaf_parts(cc, info)
    k = cc.k
    if not t_leaf and not x_leaf:
        out = _solve_leaf(cc, info, terminals=frozenset([e]), xs=(), menu={}, xweights={}, k=k)
        least = _least(out, k)
        ce = out.witness
        reduced = _drop_leaf(cc, info, weights_set={e: k + 1 if least is None else least})

        def lift(c: frozenset) -> frozenset:
            if e not in c:
                return c
            if ce is None:
                raise InvariantError("priced-out element used by the reduced solution")
            return c ^ ce

        return Reduction(reduced, lift)
    weights = dict(cc.weights)
    weights[e] = 1
    out = _solve_leaf(cc, info, terminals=t_leaf | {e}, weights={x: weights.get(x, 1) for x in info.labels}, k=k)
    least = _least(out, k)
    if least is None:
        return Reduction(None)
    cl = out.witness
    reduced = _drop_leaf(cc, info, terminals=[e], weights_set={e: 1}, k=k - least)
    return Reduction(reduced, lambda c: c ^ cl)


def wmsc_rule_3leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    s = info.shared
    tri = sorted(s)
    t_leaf, x_leaf = _leaf_parts(cc, info)
    k = cc.k
    m_leaf = info.node.matroid
    base_w = {x: cc.weights.get(x, 1) for x in info.labels}

    if not t_leaf and not x_leaf:
        price, wit = {}, {}
        for ei in tri:
            w = dict(base_w)
            w[ei] = 1
            out = _solve_leaf(cc, info, terminals=frozenset(), xs=(), menu={}, xweights={},
                              z=(s, ei), weights=w, k=k + 1)
            least = _least(out, k + 1)
            price[ei] = k + 1 if least is None else least - 1
            wit[ei] = out.witness
        reduced = _drop_leaf(cc, info, weights_set=price)

        def lift(c: frozenset) -> frozenset:
            meet = c & s
            if not meet:
                return c
            if len(meet) == 1:
                (ei,) = meet
                return c ^ wit[ei]
            ei, ej = sorted(meet)
            eh = _third(s, ei, ej)
            return (c ^ s) ^ _joined_circuit(m_leaf, wit[ei], wit[ej], s, eh)

        return Reduction(reduced, lift)

    if t_leaf and not x_leaf:
        hit = [ei for ei in tri if is_circuit(m_leaf, t_leaf | {ei})]
        if hit:
            ei = hit[0]
            cl = t_leaf | {ei}
            if is_circuit(m_leaf, cl ^ s):
                price, wit = {ei: 1}, {}
                for ej in tri:
                    if ej == ei:
                        continue
                    eh = _third(s, ei, ej)
                    out = _solve_leaf(cc, info, terminals=t_leaf, xs=(s,), menu={s: (frozenset([eh]),)},
                                      xweights={s: {frozenset([eh]): 1}}, weights=base_w, k=k + 1)
                    least = _least(out, k + 1)
                    price[ej] = k + 1 if least is None else least - 1
                    wit[eh] = out.witness
                reduced = _drop_leaf(cc, info, terminals=[ei], weights_set=price)

                def lift(c: frozenset) -> frozenset:
                    meet = c & s
                    if meet == {ei}:
                        return c ^ cl
                    (ej,) = meet - {ei}
                    eh = _third(s, ei, ej)
                    return (c ^ s) ^ wit[eh]

                return Reduction(reduced, lift)
            others = s - {ei}
            reduced = _drop_leaf(cc, info, terminals=others,
                                 weights_set={ei: k + 1, **{x: 1 for x in others}})
            return Reduction(reduced, lambda c: (c ^ s) ^ cl)

    menu, prices, wit = [], {}, {}
    for ei in tri:
        w = dict(base_w)
        for x in tri:
            w[x] = 1
        out = _solve_leaf(cc, info, z=(s, ei), weights=w, k=k + 1)
        least = _least(out, k + 1)
        if least is not None:
            y = frozenset([ei])
            menu.append(y)
            prices[y] = least - 1
            wit[y] = out.witness
        sub_xs = x_leaf + (s,)
        sub_menu = {x: cc.menu[x] for x in x_leaf}
        sub_menu[s] = (frozenset([ei]),)
        sub_xw = {x: cc.xweights.get(x, {}) for x in x_leaf}
        sub_xw[s] = {frozenset([ei]): 1}
        out = _solve_leaf(cc, info, xs=sub_xs, menu=sub_menu, xweights=sub_xw, weights=base_w, k=k + 1)
        least = _least(out, k + 1)
        if least is not None:
            y = s - {ei}
            menu.append(y)
            prices[y] = least - 1
            wit[y] = out.witness
    if not menu:
        return Reduction(None)
    reduced = _drop_leaf(cc, info, xs_add=[s], menu_add={s: tuple(menu)}, xweights_add={s: prices})

    def lift(c: frozenset) -> frozenset:
        meet = c & s
        if len(meet) == 1:
            return c ^ wit[meet]
        return (c ^ s) ^ wit[meet]

    return Reduction(reduced, lift)


# -- unweighted rules -------------------------------------------------------


def scir_rule_1leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    t_leaf, x_leaf = _leaf_parts(cc, info)
    if t_leaf or x_leaf:
        return Reduction(None)
    return Reduction(_drop_leaf(cc, info), lambda c: c)


def scir_rule_2leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    (e,) = info.shared
    t_leaf, x_leaf = _leaf_parts(cc, info)
    m_leaf = info.node.matroid
    if not t_leaf and not x_leaf:
        ce = circuit_in(m_leaf, m_leaf.labels, e)
        reduced = _drop_leaf(cc, info, delete_from_parent=[e] if ce is None else [])

        def lift(c: frozenset) -> frozenset:
            return c ^ ce if e in c else c

        return Reduction(reduced, lift)
    single = frozenset([e])
    sub_menu = {x: cc.menu[x] for x in x_leaf}
    sub_menu[single] = (single,)
    out = _solve_leaf(cc, info, xs=x_leaf + (single,), menu=sub_menu)
    if not out.yes:
        return Reduction(None)
    cl = out.witness
    reduced = _drop_leaf(cc, info, xs_add=[single], menu_add={single: (single,)})
    return Reduction(reduced, lambda c: c ^ cl)


def scir_rule_3leaf(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    s = info.shared
    tri = sorted(s)
    t_leaf, x_leaf = _leaf_parts(cc, info)
    m_leaf = info.node.matroid
    if not t_leaf and not x_leaf:
        wit, gone = {}, []
        for ei in tri:
            out = _solve_leaf(cc, info, terminals=frozenset(), xs=(), menu={}, z=(s, ei))
            wit[ei] = out.witness
            if not out.yes:
                gone.append(ei)
        reduced = _drop_leaf(cc, info, delete_from_parent=gone)

        def lift(c: frozenset) -> frozenset:
            meet = c & s
            if not meet:
                return c
            if len(meet) == 1:
                (ei,) = meet
                return c ^ wit[ei]
            ei, ej = sorted(meet)
            eh = _third(s, ei, ej)
            return (c ^ s) ^ _joined_circuit(m_leaf, wit[ei], wit[ej], s, eh)

        return Reduction(reduced, lift)
    menu, wit = [], {}
    for ei in tri:
        out = _solve_leaf(cc, info, z=(s, ei))
        if out.yes:
            y = frozenset([ei])
            menu.append(y)
            wit[y] = out.witness
        sub_menu = {x: cc.menu[x] for x in x_leaf}
        sub_menu[s] = (frozenset([ei]),)
        out = _solve_leaf(cc, info, xs=x_leaf + (s,), menu=sub_menu)
        if out.yes:
            y = s - {ei}
            menu.append(y)
            wit[y] = out.witness
    if not menu:
        return Reduction(None)
    reduced = _drop_leaf(cc, info, xs_add=[s], menu_add={s: tuple(menu)})

    def lift(c: frozenset) -> frozenset:
        meet = c & s
        if len(meet) == 1:
            return c ^ wit[meet]
        return (c ^ s) ^ wit[meet]

    return Reduction(reduced, lift)


WEIGHTED_RULES = {0: wmsc_rule_1leaf, 1: wmsc_rule_2leaf, 3: wmsc_rule_3leaf}
UNWEIGHTED_RULES = {0: scir_rule_1leaf, 1: scir_rule_2leaf, 3: scir_rule_3leaf}


def apply_leaf_rule(cc: CircuitConstraint, leaf: int) -> Reduction:
    info = _leaf_info(cc, leaf)
    rules = WEIGHTED_RULES if cc.weighted else UNWEIGHTED_RULES
    return rules[len(info.shared)](cc, leaf)


def choose_root(cc: CircuitConstraint) -> int | None:
    """First node holding a terminal, else the first holding a constraint set."""
    tree: ConflictTree = cc.matroid
    for i, n in enumerate(tree.nodes):
        if cc.terminals & set(n.labels):
            return i
    for i, n in enumerate(tree.nodes):
        if any(x <= set(n.labels) for x in cc.xs):
            return i
    return None


def deepest_leaf(tree: ConflictTree) -> int:
    depth = tree.depths()
    leaves = [i for i in range(len(tree.nodes)) if i != tree.root and len(tree.neighbors(i)) == 1]
    return max(leaves, key=lambda i: (depth[i][0], -i))


def check_tree_instance(cc: CircuitConstraint) -> None:
    tree: ConflictTree = cc.matroid
    v = validate(tree)
    if not v:
        raise ValueError("invalid conflict tree: " + "; ".join(v.problems))
    if cc.z is not None:
        raise ValueError("tree instances carry no triangle condition")
    cc.check()
    for x in cc.xs:
        if not any(x <= set(n.labels) for n in tree.nodes):
            raise ValueError(f"constraint set {sorted(x)} spans several nodes")


def _reduce_and_solve(cc: CircuitConstraint) -> Outcome:
    lifts: list[Lift] = []
    while len(cc.matroid.nodes) > 1:
        red = apply_leaf_rule(cc, deepest_leaf(cc.matroid))
        if red.stopped:
            return NO
        lifts.append(red.lift)
        cc = red.instance
    tree: ConflictTree = cc.matroid
    out = solve_basic(cc.restricted_to(tree.nodes[0], z=None))
    if not out.yes:
        return NO
    c = out.witness
    for lift in reversed(lifts):
        c = lift(c)
    return Outcome(c, None)


def _solve_tree(cc: CircuitConstraint) -> Outcome:
    check_tree_instance(cc)
    original = cc
    if not cc.terminals and not cc.xs:
        # every circuit holds some element: try each one as the terminal
        best = NO
        for e in sorted(cc.ground):
            sub = cc.with_(terminals=frozenset([e]))
            if cc.weighted:
                budget = cc.k - cc.weight_of(e)
                if budget < 0:
                    continue
                sub = sub.with_(k=budget)
            out = _solve_tree(sub)
            if out.yes:
                w = cc.omega(out.witness) if cc.weighted else len(out.witness)
                if not best.yes or w < best.weight:
                    best = Outcome(out.witness, w)
                if not cc.weighted:
                    break
        return best
    root = choose_root(cc)
    cc = cc.with_(matroid=cc.matroid.rerooted(root))
    out = _reduce_and_solve(cc)
    if not out.yes:
        return NO
    c = out.witness
    if not original.is_feasible(c):
        raise InvariantError("lifted circuit is not feasible for the original instance")
    return Outcome(c, original.omega(c) if original.weighted else len(c))


def solve_ewmsc(cc: CircuitConstraint) -> Outcome:
    """Weighted constraint on a basic node or a conflict tree."""
    if not cc.weighted:
        raise ValueError("solve_ewmsc needs weights")
    if cc.is_tree:
        return _solve_tree(cc)
    cc.check()
    return solve_basic(cc)


def solve_esc(cc: CircuitConstraint) -> Outcome:
    """Unweighted constraint on a basic node or a conflict tree."""
    if cc.weighted:
        raise ValueError("solve_esc takes an unweighted instance")
    if cc.is_tree:
        return _solve_tree(cc)
    cc.check()
    return solve_basic(cc)


def _as_structure(m) -> BasicNode | ConflictTree:
    if isinstance(m, (BasicNode, ConflictTree)):
        return m
    raise TypeError("need a basic node or a conflict tree; plain matrices carry no decomposition")


def solve_wmsc(matroid, weights: dict[str, int] | None, terminals: Iterable[str], budget: int) -> Outcome:
    """Minimum spanning circuit: a circuit through all terminals of total weight at most ``budget``.

    ``weights`` defaults to the weights stored on the nodes.  The outcome
    weight is the total weight of the returned circuit.
    """
    m = _as_structure(matroid)
    base = m.weights()
    if weights:
        base.update(weights)
    t = frozenset(terminals)
    k = budget - sum(base[x] for x in t)
    if k < 0:
        return NO
    cc = CircuitConstraint(matroid=m, terminals=t, weights=base, k=k)
    out = solve_ewmsc(cc)
    if not out.yes:
        return NO
    return Outcome(out.witness, sum(base[x] for x in out.witness))


def solve_sc(matroid, terminals: Iterable[str]) -> Outcome:
    """Spanning circuit: any circuit through all terminals.  Weight is the circuit size."""
    m = _as_structure(matroid)
    t = frozenset(terminals)
    xs = tuple(frozenset([x]) for x in sorted(t))
    cc = CircuitConstraint(matroid=m, xs=xs, menu={x: (x,) for x in xs})
    out = solve_esc(cc)
    return Outcome(out.witness, len(out.witness)) if out.yes else NO
