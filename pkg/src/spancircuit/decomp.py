"""Basic matroids, extended 1-, 2- and 3-sums, and conflict trees.

A conflict tree is a tree whose nodes are graphic, cographic or R10-derived
matroids.  Adjacent nodes share 0, 1 or 3 labels; composing the tree by sums
along its edges yields the represented regular matroid.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from .gf2 import (
    BinaryMatroid,
    Gf2Matrix,
    R10_LABELS,
    add_parallel,
    bits,
    circuit_in,
    delete,
    enumerate_circuits,
    independent_basis,
    is_circuit,
    null_space,
    r10,
)
from .graph import MultiGraph, bond_matroid, contract_edge, cycle_matroid

KINDS = ("graphic", "cographic", "r10")


@dataclass(frozen=True, eq=False)
class BasicNode:
    """A graphic, cographic or R10-derived matroid.

    R10-derived nodes start from R10 on ``r10_labels``, add the elements of
    ``parallels`` (``(new, existing)`` pairs, in order) and then delete
    ``deleted``.  Their weights default to 1.
    """

    kind: str
    graph: MultiGraph | None = None
    r10_labels: tuple[str, ...] = R10_LABELS
    parallels: tuple[tuple[str, str], ...] = ()
    deleted: frozenset[str] = frozenset()
    r10_weights: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.kind != "r10" and self.graph is None:
            raise ValueError(f"{self.kind} node needs a graph")
        if self.kind == "r10" and len(self.r10_labels) != 10:
            raise ValueError("R10 needs exactly ten labels")

    @classmethod
    def graphic(cls, g: MultiGraph) -> "BasicNode":
        return cls("graphic", g)

    @classmethod
    def cographic(cls, g: MultiGraph) -> "BasicNode":
        return cls("cographic", g)

    @classmethod
    def r10(
        cls,
        labels: Sequence[str] | None = None,
        parallels: Iterable[tuple[str, str]] = (),
        deleted: Iterable[str] = (),
        weights: dict[str, int] | None = None,
    ) -> "BasicNode":
        return cls(
            "r10",
            None,
            tuple(labels or R10_LABELS),
            tuple((str(a), str(b)) for a, b in parallels),
            frozenset(deleted),
            tuple(sorted((weights or {}).items())),
        )

    def __repr__(self) -> str:
        return f"BasicNode({self.kind}, {len(self.labels)} elements)"

    @cached_property
    def matroid(self) -> BinaryMatroid:
        if self.kind == "graphic":
            return cycle_matroid(self.graph)
        if self.kind == "cographic":
            return bond_matroid(self.graph)
        m = r10(self.r10_labels)
        for new, old in self.parallels:
            m = add_parallel(m, old, new)
        return delete(m, self.deleted)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        if self.graph is not None:
            return self.graph.labels
        return self.matroid.labels

    def weights(self) -> dict[str, int]:
        if self.graph is not None:
            return {x: e.weight for x, e in self.graph.edges.items()}
        w = dict(self.r10_weights)
        return {x: w.get(x, 1) for x in self.labels}

    def delete(self, label: str) -> "BasicNode":
        """Matroid deletion of one element."""
        if label not in self.labels:
            raise KeyError(f"{label!r} is not in this node")
        if self.kind == "graphic":
            return BasicNode.graphic(self.graph.delete_edges([label]))
        if self.kind == "cographic":
            # deleting from the bond matroid is contracting the edge
            return BasicNode.cographic(contract_edge(self.graph, label).delete_edges([label]))
        return replace(self, deleted=self.deleted | {label})

    def with_weights(self, weights: dict[str, int]) -> "BasicNode":
        if self.graph is not None:
            return replace(self, graph=self.graph.with_weights(weights))
        w = dict(self.r10_weights)
        w.update({x: v for x, v in weights.items() if x in self.labels})
        return replace(self, r10_weights=tuple(sorted(w.items())))


@dataclass(frozen=True)
class TreeEdge:
    a: int
    b: int
    shared: frozenset[str]


@dataclass(frozen=True, eq=False)
class ConflictTree:
    nodes: tuple[BasicNode, ...]
    edges: tuple[TreeEdge, ...] = ()
    root: int = 0

    @classmethod
    def build(cls, nodes: Sequence[BasicNode], links: Iterable[tuple[int, int]] = (), root: int = 0) -> "ConflictTree":
        """Tree whose edge labels are the actual label intersections."""
        nodes = tuple(nodes)
        edges = []
        for a, b in links:
            shared = frozenset(nodes[a].labels) & frozenset(nodes[b].labels)
            edges.append(TreeEdge(a, b, shared))
        return cls(nodes, tuple(edges), root)

    def __repr__(self) -> str:
        kinds = ",".join(n.kind for n in self.nodes)
        return f"ConflictTree([{kinds}], root={self.root})"

    def neighbors(self, i: int) -> list[tuple[int, TreeEdge]]:
        out = []
        for e in self.edges:
            if e.a == i:
                out.append((e.b, e))
            elif e.b == i:
                out.append((e.a, e))
        return out

    def weights(self) -> dict[str, int]:
        w: dict[str, int] = {}
        for n in self.nodes:
            for x, v in n.weights().items():
                w.setdefault(x, v)
        return w

    @cached_property
    def shared_labels(self) -> frozenset[str]:
        out: set[str] = set()
        for e in self.edges:
            out |= e.shared
        return frozenset(out)

    @cached_property
    def ground(self) -> frozenset[str]:
        out: set[str] = set()
        for n in self.nodes:
            out |= set(n.labels)
        return frozenset(out - self.shared_labels)

    def node_of(self, label: str) -> int | None:
        for i, n in enumerate(self.nodes):
            if label in n.labels:
                return i
        return None

    def rerooted(self, root: int) -> "ConflictTree":
        return replace(self, root=root)

    def depths(self) -> dict[int, tuple[int, int | None]]:
        """node -> (depth, parent) from the root."""
        out = {self.root: (0, None)}
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y, _ in self.neighbors(x):
                if y not in out:
                    out[y] = (out[x][0] + 1, x)
                    queue.append(y)
        return out

    def edge_between(self, i: int, j: int) -> TreeEdge:
        for e in self.edges:
            if {e.a, e.b} == {i, j}:
                return e
        raise KeyError((i, j))

    def replace_node(self, i: int, node: BasicNode) -> "ConflictTree":
        nodes = list(self.nodes)
        nodes[i] = node
        return replace(self, nodes=tuple(nodes))

    def remove_leaf(self, leaf: int) -> "ConflictTree":
        if leaf == self.root:
            raise ValueError("cannot remove the root")
        if len(self.neighbors(leaf)) > 1:
            raise ValueError("not a leaf")
        keep = [i for i in range(len(self.nodes)) if i != leaf]
        remap = {old: new for new, old in enumerate(keep)}
        edges = tuple(
            TreeEdge(remap[e.a], remap[e.b], e.shared) for e in self.edges if leaf not in (e.a, e.b)
        )
        return ConflictTree(tuple(self.nodes[i] for i in keep), edges, remap[self.root])

    @cached_property
    def matroid(self) -> BinaryMatroid:
        return compose(self)


@dataclass(frozen=True)
class Validation:
    valid: bool
    problems: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.valid


def validate(tree: ConflictTree) -> Validation:
    """Check the structural invariants of a conflict tree."""
    problems: list[str] = []
    n = len(tree.nodes)
    if n == 0:
        return Validation(False, ("tree has no nodes",))
    if not 0 <= tree.root < n:
        problems.append(f"root {tree.root} out of range")
    pairs = set()
    for e in tree.edges:
        if not (0 <= e.a < n and 0 <= e.b < n) or e.a == e.b:
            problems.append(f"bad tree edge {e.a}-{e.b}")
            continue
        key = frozenset((e.a, e.b))
        if key in pairs:
            problems.append(f"repeated tree edge {e.a}-{e.b}")
        pairs.add(key)
    if problems:
        return Validation(False, tuple(problems))
    if len(tree.edges) != n - 1:
        problems.append(f"{len(tree.edges)} tree edges for {n} nodes")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y, _ in tree.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        problems.append("node graph is disconnected")
    label_sets = [frozenset(x.labels) for x in tree.nodes]
    for i in range(n):
        for j in range(i + 1, n):
            common = label_sets[i] & label_sets[j]
            if frozenset((i, j)) in pairs:
                e = tree.edge_between(i, j)
                if e.shared != common:
                    problems.append(f"edge {i}-{j} lists {sorted(e.shared)} but the nodes share {sorted(common)}")
                if len(common) not in (0, 1, 3):
                    problems.append(f"nodes {i},{j} share {len(common)} labels")
                elif len(common) == 1:
                    # a shared loop collapses parallel partners into loops of the sum
                    for k in (i, j):
                        if tree.nodes[k].matroid.sum_mask(tree.nodes[k].matroid.mask(common)) == 0:
                            problems.append(f"shared element {sorted(common)[0]} is a loop of node {k}")
                elif len(common) == 3:
                    for k in (i, j):
                        if not is_circuit(tree.nodes[k].matroid, common):
                            problems.append(f"shared triple {sorted(common)} is not a circuit of node {k}")
            elif common:
                problems.append(f"non-adjacent nodes {i},{j} share {sorted(common)}")
    return Validation(not problems, tuple(problems))


def _sum_cycle_space(m1: BinaryMatroid, m2: BinaryMatroid):
    shared = set(m1.labels) & set(m2.labels)
    ground = [x for x in m1.labels if x not in shared] + [x for x in m2.labels if x not in shared]
    zlabels = [x for x in m1.labels if x in shared]
    # coordinates: shared first (to eliminate), then the new ground set
    coords = {x: i for i, x in enumerate(zlabels + ground)}
    nz = len(zlabels)

    def lift(m: BinaryMatroid, v: int) -> int:
        out = 0
        for j in bits(v):
            out |= 1 << coords[m.labels[j]]
        return out

    vecs = [lift(m1, v) for v in m1.cycle_basis] + [lift(m2, v) for v in m2.cycle_basis]
    vecs = independent_basis(vecs)
    # eliminate the shared coordinates; what is left is zero on the shared set
    zmask = (1 << nz) - 1
    pivots: dict[int, int] = {}
    rest = []
    for v in vecs:
        for c, p in pivots.items():
            if v >> c & 1:
                v ^= p
        low = v & zmask
        if low:
            c = (low & -low).bit_length() - 1
            for k in list(pivots):
                if pivots[k] >> c & 1:
                    pivots[k] ^= v
            pivots[c] = v
        else:
            rest.append(v)
    cycles = [r >> nz for r in rest]
    return ground, independent_basis(cycles)


def matroid_sum(m1: BinaryMatroid, m2: BinaryMatroid) -> BinaryMatroid:
    """Extended 1-, 2- or 3-sum determined by the shared labels."""
    shared = set(m1.labels) & set(m2.labels)
    if len(shared) not in (0, 1, 3):
        raise ValueError(f"sum needs 0, 1 or 3 shared labels, got {len(shared)}")
    if len(shared) == 3:
        for m in (m1, m2):
            if not is_circuit(m, shared):
                raise ValueError("shared triple is not a circuit of both summands")
    ground, cycles = _sum_cycle_space(m1, m2)
    rows = null_space(cycles, len(ground))
    return BinaryMatroid(Gf2Matrix(tuple(rows), len(ground)), ground)


def matroid_sum_from_cycles(ground: Sequence[str], cycles: Sequence[int]) -> BinaryMatroid:
    rows = null_space(cycles, len(ground))
    return BinaryMatroid(Gf2Matrix(tuple(rows), len(ground)), ground)


def compose(tree: ConflictTree, order: Sequence[int] | None = None, check: bool = True) -> BinaryMatroid:
    """Fold sums over the tree edges, in ``order`` (indices into ``tree.edges``) if given."""
    if check:
        v = validate(tree)
        if not v:
            raise ValueError("invalid conflict tree: " + "; ".join(v.problems))
    if order is None:
        seen = {tree.root}
        order = []
        queue = deque([tree.root])
        while queue:
            x = queue.popleft()
            for y, e in tree.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    order.append(tree.edges.index(e))
    group = {i: i for i in range(len(tree.nodes))}
    mats = {i: tree.nodes[i].matroid for i in range(len(tree.nodes))}

    def find(x):
        while group[x] != x:
            x = group[x]
        return x

    for k in order:
        e = tree.edges[k]
        ra, rb = find(e.a), find(e.b)
        mats[ra] = matroid_sum(mats[ra], mats.pop(rb))
        group[rb] = ra
    roots = {find(i) for i in range(len(tree.nodes))}
    if len(roots) != 1:
        raise ValueError("edge order does not cover the tree")
    return mats[roots.pop()]


def sum2_circuits(m1: BinaryMatroid, m2: BinaryMatroid, e: str) -> set[frozenset[str]]:
    """Circuits of the 2-sum along ``e`` built from the summands' circuits."""
    c1 = enumerate_circuits(m1)
    c2 = enumerate_circuits(m2)
    out = {c for c in c1 if e not in c} | {c for c in c2 if e not in c}
    for a in c1:
        if e in a:
            for b in c2:
                if e in b:
                    out.add(a ^ b)
    return out


def sum3_circuits(m1: BinaryMatroid, m2: BinaryMatroid, z: Iterable[str]) -> set[frozenset[str]]:
    """Circuits of the 3-sum along the triangle ``z`` built from the summands' circuits."""
    z = frozenset(z)
    c1 = enumerate_circuits(m1)
    c2 = enumerate_circuits(m2)
    s1, s2 = set(c1), set(c2)
    out = {c for c in c1 if not c & z} | {c for c in c2 if not c & z}
    for a in c1:
        ia = a & z
        if len(ia) != 1:
            continue
        for b in c2:
            if (b & z) != ia:
                continue
            if (a ^ z) in s1 or (b ^ z) in s2:
                out.add(a ^ b)
    return out


def triangle_split(m: BinaryMatroid, z: Iterable[str], c: Iterable[str]) -> list[frozenset[str]]:
    """For a 3-circuit ``z`` and a circuit ``c`` meeting it in one element.

    Returns ``[c ^ z]`` when that is a circuit, otherwise the two circuits
    that partition ``c ^ z``, each holding one of the other two triangle elements.
    """
    z, c = frozenset(z), frozenset(c)
    if len(z) != 3 or not is_circuit(m, z):
        raise ValueError("z must be a 3-circuit")
    if not is_circuit(m, c):
        raise ValueError("c must be a circuit")
    meet = c & z
    if len(meet) != 1:
        raise ValueError("c must meet z in exactly one element; use triangle_merge for two")
    d = c ^ z
    if is_circuit(m, d):
        return [d]
    e1, e2 = sorted(z - c)
    first = circuit_in(m, d, e1)
    second = d - first
    if e2 not in second or not is_circuit(m, second):
        raise AssertionError("triangle split produced a non-circuit")
    return [first, second]


def triangle_merge(m: BinaryMatroid, z: Iterable[str], c: Iterable[str]) -> frozenset[str]:
    """For a circuit meeting the 3-circuit ``z`` in two elements, ``c ^ z`` is a circuit."""
    z, c = frozenset(z), frozenset(c)
    if len(c & z) != 2:
        raise ValueError("c must meet z in exactly two elements")
    d = c ^ z
    if not is_circuit(m, d):
        raise AssertionError("symmetric difference with the triangle is not a circuit")
    return d
