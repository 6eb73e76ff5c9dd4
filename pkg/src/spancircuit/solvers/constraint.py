"""Circuit constraints shared by the spanning-circuit solvers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from ..decomp import BasicNode, ConflictTree
from ..gf2 import BinaryMatroid, is_circuit

Labels = frozenset[str]


@dataclass(frozen=True, eq=False)
class CircuitConstraint:
    """A circuit-search instance.

    A circuit ``C`` is feasible when it contains ``terminals``, meets every
    set ``X`` of ``xs`` in one of the allowed subsets ``menu[X]`` and, when
    ``z = (Z, t)`` is given, ``C ^ Z`` is a circuit and ``C & Z == {t}``.
    Weighted instances (``weights`` set) also require

        omega(C) = w(C - T - L) + sum of xweights[X][C & X]  <=  k

    where ``L`` is the union of ``xs``.  Unweighted instances ignore ``k``.
    """

    matroid: BasicNode | ConflictTree
    terminals: Labels = frozenset()
    xs: tuple[Labels, ...] = ()
    menu: Mapping[Labels, tuple[Labels, ...]] = field(default_factory=dict)
    z: tuple[Labels, str] | None = None
    weights: Mapping[str, int] | None = None
    xweights: Mapping[Labels, Mapping[Labels, int]] = field(default_factory=dict)
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "xs", tuple(frozenset(x) for x in self.xs))
        if self.z is not None:
            zset, t = self.z
            object.__setattr__(self, "z", (frozenset(zset), t))

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def is_tree(self) -> bool:
        return isinstance(self.matroid, ConflictTree)

    @property
    def binary(self) -> BinaryMatroid:
        return self.matroid.matroid

    @property
    def ground(self) -> frozenset[str]:
        if self.is_tree:
            return self.matroid.ground
        return frozenset(self.matroid.labels)

    @property
    def covered(self) -> frozenset[str]:
        out: set[str] = set()
        for x in self.xs:
            out |= x
        return frozenset(out)

    def check(self) -> None:
        """Raise ValueError when the instance breaks its structural rules."""
        ground = self.ground
        if not self.terminals <= ground:
            raise ValueError("terminals outside the ground set")
        seen: set[str] = set()
        for x in self.xs:
            if not x <= ground:
                raise ValueError(f"constraint set {sorted(x)} leaves the ground set")
            if x & seen or x & self.terminals:
                raise ValueError("constraint sets must be disjoint from each other and from T")
            seen |= x
            for y in self.menu.get(x, ()):
                if not y <= x:
                    raise ValueError("menu entry is not a subset of its constraint set")
        if self.z is not None:
            zset, t = self.z
            if len(zset) != 3 or t not in zset:
                raise ValueError("z must be a triple containing its tip")
            if zset & (self.terminals | seen):
                raise ValueError("z must avoid T and the constraint sets")

    def weight_of(self, label: str) -> int:
        if self.weights is None:
            return 1
        return self.weights[label]

    def omega(self, c: Iterable[str]) -> int:
        c = frozenset(c)
        cov = self.covered
        total = sum(self.weight_of(x) for x in c - self.terminals - cov)
        for x in self.xs:
            total += self.xweights.get(x, {}).get(c & x, 0)
        return total

    def is_feasible(self, c: Iterable[str], matroid: BinaryMatroid | None = None) -> bool:
        c = frozenset(c)
        m = matroid if matroid is not None else self.binary
        if not self.terminals <= c or not c <= frozenset(m.labels):
            return False
        for x in self.xs:
            if (c & x) not in set(self.menu.get(x, ())):
                return False
        if self.z is not None:
            zset, t = self.z
            if c & zset != {t} or not is_circuit(m, c ^ zset):
                return False
        if not is_circuit(m, c):
            return False
        if self.weighted and self.omega(c) > self.k:
            return False
        return True

    def with_(self, **kw) -> "CircuitConstraint":
        return replace(self, **kw)

    def restricted_to(self, node: BasicNode, **kw) -> "CircuitConstraint":
        """The part of the instance living on one node, with overrides."""
        labels = frozenset(node.labels)
        xs = tuple(x for x in self.xs if x <= labels)
        base = dict(
            matroid=node,
            terminals=self.terminals & labels,
            xs=xs,
            menu={x: self.menu[x] for x in xs},
            z=None,
            weights=None if self.weights is None else {
                x: self.weights.get(x, 1) for x in labels
            },
            xweights={x: self.xweights[x] for x in xs if x in self.xweights},
            k=self.k,
        )
        base.update(kw)
        return CircuitConstraint(**base)


@dataclass(frozen=True)
class Outcome:
    """Verdict plus witness.  ``weight`` is the objective of the witness."""

    witness: frozenset[str] | None
    weight: int | None = None

    @property
    def yes(self) -> bool:
        return self.witness is not None

    def __bool__(self) -> bool:
        return self.yes


NO = Outcome(None, None)
