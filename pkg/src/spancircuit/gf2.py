"""GF(2) matrices and labeled binary matroids.

Rows and vectors are Python ints used as bitsets.  A matroid column is an int
over the rows; a set of ground elements is an int over the columns (bit ``j``
is the ``j``-th label).  The public functions take and return label sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

ELEMENT_CAP = 24


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix stored as one int bitset per row."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row bits exceed the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            v = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise ValueError(f"entry {x!r} is not 0/1")
                if x:
                    v |= 1 << j
            packed.append(v)
        return cls(tuple(packed), ncols)

    @classmethod
    def from_array(cls, a) -> "Gf2Matrix":
        arr = np.asarray(a)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_rows((arr % 2).astype(int).tolist(), arr.shape[1])

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                out[i, j] = 1
        return out

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> int:
        v = 0
        for i, r in enumerate(self.rows):
            if r >> j & 1:
                v |= 1 << i
        return v

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]


def _rank_of_vectors(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def matrix_rank(m: Gf2Matrix) -> int:
    return _rank_of_vectors(m.rows)


def row_reduce(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        for i in range(r, len(rows)):
            if rows[i] & bit:
                rows[r], rows[i] = rows[i], rows[r]
                break
        else:
            continue
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def null_space(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : row . x = 0 for every row}, vectors as column bitsets."""
    red, pivots = row_reduce(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(red, pivots):
            if row >> f & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def independent_basis(vectors: Iterable[int]) -> list[int]:
    """A linearly independent list spanning the same space."""
    basis: dict[int, int] = {}
    out = []
    for v in vectors:
        w = v
        while w:
            top = w.bit_length() - 1
            if top not in basis:
                basis[top] = w
                out.append(v)
                break
            w ^= basis[top]
    return out


class BinaryMatroid:
    """A binary matroid given by a GF(2) representation with labeled columns."""

    def __init__(self, matrix: Gf2Matrix, labels: Sequence[str] | None = None):
        if labels is None:
            labels = [f"e{j}" for j in range(matrix.ncols)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != matrix.ncols:
            raise ValueError("label count does not match the column count")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        self.labels = labels
        self.cols = tuple(matrix.columns())
        self.nrows = matrix.nrows
        self._index = {x: j for j, x in enumerate(labels)}

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int, labels: Sequence[str]) -> "BinaryMatroid":
        rows = []
        for i in range(nrows):
            v = 0
            for j, c in enumerate(cols):
                if c >> i & 1:
                    v |= 1 << j
            rows.append(v)
        return cls(Gf2Matrix(tuple(rows), len(cols)), labels)

    @cached_property
    def matrix(self) -> Gf2Matrix:
        rows = []
        for i in range(self.nrows):
            v = 0
            for j, c in enumerate(self.cols):
                if c >> i & 1:
                    v |= 1 << j
            rows.append(v)
        return Gf2Matrix(tuple(rows), len(self.cols))

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"BinaryMatroid(n={len(self)}, rank={self.rank})"

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not in the ground set") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.index(x)
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(self.labels[j] for j in bits(m))

    def rank_mask(self, m: int) -> int:
        return _rank_of_vectors(self.cols[j] for j in bits(m))

    def sum_mask(self, m: int) -> int:
        v = 0
        for j in bits(m):
            v ^= self.cols[j]
        return v

    def is_circuit_mask(self, m: int) -> bool:
        # a binary circuit is a cycle whose only sub-dependency is itself
        if m == 0 or self.sum_mask(m):
            return False
        return self.rank_mask(m) == popcount(m) - 1

    @cached_property
    def rank(self) -> int:
        return _rank_of_vectors(self.cols)

    @cached_property
    def cycle_basis(self) -> tuple[int, ...]:
        return tuple(null_space(self.matrix.rows, len(self.cols)))

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1


def rank(m: Gf2Matrix | BinaryMatroid) -> int:
    if isinstance(m, BinaryMatroid):
        return m.rank
    return matrix_rank(m)


def is_independent(M: BinaryMatroid, s: Iterable[str]) -> bool:
    m = M.mask(s)
    return M.rank_mask(m) == popcount(m)


def is_cycle(M: BinaryMatroid, s: Iterable[str]) -> bool:
    return M.sum_mask(M.mask(s)) == 0


def is_circuit(M: BinaryMatroid, s: Iterable[str]) -> bool:
    return M.is_circuit_mask(M.mask(s))


def circuit_in(M: BinaryMatroid, s: Iterable[str], e: str) -> frozenset[str] | None:
    """A circuit contained in ``s`` that contains ``e``, if one exists."""
    m = M.mask(s)
    j = M.index(e)
    if not m >> j & 1:
        raise ValueError(f"{e!r} is not in the given set")
    rest = m & ~(1 << j)
    # greedy basis of s - e, then the fundamental circuit of e
    chosen: list[int] = []
    for i in bits(rest):
        if M.rank_mask(_mask_of(chosen) | 1 << i) > len(chosen):
            chosen.append(i)
    return _fundamental(M, chosen, j)


def _mask_of(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _fundamental(M: BinaryMatroid, basis_idx: Sequence[int], j: int) -> frozenset[str] | None:
    # solve sum_{i in B} a_i col_i = col_j by tracking combinations
    table: dict[int, tuple[int, int]] = {}
    for i in basis_idx:
        v, comb = M.cols[i], 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in table:
                table[top] = (v, comb)
                break
            tv, tc = table[top]
            v ^= tv
            comb ^= tc
    v, comb = M.cols[j], 1 << j
    while v:
        top = v.bit_length() - 1
        if top not in table:
            return None
        tv, tc = table[top]
        v ^= tv
        comb ^= tc
    return M.unmask(comb)


def fundamental_circuit(M: BinaryMatroid, basis: Iterable[str], e: str) -> frozenset[str]:
    """The unique circuit in ``basis + e``."""
    bmask = M.mask(basis)
    if M.rank_mask(bmask) != popcount(bmask) or popcount(bmask) != M.rank:
        raise ValueError("not a basis")
    j = M.index(e)
    if bmask >> j & 1:
        raise ValueError(f"{e!r} belongs to the basis")
    c = _fundamental(M, list(bits(bmask)), j)
    assert c is not None
    return c


def iter_cycle_space(M: BinaryMatroid):
    """Yield every nonzero cycle as a mask (Gray-code walk)."""
    basis = M.cycle_basis
    v = 0
    for g in range(1, 1 << len(basis)):
        v ^= basis[(g & -g).bit_length() - 1]
        yield v


def circuit_masks(M: BinaryMatroid, size_cap: int | None = None) -> list[int]:
    if len(M) > ELEMENT_CAP:
        raise ValueError(f"circuit enumeration is capped at {ELEMENT_CAP} elements")
    out = []
    for v in iter_cycle_space(M):
        if size_cap is not None and popcount(v) > size_cap:
            continue
        if M.is_circuit_mask(v):
            out.append(v)
    out.sort(key=lambda m: (popcount(m), m))
    return out


def enumerate_circuits(M: BinaryMatroid, size_cap: int | None = None) -> list[frozenset[str]]:
    """All circuits, smallest first."""
    return [M.unmask(m) for m in circuit_masks(M, size_cap)]


def dual(M: BinaryMatroid) -> BinaryMatroid:
    """Dual matroid; its rows span the cycle space of ``M``."""
    rows = tuple(M.cycle_basis)
    return BinaryMatroid(Gf2Matrix(rows, len(M)), M.labels)


def delete(M: BinaryMatroid, s: Iterable[str]) -> BinaryMatroid:
    drop = set(s)
    for x in drop:
        M.index(x)
    keep = [j for j, x in enumerate(M.labels) if x not in drop]
    return BinaryMatroid.from_columns([M.cols[j] for j in keep], M.nrows, [M.labels[j] for j in keep])


def contract(M: BinaryMatroid, s: Iterable[str]) -> BinaryMatroid:
    return dual(delete(dual(M), s))


def add_parallel(M: BinaryMatroid, e: str, label: str) -> BinaryMatroid:
    if label in M._index:
        raise ValueError(f"{label!r} already in the ground set")
    cols = list(M.cols) + [M.cols[M.index(e)]]
    return BinaryMatroid.from_columns(cols, M.nrows, list(M.labels) + [label])


def restrict(M: BinaryMatroid, s: Iterable[str]) -> BinaryMatroid:
    keep = set(s)
    return delete(M, [x for x in M.labels if x not in keep])


R10_LABELS = tuple(f"r{j}" for j in range(10))


def r10(labels: Sequence[str] | None = None) -> BinaryMatroid:
    """The ten weight-3 vectors of GF(2)^5."""
    cols = []
    for trio in combinations(range(5), 3):
        cols.append(sum(1 << i for i in trio))
    return BinaryMatroid.from_columns(cols, 5, labels or R10_LABELS)


def same_matroid(a: BinaryMatroid, b: BinaryMatroid) -> bool:
    """Equal ground sets and equal cycle spaces (hence equal independent sets)."""
    if set(a.labels) != set(b.labels):
        return False
    perm = [b.index(x) for x in a.labels]

    def remap(v: int) -> int:
        return _mask_of(perm[j] for j in bits(v))

    span_a = [remap(v) for v in a.cycle_basis]
    if len(span_a) != len(b.cycle_basis):
        return False
    return _rank_of_vectors(list(span_a) + list(b.cycle_basis)) == len(span_a)
