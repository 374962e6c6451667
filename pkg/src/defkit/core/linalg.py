"""Exact row reduction over the rationals.

Rows are handled sparsely as ``{column: Fraction}`` dicts.  Every basis that
leaves this module is the reduced row echelon form of its span, so results
do not depend on the order in which vectors were supplied.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

SparseRow = dict[int, Fraction]


def to_sparse(row: Sequence) -> SparseRow:
    return {j: Fraction(v) for j, v in enumerate(row) if v != 0}


def to_dense(row: SparseRow, ncols: int) -> list[Fraction]:
    out = [Fraction(0)] * ncols
    for j, v in row.items():
        out[j] = v
    return out


def axpy(acc: SparseRow, scale, row: SparseRow) -> None:
    """In place ``acc += scale * row``; drops entries that cancel."""
    if scale == 0:
        return
    for j, v in row.items():
        w = acc.get(j, 0) + scale * v
        if w:
            acc[j] = w
        else:
            acc.pop(j, None)


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a span.

    Each stored row has a leading 1 in its pivot column and zeros in every
    other pivot column, i.e. the rows always form the RREF of the span.
    """

    def __init__(self, rows: Iterable[SparseRow] = ()):
        self._pivots: dict[int, SparseRow] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._pivots)

    def reduce(self, row: SparseRow) -> SparseRow:
        r = dict(row)
        for col in sorted(set(r) & self._pivots.keys()):
            c = r.get(col)
            if c:
                axpy(r, -c, self._pivots[col])
        return r

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)

    def add(self, row: SparseRow) -> bool:
        """Insert a row; returns False when it was already in the span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        for other in self._pivots.values():
            c = other.get(p)
            if c:
                axpy(other, -c, r)
        self._pivots[p] = r
        return True

    def basis(self) -> list[SparseRow]:
        return [dict(self._pivots[p]) for p in sorted(self._pivots)]

    def coordinates(self, row: SparseRow) -> list[Fraction] | None:
        """Coefficients of ``row`` in terms of :meth:`basis`, or None."""
        if not self.contains(row):
            return None
        return [Fraction(row.get(p, 0)) for p in sorted(self._pivots)]


def rref(rows: Iterable[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    space = RowSpace(to_sparse(r) for r in rows)
    return [to_dense(r, ncols) for r in space.basis()], space.pivots


def rank(rows: Iterable[Sequence]) -> int:
    return RowSpace(to_sparse(r) for r in rows).rank


def rank_and_kernel(m: Sequence[Sequence], ncols: int | None = None) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and right kernel of a matrix given as a list of rows.

    One kernel vector per free column f: a 1 at f, zeros at the other free
    columns, and minus the RREF entries at the pivots (all of which precede f).
    """
    m = [list(r) for r in m]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    space = RowSpace(to_sparse(r) for r in m)
    return space.rank, kernel_from_space(space, ncols)


def kernel_from_space(space: RowSpace, ncols: int) -> list[tuple[Fraction, ...]]:
    pivot_rows = dict(zip(space.pivots, space.basis()))
    kernel = []
    for f in range(ncols):
        if f in pivot_rows:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in pivot_rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        kernel.append(tuple(v))
    return kernel


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def sparse_inverse(rows: Sequence[SparseRow], n: int) -> list[SparseRow]:
    """Inverse of an n x n matrix given by sparse rows; ValueError if singular.

    Row-reduces the augmented rows [m | I] and reads the inverse off the
    right half of the RREF.
    """
    space = RowSpace()
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[n + i] = Fraction(1)
        space.add(aug)
    pivots = space.pivots
    if len(pivots) != n or (pivots and pivots[-1] >= n):
        raise ValueError("matrix is singular")
    return [{j - n: v for j, v in row.items() if j >= n} for row in space.basis()]


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    return [to_dense(r, n) for r in sparse_inverse([to_sparse(r) for r in m], n)]


def complement_in(vectors: Iterable[SparseRow], ncols: int) -> list[int]:
    """Non-pivot columns of the span's RREF.

    The corresponding standard basis vectors complement the span, and the
    choice depends only on the span, not on the spanning set.
    """
    pivots = set(RowSpace(vectors).pivots)
    return [j for j in range(ncols) if j not in pivots]


def greedy_extension(base: Iterable[SparseRow], candidates: Iterable[SparseRow]) -> list[SparseRow]:
    """Candidates (in order) that are independent of ``base`` and of each other."""
    space = RowSpace(base)
    picked = []
    for c in candidates:
        if space.add(c):
            picked.append(dict(c))
    return picked
