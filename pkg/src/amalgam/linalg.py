"""Dense exact rational matrices and fraction-free elimination.

Rank and nullspace go through integer matrices: each row is cleared of
denominators and reduced with Bareiss' fraction-free update, so every
intermediate entry is a minor of the input and no fractions appear.
"""
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: Optional[int] = None):
        self.entries = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for row in self.entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, entries, rows, cols):
        obj = cls.__new__(cls)
        obj.entries, obj.rows, obj.cols = entries, rows, cols
        return obj

    @classmethod
    def zeros(cls, rows, cols):
        return cls._raw([[Fraction(0)] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, size):
        m = cls.zeros(size, size)
        for i in range(size):
            m.entries[i][i] = Fraction(1)
        return m

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RationalMatrix"]]):
        rows = []
        for block_row in blocks:
            height = block_row[0].rows
            for i in range(height):
                row = []
                for b in block_row:
                    row.extend(b.entries[i])
                rows.append(row)
        cols = len(rows[0]) if rows else 0
        return cls._raw(rows, len(rows), cols)

    @classmethod
    def vstack(cls, mats):
        return cls.block([[m] for m in mats])

    @classmethod
    def hstack(cls, mats):
        return cls.block([list(mats)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return RationalMatrix._raw(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.rows, self.cols)

    def __neg__(self):
        return RationalMatrix._raw([[-x for x in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return RationalMatrix._raw([[x * c for x in r] for r in self.entries], self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = Fraction(0)
        out = []
        other_rows = other.entries
        for row in self.entries:
            acc = [zero] * other.cols
            for k, x in enumerate(row):
                if x:
                    ok = other_rows[k]
                    for j, y in enumerate(ok):
                        if y:
                            acc[j] += x * y
            out.append(acc)
        return RationalMatrix._raw(out, self.rows, other.cols)

    def transpose(self):
        return RationalMatrix._raw([list(c) for c in zip(*self.entries)] if self.rows else [],
                                   self.cols, self.rows)

    T = property(transpose)

    def is_zero(self):
        return all(not x for row in self.entries for x in row)

    def is_symmetric(self):
        return self == self.transpose()

    def columns(self, indices):
        return RationalMatrix._raw([[row[j] for j in indices] for row in self.entries],
                                   self.rows, len(indices))

    def integer_rows(self) -> List[List[int]]:
        """Rows scaled by the lcm of their denominators (row space unchanged)."""
        out = []
        for row in self.entries:
            den = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * den) for x in row])
        return out

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def bareiss_rank(int_rows: List[List[int]], col_order: Optional[Sequence[int]] = None) -> int:
    """Rank of an integer matrix by fraction-free forward elimination."""
    if not int_rows:
        return 0
    ncols = len(int_rows[0])
    order = list(col_order) if col_order is not None else list(range(ncols))
    # permute columns so the pivot search runs left to right
    rows = [[row[j] for j in order] for row in int_rows if any(row)]
    rank, prev = 0, 1
    nrows = len(rows)
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot_row = rows[rank]
        pv = pivot_row[c]
        tail = pivot_row[c + 1:]
        for i in range(rank + 1, nrows):
            row = rows[i]
            mi = row[c]
            if mi:
                row[c + 1:] = [(pv * x - mi * y) // prev for x, y in zip(row[c + 1:], tail)]
            elif prev != pv:
                row[c + 1:] = [pv * x // prev for x in row[c + 1:]]
            row[c] = 0
        prev = pv
        rank += 1
    return rank


def rank(M: RationalMatrix, col_order=None) -> int:
    return bareiss_rank(M.integer_rows(), col_order)


def nullspace_dim(M: RationalMatrix, col_order=None) -> int:
    return M.cols - rank(M, col_order)


def fraction_free_rref(int_rows: List[List[int]]):
    """Fraction-free Gauss-Jordan.

    Returns ``(rows, pivots, scale)`` where row ``i`` has the value ``scale``
    in column ``pivots[i]`` and zero in every other pivot column.
    """
    rows = [list(r) for r in int_rows if any(r)]
    if not rows:
        return [], [], 1
    ncols = len(rows[0])
    nrows = len(rows)
    rank, prev, pivots = 0, 1, []
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot_row = rows[rank]
        pv = pivot_row[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = rows[i]
            mi = row[c]
            if mi:
                rows[i] = [(pv * x - mi * y) // prev for x, y in zip(row, pivot_row)]
            elif pv != prev:
                rows[i] = [pv * x // prev for x in row]
        prev = pv
        pivots.append(c)
        rank += 1
    return rows[:rank], pivots, prev


def nullspace(M: RationalMatrix) -> RationalMatrix:
    """Basis of the right kernel as the columns of an integer matrix."""
    rows, pivots, scale = fraction_free_rref(M.integer_rows())
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = scale
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    if not basis:
        return RationalMatrix._raw([[] for _ in range(M.cols)], M.cols, 0)
    return RationalMatrix([list(c) for c in zip(*basis)])


def column_basis(M: RationalMatrix) -> RationalMatrix:
    """Linearly independent columns of ``M`` spanning its column space."""
    _, pivots, _ = fraction_free_rref(M.integer_rows())
    return M.columns(pivots)


def gauss_jordan_rank(M: RationalMatrix) -> int:
    """Rank by plain Fraction elimination; the slow reference path."""
    rows = [list(r) for r in M.entries]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
