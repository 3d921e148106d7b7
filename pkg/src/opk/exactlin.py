"""Exact rational scalars and sparse linear algebra.

Every computation in this package bottoms out here: ranks, kernels and
linear solves over Q, with no floating point anywhere.  Scalars are
``fractions.Fraction`` (always lowest terms, positive denominator,
arbitrary precision).  Matrices are sparse maps (row, col) -> nonzero
Fraction.

Elimination is plain rational Gaussian elimination with pivot selection
biased toward sparse rows/columns; bar-type complexes at weight <= 6
reach thousands of columns, so avoiding fill-in matters more than
constant factors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to an exact Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact scalar: %r (floats are not allowed)" % (x,))


class SparseMatrix:
    """Immutable sparse matrix over Q.

    entries maps (i, j) -> nonzero Fraction with 0 <= i < rows,
    0 <= j < cols.  Zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                v = scalar(v)
                if v == 0:
                    continue
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(
                        "entry (%d, %d) outside %dx%d matrix" % (i, j, rows, cols)
                    )
                clean[(i, j)] = v
        self.entries = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = scalar(v)
                if v != 0:
                    ent[(i, j)] = v
        return cls(nr, nc, ent)

    # -- basic queries ---------------------------------------------------

    def at(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def to_rows(self):
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, len(self.entries))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            s = ent.get(k, ZERO) + v
            if s == 0:
                ent.pop(k, None)
            else:
                ent[k] = s
        return SparseMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "SparseMatrix":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "SparseMatrix":
        c = scalar(c)
        if c == 0:
            return SparseMatrix(self.rows, self.cols)
        return SparseMatrix(
            self.rows, self.cols, {k: c * v for k, v in self.entries.items()}
        )

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        by_row = {}
        for (i, j), v in self.entries.items():
            by_row.setdefault(i, []).append((j, v))
        other_rows = {}
        for (j, k), w in other.entries.items():
            other_rows.setdefault(j, []).append((k, w))
        ent = {}
        for i, terms in by_row.items():
            acc = {}
            for j, v in terms:
                for k, w in other_rows.get(j, ()):
                    acc[k] = acc.get(k, ZERO) + v * w
            for k, s in acc.items():
                if s != 0:
                    ent[(i, k)] = s
        return SparseMatrix(self.rows, other.cols, ent)

    def __matmul__(self, other):
        return self.matmul(other)

    def mul_vec(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def column(self, j: int) -> list:
        return [self.at(i, j) for i in range(self.rows)]


# -- elimination -----------------------------------------------------------


def _echelon(rows: list, ncols: int):
    """Destructive row echelon on a list of {col: coeff} dicts.

    Returns the list of pivot columns in elimination order.  Pivot choice:
    among uneliminated rows, prefer the shortest row, then its sparsest
    column -- cheap fill-in avoidance that keeps bar-complex matrices
    tractable.
    """
    pivots = []
    live = [r for r in range(len(rows)) if rows[r]]
    used_cols = set()
    while live:
        r_best = min(live, key=lambda r: (len(rows[r]), r))
        row = rows[r_best]
        col_weight = {}
        for r in live:
            for c in rows[r]:
                col_weight[c] = col_weight.get(c, 0) + 1
        piv_col = min(row, key=lambda c: (col_weight[c], c))
        piv_val = row[piv_col]
        pivots.append((r_best, piv_col))
        used_cols.add(piv_col)
        live.remove(r_best)
        for r in list(live):
            other = rows[r]
            coeff = other.get(piv_col)
            if coeff is None:
                continue
            factor = coeff / piv_val
            for c, v in row.items():
                s = other.get(c, ZERO) - factor * v
                if s == 0:
                    other.pop(c, None)
                else:
                    other[c] = s
            if not other:
                live.remove(r)
    return pivots


def rank(m: SparseMatrix) -> int:
    """Exact rank over Q."""
    rows = m.row_dicts()
    return len(_echelon(rows, m.cols))


def kernel_basis(m: SparseMatrix) -> list:
    """Exact basis of the null space {v : m v = 0}, as column vectors.

    The number of vectors is cols - rank(m) and each is returned as a
    dense list of Fractions of length cols.
    """
    rows = m.row_dicts()
    pivots = _echelon(rows, m.cols)
    pivot_cols = [c for (_, c) in pivots]
    pivot_rows = [rows[r] for (r, _) in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]

    basis = []
    for f in free_cols:
        v = [ZERO] * m.cols
        v[f] = ONE
        # Back-substitute in reverse elimination order.
        for (row, pc) in reversed(list(zip(pivot_rows, pivot_cols))):
            s = ZERO
            for c, coeff in row.items():
                if c != pc and v[c]:
                    s += coeff * v[c]
            if s:
                v[pc] = -s / row[pc]
        basis.append(v)
    return basis


def solve(m: SparseMatrix, b: Sequence) -> Optional[list]:
    """Some exact solution x of m x = b, or None if inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    rows = m.row_dicts()
    aug_col = m.cols  # virtual column index for b
    for i, bv in enumerate(b):
        bv = scalar(bv)
        if bv != 0:
            rows[i][aug_col] = bv

    # Eliminate but never pivot on the augmented column.
    pivots = []
    live = [r for r in range(len(rows)) if rows[r]]
    while live:
        candidates = [r for r in live if any(c != aug_col for c in rows[r])]
        if not candidates:
            break
        r_best = min(candidates, key=lambda r: (len(rows[r]), r))
        row = rows[r_best]
        piv_col = min(c for c in row if c != aug_col)
        piv_val = row[piv_col]
        pivots.append((r_best, piv_col))
        live.remove(r_best)
        for r in list(live):
            other = rows[r]
            coeff = other.get(piv_col)
            if coeff is None:
                continue
            factor = coeff / piv_val
            for c, v in row.items():
                s = other.get(c, ZERO) - factor * v
                if s == 0:
                    other.pop(c, None)
                else:
                    other[c] = s
            if not other:
                live.remove(r)

    # Inconsistent iff a leftover row is 0 = nonzero.
    for r in live:
        if rows[r] and set(rows[r]) == {aug_col}:
            return None

    x = [ZERO] * m.cols
    for (r, pc) in reversed(pivots):
        row = rows[r]
        s = row.get(aug_col, ZERO)
        for c, coeff in row.items():
            if c not in (pc, aug_col) and x[c]:
                s -= coeff * x[c]
        x[pc] = s / row[pc]
    # Verify exactly; elimination bugs must never escape silently.
    if m.mul_vec(x) != [scalar(v) for v in b]:
        return None
    return x
