"""Exact rational scalars and small dense matrices.

Everything downstream (incidence, codimension, genericity) reduces to exact
rank / kernel / solve on matrices with rational entries.  Elimination is
fraction-free (Bareiss) over the integers after clearing denominators, with a
fixed first-nonzero pivot rule so results are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Rat = Fraction


def rat_to_str(x: Fraction | int) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    """Parse "p/q" or "p" into a canonical Fraction."""
    return Fraction(s.strip())


def clear_denominators(row: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational row by a positive integer so all entries are integers."""
    fracs = [Fraction(x) for x in row]
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return [int(x * scale) for x in fracs]


def primitive_vector(row: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Canonical projective representative: integer, content 1, first nonzero > 0.

    The zero vector maps to itself.
    """
    ints = clear_denominators(row)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def int_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of integer rows by fraction-free elimination.

    Deterministic: pivots are the first nonzero entry scanning rows in order,
    columns left to right.  Exact for arbitrary integer magnitudes.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pivrow = m[rank]
        p = pivrow[col]
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (p * ri[j] - f * pivrow[j]) // prev
            ri[col] = 0
        prev = p
        rank += 1
        if rank == ncols or rank == nrows:
            break
    return rank


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            piv = -1
            for i in range(k + 1, n):
                if m[i][k]:
                    piv = i
                    break
            if piv < 0:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            fi = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (pk * m[i][j] - fi * m[k][j]) // prev
            m[i][k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def int_kernel_vector(rows: Sequence[Sequence[int]], ncols: int) -> Optional[tuple[int, ...]]:
    """Kernel generator of an integer matrix with ncols = nrows + 1.

    When the rank is full (nrows), the one-dimensional kernel is spanned by the
    vector of signed maximal minors; returns None when the rank is deficient
    (kernel dimension >= 2).
    """
    nrows = len(rows)
    if ncols != nrows + 1:
        raise ValueError("needs exactly nrows + 1 columns")
    v = []
    for j in range(ncols):
        sub = [[r[c] for c in range(ncols) if c != j] for r in rows]
        v.append((-1) ** j * int_det(sub))
    if not any(v):
        return None
    return tuple(v)


class RowEchelon:
    """Incremental exact echelon form for integer rows with push/pop.

    Rows pushed later are reduced against earlier pivots; each stored pivot row
    is kept primitive (content 1) to bound coefficient growth.  Used by the
    genericity sweep, which explores a tree of row stacks.
    """

    __slots__ = ("ncols", "_pivots", "_log")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: list[tuple[int, list[int]]] = []  # (pivot col, reduced row)
        self._log: list[bool] = []  # per push: did rank increase

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def push(self, row: Sequence[int]) -> bool:
        """Add a row; return True if it was independent of the current stack."""
        r = list(row)
        for col, prow in self._pivots:
            f = r[col]
            if f:
                p = prow[col]
                r = [p * x - f * y for x, y in zip(r, prow)]
        col = -1
        for j in range(self.ncols):
            if r[j]:
                col = j
                break
        if col < 0:
            self._log.append(False)
            return False
        g = 0
        for x in r:
            g = gcd(g, x)
        if r[col] < 0:
            g = -g
        r = [x // g for x in r]
        self._pivots.append((col, r))
        self._log.append(True)
        return True

    def pop(self) -> None:
        if self._log.pop():
            self._pivots.pop()


def _frac_rows(rows: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]


def _rref(rows: Sequence[Sequence[Fraction | int]], ncols: int):
    """Reduced row echelon form over Q; returns (matrix, pivot column list)."""
    m = _frac_rows(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = -1
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


class RatMatrix:
    """Immutable dense matrix of exact rationals (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Fraction | int]):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(Fraction(x) for x in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "RatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Fraction | int] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, flat)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def rank(self) -> int:
        int_rows = [clear_denominators(self.row(i)) for i in range(self.rows)]
        return int_rank(int_rows, self.cols)

    def kernel(self) -> list[list[Fraction]]:
        """Canonical basis of the right nullspace (cols - rank vectors).

        Basis vectors come from the reduced echelon form: one per free column,
        with a 1 in that column, listed in ascending free-column order.
        """
        m, pivots = _rref(self.row_list(), self.cols)
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def solve(self, b: Sequence[Fraction | int]) -> Optional[list[Fraction]]:
        """A particular exact solution of M x = b, or None if inconsistent.

        Free variables are set to zero, so the answer is canonical.
        """
        if len(b) != self.rows:
            raise ValueError("rhs length does not match row count")
        aug = [list(self.row(i)) + [Fraction(b[i])] for i in range(self.rows)]
        m, pivots = _rref(aug, self.cols + 1)
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x

    def mul_vector(self, x: Sequence[Fraction | int]) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            row = self.row(i)
            out.append(sum((row[j] * Fraction(x[j]) for j in range(self.cols)), Fraction(0)))
        return out
