"""Exact rational numbers and dense matrices over Q.

Everything downstream (ring reductions, invariant subspaces, intersection
matrices, Hilbert functions) runs on this module, so there is no floating
point anywhere: entries are ``fractions.Fraction`` values, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

# Arbitrary-precision rational; lowest terms and positive denominator are
# guaranteed by the constructor.  str() renders "p/q", or "p" when q == 1.
Rational = Fraction


def rat(x, y=None) -> Rational:
    """Build a Rational from ints, strings like '3/4', or another Rational."""
    if y is not None:
        return Fraction(x, y)
    return Fraction(x)


def format_rational(x: Rational) -> str:
    """Render as 'p/q', or 'p' when the denominator is 1."""
    return str(Fraction(x))


class QMatrix:
    """A dense rectangular matrix over Q.

    Rows are lists of Fractions.  Instances are treated as immutable once
    built; the reduction routines below always return fresh matrices.
    """

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[Fraction(1 if i == j else 0) for j in range(n)]
                    for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[Fraction(0)] * ncols for _ in range(nrows)])

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"

    def entry(self, i: int, j: int) -> Rational:
        return self.rows[i][j]

    def row(self, i: int) -> list:
        return list(self.rows[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.rows[i][j] for i in range(self.nrows)]
                        for j in range(self.ncols)])

    def mul_vec(self, v: Sequence) -> list:
        v = [Fraction(x) for x in v]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum((r[j] * v[j] for j in range(self.ncols)), Fraction(0))
                for r in self.rows]


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row-echelon form and the list of pivot columns.

    Gauss-Jordan over Q; pivots move strictly rightwards and pivot entries
    are normalized to 1.  The row space is preserved exactly.
    """
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return QMatrix(rows), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: QMatrix) -> list[list[Rational]]:
    """A basis of the right null space {v : m v = 0}.

    The vectors are read off the RREF: one per non-pivot column, with a 1 in
    that column.  They are linearly independent and span the kernel, so
    rank + len(kernel) == ncols.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * m.ncols
        v[fc] = Fraction(1)
        for r_idx, pc in enumerate(pivots):
            v[pc] = -red.rows[r_idx][fc]
        basis.append(v)
    return basis


def solve(m: QMatrix, b: Sequence) -> list[Rational] | None:
    """One solution of m x = b, or None when the system is inconsistent."""
    b = [Fraction(x) for x in b]
    aug = QMatrix([row + [b[i]] for i, row in enumerate(m.rows)])
    red, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for r_idx, pc in enumerate(pivots):
        x[pc] = red.rows[r_idx][m.ncols]
    return x


class SparseEchelon:
    """Incremental echelon form for sparse rational rows.

    Rows are dicts column -> Fraction.  Used to reduce the large relation
    matrices arising from ring presentations, where rows are short but
    numerous.  Feeding rows one at a time keeps memory proportional to the
    rank.  The final RREF (back-substituted, pivots normalized to 1) is
    produced by ``finish``.
    """

    def __init__(self):
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}

    def add_row(self, row: dict[int, Fraction]) -> bool:
        """Reduce a row against the current pivots; returns True if it added
        a new pivot (i.e. was independent)."""
        row = dict(row)
        while row:
            lead = min(row)
            piv = self.pivot_rows.get(lead)
            if piv is None:
                inv = 1 / row[lead]
                self.pivot_rows[lead] = {c: v * inv for c, v in row.items()}
                return True
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return False

    def finish(self) -> dict[int, dict[int, Fraction]]:
        """Back-substitute to full RREF; returns {pivot_col: row_dict}."""
        for lead in sorted(self.pivot_rows, reverse=True):
            row = self.pivot_rows[lead]
            for other_lead, other in self.pivot_rows.items():
                if other_lead >= lead:
                    continue
                f = other.get(lead)
                if f:
                    for c, v in row.items():
                        nv = other.get(c, Fraction(0)) - f * v
                        if nv:
                            other[c] = nv
                        else:
                            other.pop(c, None)
        return self.pivot_rows

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)
