"""Exact integer/rational linear-algebra kernel.

Everything in this module is exact: integer matrices use Python's
arbitrary-precision ints, rational matrices use ``fractions.Fraction``,
and comparisons against irrational g-th roots are decided by integer
power comparison.  No floating point anywhere.

The matrices handled here are tiny (at most 16x16), so the algorithms
favour simplicity and determinism over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        if not all(isinstance(e, int) for e in self.entries):
            raise ValueError("entries must be integers")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        rows = self.to_rows()
        cols = other.transpose().to_rows()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(sum(a * b for a, b in zip(r, c)) for r in rows for c in cols),
        )

    def principal_submatrix(self, indices: Sequence[int]) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(len(idx), len(idx), tuple(self.at(i, j) for i in idx for j in idx))

    def is_alternating(self) -> bool:
        if self.rows != self.cols:
            return False
        n = self.rows
        return all(self.at(i, i) == 0 for i in range(n)) and all(
            self.at(i, j) == -self.at(j, i) for i in range(n) for j in range(i + 1, n)
        )

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self.at(i, i) for i in range(min(self.rows, self.cols)))


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``U @ m @ V = S`` with unimodular U, V.

    S is diagonal with nonnegative entries, each dividing the next.
    Pivot choice: smallest nonzero absolute value, ties broken by lowest
    row then column index, so the elimination path is deterministic.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    u = IntMatrix.identity(nrows).to_rows()
    v = IntMatrix.identity(ncols).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        # row_dst += factor * row_src
        arow, srow = a[dst], a[src]
        for jj in range(ncols):
            arow[jj] += factor * srow[jj]
        urow, usrc = u[dst], u[src]
        for jj in range(nrows):
            urow[jj] += factor * usrc[jj]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0:
                    key = (abs(a[i][j]), i, j)
                    if pivot is None or key < pivot:
                        pivot = key
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)

        piv = a[t][t]
        dirty = False
        for i in range(nrows):
            if i != t and a[i][t] != 0:
                add_row(t, i, -(a[i][t] // piv))
                if a[i][t] != 0:
                    dirty = True
        for j in range(ncols):
            if j != t and a[t][j] != 0:
                add_col(t, j, -(a[t][j] // piv))
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue

        # Ensure the pivot divides every remaining entry before locking it in.
        absorbed = False
        for i in range(t + 1, nrows):
            if any(a[i][j] % piv for j in range(t + 1, ncols)):
                add_row(i, t, 1)
                absorbed = True
                break
        if absorbed:
            continue
        t += 1

    return (
        IntMatrix.from_rows(u),
        IntMatrix.from_rows(a),
        IntMatrix.from_rows(v),
    )


def _pfaffian_mask(flat: list[list[int]], mask: int, memo: dict[int, int]) -> int:
    if mask == 0:
        return 1
    cached = memo.get(mask)
    if cached is not None:
        return cached
    idx = [i for i in range(len(flat)) if mask >> i & 1]
    i0 = idx[0]
    row = flat[i0]
    total = 0
    sign = 1
    for pos in range(1, len(idx)):
        j = idx[pos]
        entry = row[j]
        if entry:
            total += sign * entry * _pfaffian_mask(flat, mask & ~(1 << i0) & ~(1 << j), memo)
        sign = -sign
    memo[mask] = total
    return total


def pfaffian(a: IntMatrix) -> int:
    """Pfaffian of an alternating integer matrix of even dimension.

    Computed by recursive expansion along the first row, memoized over
    index subsets.  The sign convention satisfies
    ``pfaffian([[0, 1], [-1, 0]]) == 1`` and ``pfaffian(A)**2 == det(A)``.
    """
    if a.rows != a.cols:
        raise ValueError("pfaffian requires a square matrix")
    if a.rows % 2 != 0:
        raise ValueError("pfaffian requires even dimension")
    if not a.is_alternating():
        raise ValueError("pfaffian requires an alternating matrix")
    return _pfaffian_mask(a.to_rows(), (1 << a.rows) - 1, {})


class PfaffianCache:
    """Pfaffians of all principal submatrices of one alternating matrix.

    The recursive expansion over index bitmasks computes the Pfaffian of
    every even-size principal submatrix along the way, so restriction
    queries share a single memo table.
    """

    def __init__(self, a: IntMatrix):
        if a.rows != a.cols or a.rows % 2 != 0 or not a.is_alternating():
            raise ValueError("expected an alternating matrix of even dimension")
        self._flat = a.to_rows()
        self._memo: dict[int, int] = {}

    def pfaffian_of(self, indices: Sequence[int]) -> int:
        mask = 0
        for i in indices:
            mask |= 1 << i
        if bin(mask).count("1") % 2 != 0:
            raise ValueError("index set must have even size")
        return _pfaffian_mask(self._flat, mask, self._memo)


def leading_minors_all_positive(rows: list[list[int]]) -> bool:
    """Whether every leading principal minor of an integer matrix is positive.

    Fraction-free Bareiss elimination: after step k the pivot equals the
    k-th leading principal minor, so the check can stop at the first
    nonpositive pivot.  The input is consumed.
    """
    n = len(rows)
    prev = 1
    for k in range(n):
        piv = rows[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            row_i, row_k = rows[i], rows[k]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - aik * row_k[j]) // prev
        prev = piv
    return True


def is_positive_definite(s: Sequence[Sequence[Fraction | int]]) -> bool:
    """Exact positive-definiteness test via leading principal minors.

    The input must be symmetric (checked; asymmetry raises, since in
    this artifact it signals a pairing that is not compatible with the
    complex structure).  Gaussian elimination without row exchanges
    yields the pivots, whose running products are the leading minors;
    the matrix is positive definite iff every pivot is positive.
    """
    n = len(s)
    a = [[Fraction(x) for x in row] for row in s]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    for k in range(n):
        piv = a[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] / piv
                row_i, row_k = a[i], a[k]
                for j in range(k, n):
                    row_i[j] -= factor * row_k[j]
    return True


def integer_root(n: int, g: int) -> int:
    """Largest m with m**g <= n, by integer Newton iteration."""
    if n < 1 or g < 1:
        raise ValueError("integer_root requires n >= 1 and g >= 1")
    if g == 1 or n == 1:
        return n
    # Start from a power of two guaranteed to be >= n**(1/g).
    x = 1 << -(-n.bit_length() // g)
    while True:
        y = ((g - 1) * x + n // x ** (g - 1)) // g
        if y >= x:
            break
        x = y
    return x
