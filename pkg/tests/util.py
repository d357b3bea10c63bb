"""Independent oracles shared by the test modules.

The determinant here is intentionally computed by plain fraction
Gaussian elimination so that Pfaffian and Smith-form assertions are
checked against a path that shares no code with the library kernel.
"""

from fractions import Fraction
import random

from betabound import IntMatrix


def exact_det(m: IntMatrix) -> Fraction:
    """Determinant by fraction Gaussian elimination with partial pivoting."""
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.to_rows()]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return det


def random_alternating(rng: random.Random, dim: int, max_entry: int = 100) -> IntMatrix:
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            x = rng.randint(-max_entry, max_entry)
            rows[i][j] = x
            rows[j][i] = -x
    return IntMatrix.from_rows(rows)
