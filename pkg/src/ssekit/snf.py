"""Smith normal form over the integers, with unimodular transforms.

All arithmetic is on Python integers; intermediate growth is routine even for
small inputs, so no fixed-width fast path is attempted here.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == diag(divisors)`` padded with zeros to the shape of M.

    ``divisors`` has length ``min(rows, cols)``; nonzero divisors come first,
    each dividing the next, followed by zeros.
    """

    U: tuple
    V: tuple
    divisors: tuple
    shape: tuple

    @property
    def rank(self):
        return sum(1 for d in self.divisors if d != 0)

    def diagonal_matrix(self):
        m, n = self.shape
        return [[self.divisors[i] if i == j and i < len(self.divisors) else 0 for j in range(n)] for i in range(m)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Pivot rule: smallest absolute nonzero entry of the active submatrix, ties
    broken by row-major position.  Deterministic for identical input.
    """
    a = [[int(x) for x in row] for row in np.asarray(M, dtype=object)]
    m = len(a)
    n = len(a[0]) if m else (np.asarray(M).shape[1] if np.asarray(M).ndim == 2 else 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    v = a[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(s, pi)
            swap_cols(s, pj)
            p = a[s][s]
            clean = True
            for i in range(s + 1, m):
                if a[i][s]:
                    add_row(s, i, -(a[i][s] // p))
                    clean = clean and a[i][s] == 0
            for j in range(s + 1, n):
                if a[s][j]:
                    add_col(s, j, -(a[s][j] // p))
                    clean = clean and a[s][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(s + 1, m) for j in range(s + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, s, 1)
        if s < m and a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            U[s] = [-x for x in U[s]]

    divisors = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(tuple(map(tuple, U)), tuple(map(tuple, V)), divisors, (m, n))


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in np.asarray(M, dtype=object)]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
