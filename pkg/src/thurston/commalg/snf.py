"""Smith normal form of integer matrices with unimodular transforms."""

from __future__ import annotations

from typing import Sequence

__all__ = ["smith_normal_form", "mat_mul", "identity", "determinant", "inverse_unimodular"]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _pick_pivot(a, t, rows, cols):
    best = None
    for j in range(t, cols):
        for i in range(t, rows):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return best


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (U, D, V) with U*A*V = D, U and V unimodular.

    D is diagonal with nonnegative entries, d_i | d_{i+1}.  The pivot at
    each stage is the entry of smallest absolute value in the remaining
    block; ties go to the leftmost column, then the topmost row, so the
    output is reproducible.  ``ncols`` gives the width of an empty matrix.
    """
    rows = len(A)
    cols = len(A[0]) if rows else (ncols or 0)
    a = [[int(x) for x in r] for r in A]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(rows, cols):
        piv = _pick_pivot(a, t, rows, cols)
        if piv is None:
            break
        _, i, j = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], -1)
                continue
            # restrict the search to row t and column t
            best = None
            for j in range(t, cols):
                v = abs(a[t][j])
                if v and (best is None or v < best[0]):
                    best = (v, t, j)
            for i in range(t + 1, rows):
                v = abs(a[i][t])
                if v and (best is None or v < best[0]):
                    best = (v, i, t)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, a, V


def inverse_unimodular(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix (exact, via rational elimination)."""
    from fractions import Fraction

    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]
