"""Matrices over K[t^{+-1}; alpha]: diagonal forms, Ore rank, torsion rank."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from gmpy2 import mpq

from ..commalg.polys import laurent_gcd, laurent_gcd_many
from .field import RatFunc, SkewField
from .ring import SkewLaurentPoly, left_divide, right_divide

__all__ = [
    "DiagonalForm",
    "diagonalize",
    "ore_rank",
    "torsion_rank_over_K",
    "harvey_estimate_check",
    "mat_mul",
    "identity_matrix",
    "zero_matrix",
]

Matrix = list  # list of rows of SkewLaurentPoly


def zero_matrix(K: SkewField, rows: int, cols: int) -> Matrix:
    return [[SkewLaurentPoly._raw(K, {}) for _ in range(cols)] for _ in range(rows)]


def identity_matrix(K: SkewField, n: int) -> Matrix:
    M = zero_matrix(K, n, n)
    for i in range(n):
        M[i][i] = SkewLaurentPoly._raw(K, {0: K.one})
    return M


def mat_mul(K: SkewField, A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    n = len(A)
    k = inner if inner is not None else (len(A[0]) if A else len(B))
    m = len(B[0]) if B else 0
    out = zero_matrix(K, n, m)
    for i in range(n):
        for j in range(m):
            acc = out[i][j]
            for l in range(k):
                if A[i][l] and B[l][j]:
                    acc = acc + A[i][l] * B[l][j]
            out[i][j] = acc
    return out


@dataclass
class DiagonalForm:
    """U * A * V = D with D zero off the leading diagonal.

    ``diag`` lists the nonzero diagonal entries p_1..p_k'.  The inverse
    matrices are filled in only when the form was requested with
    ``certify=True``.
    """

    diag: list
    rows: int
    cols: int
    U: Matrix | None = None
    V: Matrix | None = None
    U_inv: Matrix | None = None
    V_inv: Matrix | None = None
    D: Matrix | None = None

    @property
    def free_rank(self) -> int:
        return self.cols - len(self.diag)

    def span_sum(self) -> int:
        return sum(p.span() for p in self.diag)


def _weight(e: SkewLaurentPoly) -> int:
    """Rough size of the coefficients, used to break span ties."""
    total = 0
    for a in e.terms.values():
        num = getattr(a, "num", None)
        total += len(num.terms) + len(a.den.terms) if num is not None else 1
    return total


def _rational_content(polys):
    """gcd of the numerators over lcm of the denominators of all coefficients."""
    num, den = 0, 1
    for p in polys:
        for c in p.terms.values():
            c = mpq(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
    return mpq(num, den)


def _normalizer(K: SkewField, coeffs) -> object | None:
    """c in K with c * b polynomial and primitive for every b in coeffs.

    Over Q primitive means integral with coprime coefficients as well.
    None when no rescaling is needed.
    """
    coeffs = list(coeffs)
    if not coeffs:
        return None
    L = None
    for b in coeffs:
        if not b.den.is_constant():
            L = b.den if L is None else L * b.den.exact_div(laurent_gcd(L, b.den))
    nums = [b.num if L is None else b.num * L.exact_div(b.den) for b in coeffs]
    G = laurent_gcd_many(nums)
    # G is primitive, so by Gauss the content of the quotients is that of the nums
    q = _rational_content(nums) if K.base.degree == 1 else 1
    if L is None:
        if G.is_monomial() and q == 1:
            return None
        return K.poly(G * q).inverse()
    return RatFunc(K, L, G * q)


def _left_normalizer(K, row):
    # (c x)_i = alpha^i(c) x_i, so normalize the alpha^-i(x_i)
    return _normalizer(K, (K.alpha(a, -i) for x in row if x for i, a in x.terms.items()))


def _right_normalizer(K, col):
    return _normalizer(K, (a for x in col if x for a in x.terms.values()))

def diagonalize(A: Sequence[Sequence[SkewLaurentPoly]], K: SkewField, cols: int | None = None,
                certify: bool = False) -> DiagonalForm:
    """Bring A to diagonal form by elementary row/column operations.

    The pivot is an entry of minimal span in the remaining block; ties go
    to the smallest pivot coefficients, then to the pivot whose row and
    column carry the least (a Markowitz-style cost), then row-major order.
    Entries below it are reduced on the left (row operations act by left
    multiplication), entries to its right on the right.  While a
    remainder survives in the pivot row or column, the next pivot is taken
    among those remainders; its span strictly drops each round.  No
    divisibility chain is enforced on the diagonal.

    Over a rational function field each reduced row (column), and every
    row and column of the block left after a stage, is rescaled by a unit
    of K so that its coefficients are coprime integral polynomials; this
    keeps the rational functions small and changes no span.
    """
    r = len(A)
    c = len(A[0]) if r else (cols or 0)
    a = [list(row) for row in A]
    track = certify
    content = K.k > 0
    if track:
        U, Ui = identity_matrix(K, r), identity_matrix(K, r)
        V, Vi = identity_matrix(K, c), identity_matrix(K, c)

    def swap_rows(i, k):
        if i == k:
            return
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        if j == k:
            return
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def row_op(i, t, q, s=None):  # row_i = s * row_i - q * row_t, s in K
        if s is not None:
            a[i] = [x.scale_left(s) if x else x for x in a[i]]
        if q:
            a[i] = [x - q * y if y else x for x, y in zip(a[i], a[t])]
        if track:
            if s is not None:
                U[i] = [x.scale_left(s) if x else x for x in U[i]]
            if q:
                U[i] = [x - q * y if y else x for x, y in zip(U[i], U[t])]
            si = K.inv(s) if s is not None else None
            for row in Ui:  # column i *= s^-1, then column t += column i * q
                if row[i]:
                    if si is not None:
                        row[i] = row[i].scale_right(si)
                    if q:
                        row[t] = row[t] + row[i] * q

    def col_op(j, t, q, s=None):  # col_j = col_j * s - col_t * q
        for row in a:
            if s is not None and row[j]:
                row[j] = row[j].scale_right(s)
            if q and row[t]:
                row[j] = row[j] - row[t] * q
        if track:
            for row in V:
                if s is not None and row[j]:
                    row[j] = row[j].scale_right(s)
                if q and row[t]:
                    row[j] = row[j] - row[t] * q
            if s is not None:
                si = K.inv(s)
                Vi[j] = [x.scale_left(si) if x else x for x in Vi[j]]
            if q:
                Vi[t] = [x + q * y if y else x for x, y in zip(Vi[t], Vi[j])]

    def tidy_row(i):
        s = _left_normalizer(K, a[i])
        if s is not None:
            row_op(i, i, None, s)

    def tidy_col(j):
        s = _right_normalizer(K, [row[j] for row in a])
        if s is not None:
            col_op(j, j, None, s)

    def reduce_below(i, t):
        q, _ = left_divide(a[i][t], a[t][t])
        if q:
            row_op(i, t, q)
            if content:
                tidy_row(i)

    def reduce_right(t, j):
        q, _ = right_divide(a[t][j], a[t][t])
        if q:
            col_op(j, t, q)
            if content:
                tidy_col(j)

    def pick(t, cross=False):
        # minimal span first, then a Markowitz-style cost: the size of what
        # the pivot's row and column will be multiplied into
        cand = []
        if cross:  # only the remainders left in row t and column t
            cells = [(i, t) for i in range(t, r)] + [(t, j) for j in range(t + 1, c)]
        else:
            cells = [(i, j) for i in range(t, r) for j in range(t, c)]
        for i, j in cells:
            if a[i][j]:
                cand.append((a[i][j].span(), i, j))
        if not cand:
            return None
        smin = min(k[0] for k in cand)
        best = None
        for s, i, j in cand:
            if s != smin:
                continue
            cost = sum(_weight(a[i][l]) + a[i][l].span() for l in range(t, c) if l != j and a[i][l])
            cost += sum(_weight(a[l][j]) + a[l][j].span() for l in range(t, r) if l != i and a[l][j])
            key = (s, _weight(a[i][j]), cost, i, j)
            if best is None or key < best:
                best = key
        return best[0], best[1], best[3], best[4]

    diag = []
    t = 0
    while t < min(r, c):
        best = pick(t)
        if best is None:
            break
        while True:
            i, j = best[2], best[3]
            swap_rows(t, i)
            swap_cols(t, j)
            for i in range(t + 1, r):
                if a[i][t]:
                    reduce_below(i, t)
            for j in range(t + 1, c):
                if a[t][j]:
                    reduce_right(t, j)
            if not any(a[i][t] for i in range(t + 1, r)) and not any(a[t][j] for j in range(t + 1, c)):
                break
            best = pick(t, cross=True)
        if content:
            for i in range(t + 1, r):
                tidy_row(i)
            for j in range(t + 1, c):
                tidy_col(j)
        diag.append(a[t][t])
        t += 1
    form = DiagonalForm(diag=diag, rows=r, cols=c)
    if track:
        form.U, form.V, form.U_inv, form.V_inv, form.D = U, V, Ui, Vi, a
    return form


def torsion_rank_over_K(d: DiagonalForm) -> tuple[bool, int]:
    """(no free part, sum of spans of the diagonal).

    Units t^i a contribute nothing, since Lambda / unit = 0.
    """
    return d.free_rank == 0, d.span_sum()


def _gcld(a: SkewLaurentPoly, b: SkewLaurentPoly) -> SkewLaurentPoly:
    """A greatest common left divisor (right-division Euclid)."""
    while b:
        _, rem = right_divide(a, b)
        a, b = b, rem
    return a


def _monic_unit(f: SkewLaurentPoly) -> SkewLaurentPoly:
    """The unit w = t^lo c with w^-1 f of lowest degree 0 and top coefficient 1."""
    lo = f.min_degree()
    d, top = f.top()
    # (t^lo c) g = f forces alpha^(d - lo)(c) * top(g) = top(f)
    return SkewLaurentPoly._raw(f.K, {lo: f.K.alpha(top, lo - d)})


def _strip_left_content(row: list) -> list:
    """Divide a row on the left by a greatest common left divisor.

    When that divisor is a unit the row is instead normalized so its first
    nonzero entry starts in degree 0 with top coefficient 1.  The row space
    over the quotient field does not change.
    """
    entries = [e for e in row if e]
    if not entries:
        return row
    d = entries[0]
    for e in entries[1:]:
        if d.is_unit():
            break
        d = _gcld(d, e)
    if d.is_unit():
        d = _monic_unit(entries[0])
    out = []
    for e in row:
        if e:
            q, rem = right_divide(e, d)
            assert not rem
            out.append(q)
        else:
            out.append(e)
    return out


def ore_rank(A: Sequence[Sequence[SkewLaurentPoly]], K: SkewField) -> int:
    """Rank over the Ore quotient field from a row echelon form.

    Only row operations and column permutations are used.  Each stage
    picks a minimal-span entry of the remaining block as pivot, then clears
    its column by a left-division Euclid on the rows (row_i -= q * row_p),
    stripping each new row of its left content to curb coefficient growth.
    This path shares nothing with :func:`diagonalize` beyond the ring
    arithmetic, so the two serve as cross-checks.
    """
    a = [_strip_left_content(list(row)) for row in A]
    r = len(a)
    cols = list(range(len(a[0]) if r else 0))
    row = 0
    while row < r and cols:
        best = None
        for j in cols:
            for i in range(row, r):
                if a[i][j]:
                    key = (a[i][j].span(), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, p, col = best
        cols.remove(col)
        while True:
            live = [i for i in range(row, r) if a[i][col]]
            p = min(live, key=lambda i: (a[i][col].span(), i))
            a[row], a[p] = a[p], a[row]
            rest = [i for i in range(row + 1, r) if a[i][col]]
            if not rest:
                break
            piv = a[row][col]
            for i in rest:
                q, _ = left_divide(a[i][col], piv)
                a[i] = _strip_left_content([x - q * y if y else x for x, y in zip(a[i], a[row])])
        row += 1
    return row


def harvey_estimate_check(A: Sequence[Sequence[object]], B: Sequence[Sequence[object]], K: SkewField) -> bool:
    """Is rk_K Tors of the module presented by A + tB at most min(l, m)?"""
    l = len(A)
    m = len(A[0]) if l else 0
    M = [[SkewLaurentPoly(K, {0: A[i][j], 1: B[i][j]}) for j in range(m)] for i in range(l)]
    form = diagonalize(M, K, m)
    return form.span_sum() <= min(l, m)
