"""First elementary ideal, the twisted Alexander polynomial and its norm."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .polys import LaurentPoly, laurent_gcd_many

__all__ = [
    "laurent_determinant",
    "elementary_ideal_gens",
    "gcd_of_minors",
    "alexander_fox_norm",
    "NewtonPolytope",
    "newton_polytope",
    "pushed_alexander_matrix",
    "delta_sigma",
]


def laurent_determinant(rows: Sequence[Sequence[LaurentPoly]], zero: LaurentPoly) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so the divisions by
    the previous pivot are exact in the Laurent ring.
    """
    n = len(rows)
    if n == 0:
        return zero.one()
    a = [list(r) for r in rows]
    sign = 1
    prev = zero.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * p - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
        prev = p
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _minors(A, size, zero):
    r = len(A)
    m = len(A[0]) if r else 0
    for rows in combinations(range(r), size):
        for cols in combinations(range(m), size):
            yield laurent_determinant([[A[i][j] for j in cols] for i in rows], zero)


def elementary_ideal_gens(A: Sequence[Sequence[LaurentPoly]], m: int, zero: LaurentPoly) -> list[LaurentPoly]:
    """All (m-1)-minors of the r x m matrix A (relations are rows).

    A 0x0 minor is 1; with fewer than m-1 rows the ideal is zero.
    """
    size = m - 1
    if size < 0:
        return [zero]
    if len(A) < size:
        return [zero]
    return list(_minors(A, size, zero))


def gcd_of_minors(A: Sequence[Sequence[LaurentPoly]], m: int, zero: LaurentPoly) -> LaurentPoly:
    """gcd of the (m-1)-minors, stopping early once it is a unit."""
    size = m - 1
    if size < 0 or len(A) < size:
        return zero
    g = laurent_gcd_many(_minors(A, size, zero))
    if g is None:
        return zero
    return g.normalize_unit() if g else g


def alexander_fox_norm(delta: LaurentPoly, psi: Sequence[int]) -> int:
    """max |psi(g) - psi(g')| over the support of delta; 0 for delta = 0."""
    if delta.is_zero():
        return 0
    psi = tuple(psi)
    if len(psi) != delta.nvars:
        raise ValueError(f"class has {len(psi)} coordinates, polynomial has {delta.nvars} variables")
    vals = [sum(a * b for a, b in zip(psi, e)) for e in delta.terms]
    return max(vals) - min(vals)


@dataclass(frozen=True)
class NewtonPolytope:
    vertices: tuple[tuple[int, ...], ...]

    def width(self, psi: Sequence[int]) -> int:
        vals = [sum(a * b for a, b in zip(psi, v)) for v in self.vertices]
        return max(vals) - min(vals)

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _is_vertex_lp(p, others) -> bool:
    """p is extreme unless it is a convex combination of the other points."""
    import numpy as np
    from scipy.optimize import linprog

    if not others:
        return True
    Q = np.array(others, dtype=float).T
    A_eq = np.vstack([Q, np.ones((1, Q.shape[1]))])
    b_eq = np.array(list(p) + [1.0])
    res = linprog(np.zeros(Q.shape[1]), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status != 0


def newton_polytope(delta: LaurentPoly) -> NewtonPolytope:
    if delta.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    pts = sorted(delta.terms)
    d = delta.nvars
    if d == 0:
        verts = pts
    elif d == 1:
        verts = sorted({min(pts), max(pts)})
    elif d == 2:
        verts = sorted(_hull_2d(pts))
    else:
        verts = [p for i, p in enumerate(pts) if _is_vertex_lp(p, pts[:i] + pts[i + 1:])]
    return NewtonPolytope(tuple(tuple(v) for v in verts))



def pushed_alexander_matrix(p, sigma, ab=None, grading=None):
    """Fox Jacobian of p pushed into Q(zeta_n)[G] (rows = relators)."""
    from ..foxcalc import alexander_matrix, push_abelian
    from ..presentations import abelianize

    ab = ab or abelianize(p)
    J = alexander_matrix(p)
    return [[push_abelian(J[i, j], ab, sigma, grading) for j in range(J.cols)]
            for i in range(J.rows)], ab


def delta_sigma(p, sigma, ab=None) -> LaurentPoly:
    """Delta^sigma: the normalized gcd of the first elementary ideal."""
    from ..foxcalc import group_variable_names
    from ..presentations import abelianize
    from .fields import coefficient_field

    ab = ab or abelianize(p)
    sigma.check(ab)
    A, _ = pushed_alexander_matrix(p, sigma, ab)
    zero = LaurentPoly({}, ab.betti, coefficient_field(sigma.order), group_variable_names(ab.betti))
    return gcd_of_minors(A, p.generator_count, zero)
