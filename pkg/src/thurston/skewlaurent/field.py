"""Coefficient skew-field data: K = Q(zeta_n)(u_1..u_k) with a monomial automorphism.

For k = 0 the field is Q(zeta_n) itself and its elements are the raw
coefficient values (``mpq`` or ``CycloElt``); alpha is then the identity.
For k >= 1 elements are :class:`RatFunc` values.
"""

from __future__ import annotations

from typing import Sequence

from ..commalg.fields import coefficient_field
from ..commalg.polys import LaurentPoly, laurent_gcd
from ..commalg.snf import determinant, inverse_unimodular

__all__ = ["MonomialAutomorphism", "SkewField", "RatFunc"]


class MonomialAutomorphism:
    """u_i -> c_i * u^{M[i]} with M in GL_k(Z)."""

    __slots__ = ("matrix", "scalars", "k", "_powers", "_hash")

    def __init__(self, matrix: Sequence[Sequence[int]], scalars: Sequence | None = None, base=None):
        k = len(matrix)
        M = tuple(tuple(int(x) for x in row) for row in matrix)
        if any(len(row) != k for row in M):
            raise ValueError("automorphism matrix must be square")
        if k and abs(determinant(M)) != 1:
            raise ValueError("automorphism matrix must have determinant +-1")
        base = base or coefficient_field(1)
        if scalars is None:
            scalars = [base.one] * k
        sc = tuple(base(c) for c in scalars)
        if len(sc) != k or any(not c for c in sc):
            raise ValueError("need one nonzero scalar per variable")
        self.matrix = M
        self.scalars = sc
        self.k = k
        self._powers = {1: self}
        self._hash = hash((M, tuple(str(c) for c in sc)))

    @classmethod
    def identity(cls, k: int, base=None) -> "MonomialAutomorphism":
        return cls([[int(i == j) for j in range(k)] for i in range(k)], None, base)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.k) for j in range(self.k)) \
            and all(c == 1 for c in self.scalars)

    def __eq__(self, other):
        return isinstance(other, MonomialAutomorphism) and self.matrix == other.matrix \
            and self.scalars == other.scalars

    def __hash__(self):
        return self._hash

    def compose(self, beta: "MonomialAutomorphism") -> "MonomialAutomorphism":
        """self o beta (apply beta first)."""
        k = self.k
        Mb, Ma = beta.matrix, self.matrix
        M = [[sum(Mb[i][l] * Ma[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
        sc = []
        for i in range(k):
            c = beta.scalars[i]
            for l in range(k):
                e = Mb[i][l]
                if e:
                    c = c * _scalar_pow(self.scalars[l], e)
            sc.append(c)
        return MonomialAutomorphism(M, sc, _base_of(sc))

    def inverse(self) -> "MonomialAutomorphism":
        k = self.k
        Minv = inverse_unimodular(self.matrix) if k else []
        sc = []
        for i in range(k):
            c = _base_of(self.scalars).one
            for l in range(k):
                e = Minv[i][l]
                if e:
                    c = c * _scalar_pow(self.scalars[l], -e)
            sc.append(c)
        return MonomialAutomorphism(Minv, sc, _base_of(self.scalars))

    def power(self, j: int) -> "MonomialAutomorphism":
        if j in self._powers:
            return self._powers[j]
        if j == 0:
            out = MonomialAutomorphism.identity(self.k, _base_of(self.scalars))
        elif j < 0:
            out = self.power(-1).power(-j) if j != -1 else self.inverse()
        else:
            out = self.compose(self.power(j - 1))
        self._powers[j] = out
        return out

    def apply_poly(self, p: LaurentPoly) -> LaurentPoly:
        k = self.k
        out: dict = {}
        for e, c in p.terms.items():
            new = [0] * k
            v = c
            for i, x in enumerate(e):
                if x:
                    row = self.matrix[i]
                    for j in range(k):
                        new[j] += x * row[j]
                    s = self.scalars[i]
                    if s != 1:
                        v = v * _scalar_pow(s, x)
            new = tuple(new)
            w = out.get(new)
            out[new] = v if w is None else w + v
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, p.nvars, p.field, p.names)

    def __repr__(self):
        return f"MonomialAutomorphism({[list(r) for r in self.matrix]}, {[str(c) for c in self.scalars]})"


def _scalar_pow(c, e):
    if e >= 0:
        return c ** e
    return (1 / c) ** (-e) if not hasattr(c, "inverse") else c.inverse() ** (-e)


def _base_of(scalars):
    for c in scalars:
        if hasattr(c, "field"):
            return c.field
    return coefficient_field(1)


class SkewField:
    """K = Q(zeta_n)(u_1..u_k) together with alpha."""

    def __init__(self, nvars: int = 0, order: int = 1, aut: MonomialAutomorphism | None = None,
                 names: Sequence[str] | None = None):
        self.k = nvars
        self.order = order
        self.base = coefficient_field(order)
        if aut is None:
            aut = MonomialAutomorphism.identity(nvars, self.base)
        if aut.k != nvars:
            raise ValueError("automorphism acts on the wrong number of variables")
        self.aut = aut
        if names is None:
            names = ("u",) if nvars == 1 else tuple(f"u{i + 1}" for i in range(nvars))
        self.names = tuple(names)
        self._poly_zero = LaurentPoly({}, nvars, self.base, self.names) if nvars else None
        if nvars:
            self.zero = RatFunc._raw(self, self._poly_zero, self._poly_zero.one())
            self.one = RatFunc._raw(self, self._poly_zero.one(), self._poly_zero.one())
        else:
            self.zero = self.base.zero
            self.one = self.base.one
        self.trivial_alpha = aut.is_identity()

    def __eq__(self, other):
        return isinstance(other, SkewField) and (self.k, self.order, self.aut) == (other.k, other.order, other.aut)

    def __hash__(self):
        return hash((self.k, self.order, self.aut))

    def __repr__(self):
        if not self.k:
            return f"K({self.base!r})"
        return f"K({self.base!r}({', '.join(self.names)}), {self.aut!r})"

    def __call__(self, x):
        if self.k == 0:
            if isinstance(x, LaurentPoly):
                if not x.is_constant():
                    raise TypeError("polynomial is not a constant")
                return x.terms.get((), self.base.zero)
            return self.base(x)
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return RatFunc(self, x, x.one())
        c = self.base(x)
        if not c:
            return self.zero
        return RatFunc._raw(self, self._poly_zero.one() * c, self._poly_zero.one())

    def var(self, i: int):
        p = LaurentPoly.variable(i, self.k, self.base, self.names)
        return RatFunc._raw(self, p, p.one())

    def poly(self, p: LaurentPoly):
        return RatFunc(self, p, p.one())

    def alpha(self, a, j: int = 1):
        """alpha^j(a)."""
        if not j or self.trivial_alpha or self.k == 0:
            return a
        if not a:
            return a
        return a.apply(self.aut.power(j))

    def inv(self, a):
        if self.k == 0:
            if hasattr(a, "inverse"):
                return a.inverse()
            return 1 / a
        return a.inverse()

    def format(self, a) -> str:
        if self.k == 0:
            return self.base.format(a)
        return str(a)

    def parse(self, text: str):
        from .._expr import parse_expression

        variables = {n: self.var(i) for i, n in enumerate(self.names)}
        if self.base.degree > 1:
            variables["z"] = self(self.base.gen())
        return self(parse_expression(text, self, variables))


def _normalize(K: SkewField, num: LaurentPoly, den: LaurentPoly):
    """Lowest terms; den a polynomial without monomial factor, lex-leading coefficient 1."""
    if num.is_zero():
        return K._poly_zero, K._poly_zero.one()
    if den.is_monomial():
        return num.exact_div(den), den.one()
    g = laurent_gcd(num, den)
    if not g.is_monomial():
        num = num.exact_div(g)
        den = den.exact_div(g)
    m = den.min_exponents()
    if any(m):
        neg = tuple(-x for x in m)
        num, den = num.shift(neg), den.shift(neg)
    c = den.leading_term()[1]
    if c != 1:
        inv = 1 / c
        num, den = num * inv, den * inv
    return num, den


class RatFunc:
    """num/den in lowest terms (den normalized as in ``_normalize``)."""

    __slots__ = ("K", "num", "den", "_hash")

    def __init__(self, K: SkewField, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.K = K
        self.num, self.den = _normalize(K, num, den)
        self._hash = None

    @classmethod
    def _raw(cls, K, num, den):
        obj = cls.__new__(cls)
        obj.K, obj.num, obj.den, obj._hash = K, num, den, None
        return obj

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _co(self, other):
        if isinstance(other, RatFunc):
            return other
        return self.K(other)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RatFunc._raw(self.K, -self.num, self.den)

    def __add__(self, other):
        o = self._co(other)
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            if self.den.is_constant():
                return RatFunc._raw(self.K, self.num + o.num, self.den)
            return RatFunc(self.K, self.num + o.num, self.den)
        if self.den.is_constant():
            return RatFunc._raw(self.K, self.num * o.den + o.num, o.den)
        if o.den.is_constant():
            return RatFunc._raw(self.K, self.num + o.num * self.den, self.den)
        return RatFunc(self.K, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        if not self or not o:
            return self.K.zero
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc._raw(self.K, self.num * o.num, self.den)
        # cross-cancel before multiplying
        a, d = _cancel(self.num, o.den)
        c, b = _cancel(o.num, self.den)
        return RatFunc._make_reduced(self.K, a * c, b * d)

    __rmul__ = __mul__

    @classmethod
    def _make_reduced(cls, K, num, den):
        """num/den already coprime: only the unit normalization remains."""
        m = den.min_exponents()
        if any(m):
            neg = tuple(-x for x in m)
            num, den = num.shift(neg), den.shift(neg)
        if den.is_monomial():
            (e, c), = den.terms.items()
            return cls._raw(K, num.shift(tuple(-x for x in e)) * (1 / c), den.one())
        c = den.leading_term()[1]
        if c != 1:
            inv = 1 / c
            num, den = num * inv, den * inv
        return cls._raw(K, num, den)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in K")
        return RatFunc._make_reduced(self.K, self.den, self.num)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.K.one
        for _ in range(k):
            out = out * self
        return out

    def apply(self, aut: MonomialAutomorphism) -> "RatFunc":
        return RatFunc._make_reduced(self.K, aut.apply_poly(self.num), aut.apply_poly(self.den))

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _cancel(a: LaurentPoly, b: LaurentPoly):
    """Divide a and b by their (non-monomial) gcd."""
    if a.is_monomial() or b.is_monomial() or b.is_constant():
        return a, b
    g = laurent_gcd(a, b)
    if g.is_monomial():
        return a, b
    return a.exact_div(g), b.exact_div(g)
