"""Exact coefficient fields: the rationals and cyclotomic fields Q(zeta_n).

Rationals are ``gmpy2.mpq`` values.  Elements of Q(zeta_n) with
phi(n) > 1 are :class:`CycloElt` instances, stored as coefficient vectors
modulo the n-th cyclotomic polynomial.  Both kinds support the ordinary
arithmetic operators, mix freely with Python ints, and are hashable.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

__all__ = [
    "mpq",
    "RationalField",
    "CyclotomicField",
    "CycloElt",
    "coefficient_field",
    "cyclotomic_polynomial",
]


def _upoly_divmod(f, g):
    """Long division of dense univariate polys (lowest degree first)."""
    f = list(f)
    dg = len(g) - 1
    inv = 1 / mpq(g[-1])
    q = [mpq(0)] * max(len(f) - dg, 1)
    while len(f) - 1 >= dg and any(f):
        k = len(f) - 1 - dg
        c = f[-1] * inv
        q[k] = c
        for i, gi in enumerate(g):
            f[i + k] -= c * gi
        f.pop()
        while f and not f[-1]:
            f.pop()
    return q, f


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _upoly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(int(c) for c in num)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class RationalField:
    """Q, optionally remembered as Q(zeta_2) when a character has order 2."""

    degree = 1

    def __init__(self, order: int = 1):
        if order not in (1, 2):
            raise ValueError("Q only contains roots of unity of order 1 or 2")
        self.order = order
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, CycloElt):
            raise TypeError("cannot coerce a cyclotomic element into Q")
        return mpq(x)

    def root_of_unity(self, k: int):
        """zeta_n^k for the field's order n (1 or 2)."""
        return self.one if (k * (2 // self.order)) % 2 == 0 else -self.one

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def format(self, c) -> str:
        return str(mpq(c))

    def parse(self, text: str):
        from thurston._expr import parse_expression

        return parse_expression(text, self, {})


class CyclotomicField:
    """Q(zeta_n) for n with phi(n) >= 2, i.e. n >= 3."""

    def __init__(self, order: int):
        if order < 3:
            raise ValueError("use RationalField for orders 1 and 2")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        assert self.degree == _totient(order)
        # z^k mod Phi_n for degree <= k <= 2*degree - 2, used by reduction
        d = self.degree
        high = {}
        cur = [mpq(-c) for c in self.modulus[:-1]]  # z^d
        for k in range(d, 2 * d - 1):
            high[k] = tuple(cur)
            # multiply by z and reduce
            top = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if top:
                cur = [ci - top * mi for ci, mi in zip(cur, self.modulus[:-1])]
        self._high = high
        self.zero = CycloElt(self, (mpq(0),) * d)
        self.one = CycloElt(self, (mpq(1),) + (mpq(0),) * (d - 1))

    def __call__(self, x) -> "CycloElt":
        if isinstance(x, CycloElt):
            if x.field != self:
                raise TypeError("elements of different cyclotomic fields")
            return x
        return CycloElt(self, (mpq(x),) + (mpq(0),) * (self.degree - 1))

    def gen(self) -> "CycloElt":
        return self.root_of_unity(1)

    def root_of_unity(self, k: int) -> "CycloElt":
        k %= self.order
        return self._reduce([mpq(0)] * k + [mpq(1)])

    def _reduce(self, coeffs) -> "CycloElt":
        d = self.degree
        out = [mpq(0)] * d
        for k, c in enumerate(coeffs):
            if not c:
                continue
            if k < d:
                out[k] += c
            elif k in self._high:
                for i, m in enumerate(self._high[k]):
                    out[i] += c * m
            else:
                _, rem = _upoly_divmod([mpq(0)] * k + [mpq(c)], self.modulus)
                for i, m in enumerate(rem):
                    out[i] += m
        return CycloElt(self, tuple(out))

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("Qzeta", self.order))

    def __repr__(self):
        return f"QQ(zeta_{self.order})"

    def format(self, c) -> str:
        return str(self(c))

    def parse(self, text: str) -> "CycloElt":
        from thurston._expr import parse_expression

        return self(parse_expression(text, self, {"z": self.gen()}))


def _coerce(field: CyclotomicField, other):
    if isinstance(other, CycloElt):
        if other.field != field:
            raise TypeError("elements of different cyclotomic fields")
        return other
    if isinstance(other, (int, type(mpq(0)))):
        return field(other)
    return None


class CycloElt:
    """Element of Q(zeta_n), polynomial in z = zeta_n reduced mod Phi_n."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __neg__(self):
        return CycloElt(self.field, tuple(-a for a in self.c))

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return CycloElt(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return CycloElt(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            return CycloElt(self.field, tuple(a * other for a in self.c))
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            return self * o.c[0]
        if self.is_rational():
            return o * self.c[0]
        prod = [mpq(0)] * (2 * len(self.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElt":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.field(1 / self.c[0])
        # extended Euclid: s*a + t*Phi = 1
        a = list(self.c)
        while not a[-1]:
            a.pop()
        r0, r1 = [mpq(c) for c in self.field.modulus], a
        s0, s1 = [mpq(0)], [mpq(1)]
        while len(r1) > 1 or not r1[0]:
            q, r = _upoly_divmod(r0, r1)
            qs = [mpq(0)] * (len(q) + len(s1))
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
            n = max(len(s0), len(qs))
            s2 = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            r0, r1, s0, s1 = r1, (r or [mpq(0)]), s1, s2
        inv = 1 / r1[0]
        return self.field._reduce([s * inv for s in s1])

    def __truediv__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self):
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            if k == 0:
                parts.append(str(a))
                continue
            mono = "z" if k == 1 else f"z^{k}"
            if a == 1:
                s = mono
            elif a == -1:
                s = "-" + mono
            else:
                s = f"{a}*{mono}"
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"CycloElt({self}, n={self.field.order})"


@lru_cache(maxsize=None)
def coefficient_field(order: int = 1):
    """Q(zeta_order): the rationals for orders 1 and 2, else a cyclotomic field."""
    if order in (1, 2):
        return RationalField(order)
    return CyclotomicField(order)
