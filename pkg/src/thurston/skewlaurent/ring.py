"""The skew Laurent polynomial ring K[t^{+-1}; alpha].

Elements are written sum_i t^i a_i with coefficients on the right, and
multiply by t^i a * t^j b = t^{i+j} alpha^j(a) b, so that a t = t alpha(a).
"""

from __future__ import annotations

from typing import Mapping

from .field import SkewField

__all__ = ["SkewLaurentPoly", "skew_mul", "right_divide", "left_divide"]


class SkewLaurentPoly:
    __slots__ = ("K", "terms")

    def __init__(self, K: SkewField, terms: Mapping[int, object] | None = None):
        self.K = K
        clean = {}
        for i, a in (terms or {}).items():
            a = K(a)
            if a:
                clean[int(i)] = a
        self.terms = clean

    @classmethod
    def _raw(cls, K, terms):
        obj = cls.__new__(cls)
        obj.K = K
        obj.terms = terms
        return obj

    @classmethod
    def t(cls, K: SkewField, k: int = 1, coeff=None) -> "SkewLaurentPoly":
        return cls(K, {k: K.one if coeff is None else coeff})

    @classmethod
    def const(cls, K: SkewField, a) -> "SkewLaurentPoly":
        return cls(K, {0: a})

    def zero(self):
        return SkewLaurentPoly._raw(self.K, {})

    def one(self):
        return SkewLaurentPoly._raw(self.K, {0: self.K.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def max_degree(self) -> int:
        return max(self.terms)

    def min_degree(self) -> int:
        return min(self.terms)

    def span(self) -> int:
        if not self.terms:
            raise ValueError("span of zero")
        return max(self.terms) - min(self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def top(self):
        d = max(self.terms)
        return d, self.terms[d]

    def coeff(self, i: int):
        return self.terms.get(i, self.K.zero)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    # -- arithmetic ------------------------------------------------------
    def _co(self, other) -> "SkewLaurentPoly":
        if isinstance(other, SkewLaurentPoly):
            return other
        a = self.K(other)
        return SkewLaurentPoly._raw(self.K, {0: a} if a else {})

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return SkewLaurentPoly._raw(self.K, {i: -a for i, a in self.terms.items()})

    def __add__(self, other):
        o = self._co(other)
        out = dict(self.terms)
        for i, a in o.terms.items():
            v = out.get(i)
            if v is None:
                out[i] = a
            else:
                v = v + a
                if v:
                    out[i] = v
                else:
                    del out[i]
        return SkewLaurentPoly._raw(self.K, out)

    def __radd__(self, other):
        return self._co(other) + self

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        return skew_mul(self, self._co(other))

    def __rmul__(self, other):
        return skew_mul(self._co(other), self)

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only monomials t^i a are units")
            (i, a), = self.terms.items()
            # (t^i a)^-1 = t^-i alpha^-i(a^-1)
            inv = SkewLaurentPoly._raw(self.K, {-i: self.K.alpha(self.K.inv(a), -i)})
            return inv ** (-k)
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_t(self, k: int) -> "SkewLaurentPoly":
        """self * t^k."""
        K = self.K
        return SkewLaurentPoly._raw(K, {i + k: K.alpha(a, k) for i, a in self.terms.items()})

    def t_mul(self, k: int) -> "SkewLaurentPoly":
        """t^k * self."""
        return SkewLaurentPoly._raw(self.K, {i + k: a for i, a in self.terms.items()})

    def scale_right(self, c) -> "SkewLaurentPoly":
        """self * c for c in K."""
        if not c:
            return self.zero()
        return SkewLaurentPoly._raw(self.K, {i: a * c for i, a in self.terms.items()})

    def scale_left(self, c) -> "SkewLaurentPoly":
        """c * self = sum t^i alpha^i(c) a_i."""
        if not c:
            return self.zero()
        K = self.K
        return SkewLaurentPoly._raw(K, {i: K.alpha(c, i) * a for i, a in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms):
            a = self.K.format(self.terms[i])
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(f"({a})" if _compound(a) else a)
            elif a == "1":
                parts.append(mono)
            elif a == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{mono}*({a})" if _compound(a) else f"{mono}*{a}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"SkewLaurentPoly({self})"


def _compound(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-/") or " " in s


def skew_mul(f: SkewLaurentPoly, g: SkewLaurentPoly) -> SkewLaurentPoly:
    if f.K != g.K:
        raise ValueError("skew polynomials over different coefficient rings")
    K = f.K
    if not f.terms or not g.terms:
        return SkewLaurentPoly._raw(K, {})
    out: dict = {}
    alpha = K.alpha
    for j, b in g.terms.items():
        for i, a in f.terms.items():
            v = alpha(a, j) * b
            k = i + j
            w = out.get(k)
            out[k] = v if w is None else w + v
    return SkewLaurentPoly._raw(K, {k: v for k, v in out.items() if v})


def right_divide(f: SkewLaurentPoly, g: SkewLaurentPoly):
    """(q, r) with f = g*q + r and r = 0 or span(r) < span(g).

    Each step removes the top term of r with g * t^k c; the subtracted piece
    lives in degrees [deg r - span g, deg r], so the bottom of r never
    drops and its top strictly falls.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero in the skew Laurent ring")
    K = f.K
    dg, gtop = g.top()
    sg = g.span()
    q: dict = {}
    r = f
    while r.terms and r.span() >= sg:
        dr, rtop = r.top()
        k = dr - dg
        c = K.inv(K.alpha(gtop, k)) * rtop
        q[k] = q.get(k, K.zero) + c
        r = r - g.mul_t(k).scale_right(c)
    return SkewLaurentPoly(K, q), r


def left_divide(f: SkewLaurentPoly, g: SkewLaurentPoly):
    """(q, r) with f = q*g + r and r = 0 or span(r) < span(g)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero in the skew Laurent ring")
    K = f.K
    dg, gtop = g.top()
    ginv = K.inv(gtop)
    sg = g.span()
    q: dict = {}
    r = f
    while r.terms and r.span() >= sg:
        dr, rtop = r.top()
        k = dr - dg
        c = K.alpha(rtop * ginv, -dg)
        q[k] = q.get(k, K.zero) + c
        # (t^k c) * g
        r = r - g.scale_left(c).t_mul(k)
    return SkewLaurentPoly(K, q), r
