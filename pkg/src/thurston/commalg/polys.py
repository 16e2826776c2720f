"""Sparse multivariate Laurent polynomials over Q or Q(zeta_n)."""

from __future__ import annotations

import random
from math import gcd as _igcd, lcm
from typing import Iterable, Sequence

from . import _dmp
from gmpy2 import mpz

from .fields import RationalField, mpq

__all__ = ["LaurentPoly", "poly_gcd", "laurent_gcd"]

QQ = RationalField()


def _default_names(nvars: int) -> tuple[str, ...]:
    if nvars == 1:
        return ("t",)
    return tuple(f"t{i + 1}" for i in range(nvars))


class LaurentPoly:
    """Finite sum of coefficient * monomial, exponents in Z^nvars.

    Terms live in a dict keyed by exponent tuples; zero coefficients are
    never stored.  Equality and hashing use the lexicographically sorted
    term list, so two polynomials compare equal exactly when they have the
    same terms (variable names are cosmetic).
    """

    __slots__ = ("nvars", "terms", "field", "names", "_hash")

    def __init__(self, terms: dict | None = None, nvars: int = 1, field=QQ,
                 names: Sequence[str] | None = None):
        self.nvars = nvars
        self.field = field
        self.names = tuple(names) if names is not None else _default_names(nvars)
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length (expected {nvars})")
                clean[e] = field(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms, nvars, field, names):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.field = field
        obj.names = names
        obj.terms = terms
        obj._hash = None
        return obj

    def _like(self, terms):
        return LaurentPoly._raw(terms, self.nvars, self.field, self.names)

    @classmethod
    def constant(cls, c, nvars=1, field=QQ, names=None):
        return cls({(0,) * nvars: field(c)}, nvars, field, names)

    @classmethod
    def monomial(cls, exp, coeff=1, field=QQ, names=None):
        exp = tuple(exp)
        return cls({exp: field(coeff)}, len(exp), field, names)

    @classmethod
    def variable(cls, i, nvars, field=QQ, names=None):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, 1, field, names)

    def zero(self):
        return self._like({})

    def one(self):
        return self._like({(0,) * self.nvars: self.field.one})

    # -- predicates and accessors --------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> tuple[int, ...]:
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def leading_term(self):
        """Lexicographically largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def trailing_term(self):
        e = min(self.terms)
        return e, self.terms[e]

    def degree(self, i: int = 0) -> int:
        return max(e[i] for e in self.terms) if self.terms else -1

    def span(self, i: int = 0) -> int:
        """max - min exponent in variable i (nonzero polynomials)."""
        if not self.terms:
            raise ValueError("span of the zero polynomial")
        vals = [e[i] for e in self.terms]
        return max(vals) - min(vals)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return self._like({(0,) * self.nvars: self.field(other)} if other else {})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.sorted_terms())))
        return self._hash

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._like(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = self.field(other)
            if not c:
                return self.zero()
            return self._like({e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if len(self.terms) * len(other.terms) > 64 and self.nvars:
            return self._like(_packed_mul(self.terms, other.terms, self.nvars))
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._like({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            m = -k
            return self._like({tuple(-x * m for x in e): (1 / c) ** m})
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return self * (1 / self.field(other))

    def __rtruediv__(self, other):
        return self._coerce(other).exact_div(self)

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        return self._like({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def scale(self, c) -> "LaurentPoly":
        return self * c

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in the Laurent ring; raises ArithmeticError if inexact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self.zero()
        if other.is_monomial():
            (e, c), = other.terms.items()
            inv = 1 / c
            return self._like({tuple(a - b for a, b in zip(k, e)): v * inv
                               for k, v in self.terms.items()})
        fs, fm = self._to_poly()
        gs, gm = other._to_poly()
        q = _dmp.exquo(_dmp.from_dict(fs.terms, self.nvars), _dmp.from_dict(gs.terms, self.nvars),
                       self.nvars - 1)
        shift = tuple(a - b for a, b in zip(fm, gm))
        return self._like(_dmp.to_dict(q, self.nvars)).shift(shift)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def _to_poly(self):
        """(polynomial with nonneg exponents and no monomial factor, shift)."""
        m = self.min_exponents()
        return self.shift(tuple(-x for x in m)), m

    def evaluate(self, point: Sequence):
        total = self.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * (x ** k if k >= 0 else 1 / (x ** -k))
            total = total + v
        return total

    def substitute_monomials(self, images: Sequence[Sequence[int]], nvars: int, names=None) -> "LaurentPoly":
        """Apply the ring map x_i -> y^{images[i]} into nvars variables."""
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for k, row in zip(e, images):
                if k:
                    for j, r in enumerate(row):
                        new[j] += k * r
            new = tuple(new)
            v = out.get(new)
            out[new] = c if v is None else v + c
        return LaurentPoly({e: c for e, c in out.items() if c}, nvars, self.field, names)

    def normalize_unit(self) -> "LaurentPoly":
        """Canonical associate under units (monomials times nonzero scalars).

        The lexicographically minimal exponent is moved to the origin and the
        coefficient of that (now leading-in-lex ascending order) term is made
        1; over Q the result is then rescaled to a primitive integer
        polynomial with positive first coefficient.
        """
        if self.is_zero():
            return self
        e0, c0 = self.trailing_term()
        f = self.shift(tuple(-x for x in e0)) * (1 / c0)
        if isinstance(self.field, RationalField):
            den = 1
            for c in f.terms.values():
                den = lcm(den, int(mpq(c).denominator))
            num = 0
            for c in f.terms.values():
                num = _igcd(num, int(mpq(c) * den))
            f = f * mpq(den, num)
        return f

    def to_field(self, field) -> "LaurentPoly":
        return LaurentPoly({e: field(c) for e, c in self.terms.items()}, self.nvars, field, self.names)

    # -- presentation ------------------------------------------------
    def _mono_str(self, e):
        parts = []
        for name, k in zip(self.names, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if self.nvars > 1 else "".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            cs = self.field.format(c)
            compound = any(ch in cs[1:] for ch in "+-") or "z" in cs
            if compound:
                cs = f"({cs})"
                sign, body = "+", cs + mono
            else:
                sign = "-" if cs.startswith("-") else "+"
                mag = cs.lstrip("-")
                if not mono:
                    body = mag
                elif mag == "1":
                    body = mono
                else:
                    body = mag + ("*" + mono if "/" in mag else mono)
            chunks.append((sign, body))
        out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coeff": self.field.format(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[dict], nvars: int | None = None, field=QQ, names=None):
        terms = {}
        for item in data:
            e = tuple(int(x) for x in item["exp"])
            terms[e] = field.parse(str(item["coeff"]))
            if nvars is None:
                nvars = len(e)
        return cls(terms, nvars if nvars is not None else 1, field, names)

    @classmethod
    def parse(cls, text: str, nvars: int = 1, field=QQ, names=None) -> "LaurentPoly":
        from thurston._expr import parse_expression

        names = tuple(names) if names is not None else _default_names(nvars)
        zero = cls({}, nvars, field, names)

        class _Ring:
            one = zero.one()

            def __call__(self, x):
                return zero._coerce(x)

        variables = {n: cls.variable(i, nvars, field, names) for i, n in enumerate(names)}
        if field.degree > 1:
            variables["z"] = cls.constant(field.gen(), nvars, field, names)
        return parse_expression(text, _Ring(), variables)


def _packed_mul(f: dict, g: dict, n: int) -> dict:
    """Product of sparse polynomials with exponents packed into single ints.

    Rational coefficients are multiplied as integers over a common
    denominator; other coefficient types are multiplied as they are.
    """
    lo_f = [min(e[i] for e in f) for i in range(n)]
    lo_g = [min(e[i] for e in g) for i in range(n)]
    width = [max(e[i] for e in f) - lo_f[i] + max(e[i] for e in g) - lo_g[i] + 1 for i in range(n)]
    radix = [1] * n
    for i in range(1, n):
        radix[i] = radix[i - 1] * width[i - 1]

    def pack(terms, lo):
        out = []
        for e, c in terms.items():
            k = 0
            for i in range(n):
                k += (e[i] - lo[i]) * radix[i]
            out.append((k, c))
        return out

    pf, pg = pack(f, lo_f), pack(g, lo_g)
    rational = all(type(c) is _MPQ for _, c in pf) and all(type(c) is _MPQ for _, c in pg)
    if rational:
        df = 1
        for _, c in pf:
            df = lcm(df, int(c.denominator))
        dg = 1
        for _, c in pg:
            dg = lcm(dg, int(c.denominator))
        pf = [(k, mpz(c * df)) for k, c in pf]
        pg = [(k, mpz(c * dg)) for k, c in pg]
    total = radix[-1] * width[-1]
    if rational and total <= 4 * len(pf) * len(pg):
        # dense enough for a single big-integer product
        bits = (max(abs(c) for _, c in pf).bit_length() + max(abs(c) for _, c in pg).bit_length()
                + min(len(pf), len(pg)).bit_length() + 1)
        nbytes = bits // 8 + 1
        flat = _dmp._unpack(_dmp._pack(pf, nbytes, total) * _dmp._pack(pg, nbytes, total), nbytes, total)
        acc = {k: c for k, c in enumerate(flat) if c}
    else:
        acc = {}
        get = acc.get
        for k1, c1 in pf:
            for k2, c2 in pg:
                k = k1 + k2
                acc[k] = get(k, 0) + c1 * c2
    lo = [a + b for a, b in zip(lo_f, lo_g)]
    out = {}
    den = df * dg if rational else 1
    for k, c in acc.items():
        if not c:
            continue
        e = []
        for i in range(n):
            k, x = divmod(k, width[i])
            e.append(x + lo[i])
        out[tuple(e)] = mpq(c, den) if rational else c
    return out


def _active_vars(*polys: LaurentPoly) -> list[int]:
    n = polys[0].nvars
    return [i for i in range(n) if any(e[i] for p in polys for e in p.terms)]


def _restrict(p: LaurentPoly, idx: list[int]) -> dict:
    return {tuple(e[i] for i in idx): c for e, c in p.terms.items()}


def _expand(terms: dict, idx: list[int], n: int) -> dict:
    out = {}
    for e, c in terms.items():
        full = [0] * n
        for i, k in zip(idx, e):
            full[i] = k
        out[tuple(full)] = c
    return out


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two honest polynomials (nonnegative exponents).

    Monomial factors count: poly_gcd(x*y, x^2) = x.  The result has leading
    (lexicographically largest) coefficient 1.
    """
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.nvars == 0:
        return f.one()
    return _monic(f._like(_core_gcd(f.terms, g.terms, f.nvars)))


_PROBE = random.Random(0x5EED)


def _shift_terms(f: dict, m) -> dict:
    return {tuple(a - b for a, b in zip(e, m)): c for e, c in f.items()}


def _probe_degree(f: dict, g: dict, i: int, k: int) -> int:
    """Upper bound for deg_{x_i} gcd(f, g) from a random specialization."""
    df = max(e[i] for e in f)
    dg = max(e[i] for e in g)
    for _ in range(4):
        point = [_PROBE.randint(2, 97) for _ in range(k)]
        images = []
        for terms, d in ((f, df), (g, dg)):
            img = [0] * (d + 1)
            for e, c in terms.items():
                v = c
                for j in range(k):
                    if j != i and e[j]:
                        v = v * point[j] ** e[j]
                img[e[i]] = img[e[i]] + v
            images.append(_dmp.strip(img))
        a, b = images
        if len(a) == df + 1 and len(b) == dg + 1:
            h = _dmp.gcd(a, b, 0) if len(a) >= len(b) else _dmp.gcd(b, a, 0)
            return len(h) - 1
    return min(df, dg)


_MPQ = type(mpq(0))


def _to_integer_terms(f: dict) -> dict:
    den = 1
    for c in f.values():
        den = lcm(den, int(c.denominator))
    return {e: int(c * den) for e, c in f.items()}


def _zz_gcd(f: dict, g: dict, k: int) -> dict | None:
    fi, gi = _to_integer_terms(f), _to_integer_terms(g)
    try:
        h = _dmp.zz_heu_gcd(_dmp.from_dict(fi, k), _dmp.from_dict(gi, k), k - 1)
    except _dmp.HeuristicGCDFailed:
        return None
    return {e: mpq(c) for e, c in _dmp.to_dict(h, k).items()}


def _core_gcd(f: dict, g: dict, k: int) -> dict:
    """gcd of nonzero polynomials given as {exponent tuple: coeff} in k vars."""
    mf = tuple(min(e[i] for e in f) for i in range(k))
    mg = tuple(min(e[i] for e in g) for i in range(k))
    mono = tuple(min(a, b) for a, b in zip(mf, mg))
    f, g = _shift_terms(f, mf), _shift_terms(g, mg)
    one = {mono: _dmp.ONE}
    if len(f) == 1 or len(g) == 1:
        return one
    active = [i for i in range(k) if any(e[i] for e in f) or any(e[i] for e in g)]
    if len(active) < k:
        fr = {tuple(e[i] for i in active): c for e, c in f.items()}
        gr = {tuple(e[i] for i in active): c for e, c in g.items()}
        h = _core_gcd(fr, gr, len(active))
        out = {}
        for e, c in h.items():
            full = list(mono)
            for i, x in zip(active, e):
                full[i] += x
            out[tuple(full)] = c
        return out
    if all(type(c) is _MPQ for c in f.values()) and all(type(c) is _MPQ for c in g.values()):
        h = _zz_gcd(f, g, k)
        if h is not None:
            return _shift_terms(h, tuple(-x for x in mono))
    if k == 1:
        a = [0] * (max(e[0] for e in f) + 1)
        for e, c in f.items():
            a[e[0]] = c
        b = [0] * (max(e[0] for e in g) + 1)
        for e, c in g.items():
            b[e[0]] = c
        h = _dmp.gcd(a, b, 0)
        return {(x + mono[0],): c for x, c in enumerate(h) if c}
    bounds = [_probe_degree(f, g, i, k) for i in range(k)]
    free = [i for i in range(k) if bounds[i] == 0]
    if free:
        i = free[0]
        coeffs: dict = {}
        for terms in (f, g):
            for e, c in terms.items():
                key = (terms is g, e[i])
                coeffs.setdefault(key, {})[e[:i] + (0,) + e[i + 1:]] = c
        parts = sorted(coeffs.values(), key=len)
        h = parts[0]
        for p in parts[1:]:
            h = _core_gcd(h, p, k)
            if len(h) == 1 and not any(any(e) for e in h):
                break
        return _shift_terms(h, tuple(-x for x in mono))
    order = sorted(range(k), key=lambda i: (max(max(e[i] for e in f), max(e[i] for e in g)), i))
    fr = {tuple(e[i] for i in order): c for e, c in f.items()}
    gr = {tuple(e[i] for i in order): c for e, c in g.items()}
    h = _dmp.to_dict(_dmp.gcd(_dmp.from_dict(fr, k), _dmp.from_dict(gr, k), k - 1), k)
    out = {}
    for e, c in h.items():
        full = list(mono)
        for i, x in zip(order, e):
            full[i] += x
        out[tuple(full)] = c
    return out


def _monic(f: LaurentPoly) -> LaurentPoly:
    if f.is_zero():
        return f
    _, c = f.leading_term()
    return f if c == 1 else f * (1 / c)


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """gcd in the Laurent polynomial ring, normalized by ``normalize_unit``.

    gcd(f, 0) is the normalized f; gcd(0, 0) = 0.
    """
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero():
        return g.normalize_unit()
    if g.is_zero():
        return f.normalize_unit()
    fp, _ = f._to_poly()
    gp, _ = g._to_poly()
    return poly_gcd(fp, gp).normalize_unit()


def laurent_gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly | None:
    """gcd of a sequence; stops early once a unit is reached."""
    acc = None
    for p in polys:
        if acc is None:
            acc = p.normalize_unit() if p else p
        else:
            acc = laurent_gcd(acc, p)
        if acc is not None and acc and acc.is_monomial():
            return acc.normalize_unit()
    return acc
