"""Dense recursive multivariate polynomials over a field, with gcd.

A polynomial at level ``u`` is a list of level ``u - 1`` polynomials
(lowest degree first); level ``0`` lists hold ground field elements.  The
zero polynomial is ``[]`` at every level, lists never end in a zero.

The gcd reduces recursively: content and primitive part with respect to
the main variable, then a subresultant PRS over the coefficient domain.
"""

from __future__ import annotations

from math import gcd as _gcd, lcm

from gmpy2 import gcd as _zgcd, isqrt as _zisqrt, mpq, mpz

ONE = mpq(1)


def is_zero(f) -> bool:
    return not f


def strip(f):
    while f and not f[-1]:
        f.pop()
    return f


def const(c, u):
    """Constant polynomial c at level u."""
    if not c:
        return []
    for _ in range(u):
        c = [c]
    return [c]


def ground_lc(f, u):
    while u >= 0:
        f = f[-1]
        u -= 1
    return f


def is_const(f, u):
    """True when f has degree 0 in every variable."""
    while u >= 0:
        if len(f) > 1:
            return False
        if not f:
            return True
        f = f[0]
        u -= 1
    return True


def add(f, g, u):
    if len(f) < len(g):
        f, g = g, f
    if u == 0:
        out = [a + b for a, b in zip(f, g)] + f[len(g):]
    else:
        out = [add(a, b, u - 1) for a, b in zip(f, g)] + f[len(g):]
    return strip(out)


def neg(f, u):
    if u == 0:
        return [-a for a in f]
    return [neg(a, u - 1) for a in f]


def sub(f, g, u):
    return add(f, neg(g, u), u)


def mul_ground(f, c, u):
    if not c:
        return []
    if u == 0:
        return [a * c for a in f]
    return [mul_ground(a, c, u - 1) for a in f]


def mul(f, g, u):
    if not f or not g:
        return []
    if (len(f) * len(g) > 4 if u else len(f) * len(g) > 64):
        return _kron_mul(f, g, u)
    n = len(f) + len(g) - 1
    if u == 0:
        out = [0] * n
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return strip(out)
    out = [[] for _ in range(n)]
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b, u - 1), u - 1)
    return strip(out)


def _degrees(f, u, out, level=0):
    if len(f) - 1 > out[level]:
        out[level] = len(f) - 1
    if u:
        for a in f:
            if a:
                _degrees(a, u - 1, out, level + 1)


def _flatten(f, u, strides, base, out, level=0):
    step = strides[level]
    if u == 0:
        for i, c in enumerate(f):
            if c:
                out.append((base + i * step, c))
    else:
        for i, a in enumerate(f):
            if a:
                _flatten(a, u - 1, strides, base + i * step, out, level + 1)


def _unflatten(flat, sizes, strides, base, level):
    n = sizes[level]
    step = strides[level]
    if level == len(sizes) - 1:
        return strip(flat[base:base + n])
    return strip([_unflatten(flat, sizes, strides, base + i * step, level + 1) for i in range(n)])


def _pack(items, nbytes, total):
    pos = bytearray(total * nbytes)
    negb = bytearray(total * nbytes)
    for k, c in items:
        if c > 0:
            pos[k * nbytes:(k + 1) * nbytes] = int(c).to_bytes(nbytes, "little")
        else:
            negb[k * nbytes:(k + 1) * nbytes] = int(-c).to_bytes(nbytes, "little")
    return mpz(int.from_bytes(pos, "little")) - mpz(int.from_bytes(negb, "little"))


def _kron_mul(f, g, u):
    """Product by Kronecker substitution into one big integer.

    Variables are packed with strides large enough that no exponent
    carries, coefficients with enough bits that no digit overflows;
    rational inputs are first cleared of denominators.
    """
    df, dg = [0] * (u + 1), [0] * (u + 1)
    _degrees(f, u, df)
    _degrees(g, u, dg)
    sizes = [a + b + 1 for a, b in zip(df, dg)]
    strides = [1] * (u + 1)
    for lv in range(u - 1, -1, -1):
        strides[lv] = strides[lv + 1] * sizes[lv + 1]
    total = strides[0] * sizes[0]
    fi, gi = [], []
    _flatten(f, u, strides, 0, fi)
    _flatten(g, u, strides, 0, gi)
    rational = any(type(c) is type(ONE) for _, c in fi) or any(type(c) is type(ONE) for _, c in gi)
    den = 1
    if rational:
        lf = lcm(*(int(mpq(c).denominator) for _, c in fi))
        lg = lcm(*(int(mpq(c).denominator) for _, c in gi))
        fi = [(k, int(c * lf)) for k, c in fi]
        gi = [(k, int(c * lg)) for k, c in gi]
        den = lf * lg
    bits = (max(abs(c) for _, c in fi).bit_length() + max(abs(c) for _, c in gi).bit_length()
            + min(len(fi), len(gi)).bit_length() + 1)
    nbytes = bits // 8 + 1
    flat = _unpack(_pack(fi, nbytes, total) * _pack(gi, nbytes, total), nbytes, total)
    if rational:
        flat = [mpq(d, den) if d else 0 for d in flat]
    return _unflatten(flat, sizes, strides, 0, 0)


def _unpack(P, nbytes, total):
    """Signed base-2^(8 nbytes) digits of P; None if P needs more digits."""
    neg = P < 0
    if neg:
        P = -P
    if P.bit_length() > 8 * nbytes * total + 1:
        return None
    raw = int(P).to_bytes((total + 1) * nbytes, "little")
    base = 1 << (8 * nbytes)
    half = base >> 1
    flat = [0] * total
    carry = 0
    for k in range(total):
        d = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") + carry
        if d >= half:
            d -= base
            carry = 1
        else:
            carry = 0
        if d:
            flat[k] = -d if neg else d
    if carry or any(raw[total * nbytes:]):
        return None
    return flat


def _primitive_ints(items):
    """Integer coefficients of c * items with c rational and content 1."""
    L = lcm(*(int(mpq(c).denominator) for _, c in items))
    ints = [(k, int(c * L)) for k, c in items]
    g = 0
    for _, c in ints:
        g = _gcd(g, c)
        if g == 1:
            break
    if g != 1:
        ints = [(k, c // g) for k, c in ints]
    return ints, mpq(g, L)


def _kron_exquo(f, g, u):
    """Exact quotient through one big-integer division.

    Returns None when the packing could not decide; the caller then falls
    back to the schoolbook quotient.  A quotient is only returned after
    checking it multiplies back to f.
    """
    df, dg = [0] * (u + 1), [0] * (u + 1)
    _degrees(f, u, df)
    _degrees(g, u, dg)
    if any(a < b for a, b in zip(df, dg)):
        raise NotExact("inexact division")
    sizes = [a + 1 for a in df]
    strides = [1] * (u + 1)
    for lv in range(u - 1, -1, -1):
        strides[lv] = strides[lv + 1] * sizes[lv + 1]
    total = strides[0] * sizes[0]
    fi, gi = [], []
    _flatten(f, u, strides, 0, fi)
    _flatten(g, u, strides, 0, gi)
    fi, cf = _primitive_ints(fi)
    gi, cg = _primitive_ints(gi)
    bits = sum(abs(c) for _, c in fi).bit_length() + sum(df) + 2
    nbytes = bits // 8 + 1
    Q, R = divmod(_pack(fi, nbytes, total), _pack(gi, nbytes, total))
    if R:
        raise NotExact("inexact division")
    flat = _unpack(Q, nbytes, total)
    if flat is None:
        return None
    q = _unflatten(flat, sizes, strides, 0, 0)
    pf = _unflatten(_scatter(fi, total), sizes, strides, 0, 0)
    pg = _unflatten(_scatter(gi, total), sizes, strides, 0, 0)
    if mul(q, pg, u) != pf:
        return None
    return _ground_map(q, u, lambda a, r=cf / cg: a * r)


def _scatter(items, total):
    flat = [0] * total
    for k, c in items:
        flat[k] = c
    return flat


def mul_xk(f, k):
    """Multiply by the main variable to the k-th power."""
    if not f:
        return []
    zero = 0 if not isinstance(f[0], list) else []
    return [zero] * k + f if k else f


def power(f, k, u):
    result = const(ONE, u)
    for _ in range(k):
        result = mul(result, f, u)
    return result


class NotExact(ArithmeticError):
    pass


def exquo(f, g, u):
    """Exact quotient f / g; raises NotExact if g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    if len(f) > 1 and len(g) > 1 and (u or len(f) * len(g) > 64):
        q = _kron_exquo(f, g, u)
        if q is not None:
            return q
    dg = len(g) - 1
    lc = g[-1]
    if u == 0:
        inv = ONE / lc
        r = list(f)
        q = [0] * max(len(r) - dg, 1)
        while r and len(r) - 1 >= dg:
            k = len(r) - 1 - dg
            c = r[-1] * inv
            q[k] = c
            for i in range(dg + 1):
                r[i + k] = r[i + k] - c * g[i]
            r.pop()
            strip(r)
        if r:
            raise NotExact("inexact division")
        return strip(q)
    r = [list(c) for c in f]
    q = [[] for _ in range(max(len(r) - dg, 1))]
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        c = exquo(r[-1], lc, u - 1)
        q[k] = c
        for i in range(dg):
            r[i + k] = sub(r[i + k], mul(c, g[i], u - 1), u - 1)
        r.pop()
        strip(r)
    if r:
        raise NotExact("inexact division")
    return strip(q)


def exquo_coeffs(f, c, u):
    """Divide every main-variable coefficient of f by c (level u - 1)."""
    if u == 0:
        inv = ONE / c
        return [a * inv for a in f]
    return [exquo(a, c, u - 1) for a in f]


def prem(f, g, u):
    """Pseudo-remainder of f by g in the main variable (level u >= 1)."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return f
    lc = g[-1]
    r = list(f)
    steps = df - dg + 1
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        lr = r[-1]
        r = [mul(a, lc, u - 1) for a in r]
        for i in range(dg + 1):
            r[i + k] = sub(r[i + k], mul(lr, g[i], u - 1), u - 1)
        r.pop()
        strip(r)
        steps -= 1
    if steps and r:
        m = power(lc, steps, u - 1)
        r = [mul(a, m, u - 1) for a in r]
    return r


def monic(f, u):
    if not f:
        return f
    lc = ground_lc(f, u)
    if lc == 1:
        return f
    return mul_ground(f, ONE / lc, u)


def _uni_gcd(f, g):
    while g:
        inv = ONE / g[-1]
        r = list(f)
        dg = len(g) - 1
        while r and len(r) - 1 >= dg:
            k = len(r) - 1 - dg
            c = r[-1] * inv
            for i in range(dg + 1):
                r[i + k] = r[i + k] - c * g[i]
            r.pop()
            strip(r)
        f, g = g, r
    return monic(f, 0)


def content(f, u):
    """gcd of the main-variable coefficients (a level u - 1 poly)."""
    cont = []
    for c in reversed(f):
        if not c:
            continue
        cont = gcd(cont, c, u - 1)
        if is_const(cont, u - 1):
            return const(ONE, u - 1)
    return cont


def primitive(f, u):
    cont = content(f, u)
    if is_const(cont, u - 1):
        return cont, f
    return cont, [exquo(c, cont, u - 1) if c else [] for c in f]


def _subresultant_gcd(f, g, u):
    """Last nonzero subresultant of primitive f, g with deg f >= deg g."""
    one = const(ONE, u - 1)
    gg, h = one, one
    a, b = f, g
    while True:
        delta = len(a) - len(b)
        r = prem(a, b, u)
        if not r:
            return b
        if len(r) == 1:
            return const(ONE, u)
        a = b
        div = mul(gg, power(h, delta, u - 1), u - 1)
        b = [exquo(c, div, u - 1) if c else [] for c in r]
        gg = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = exquo(power(gg, delta, u - 1), power(h, delta - 1, u - 1), u - 1)


def gcd(f, g, u):
    """Monic gcd of f and g (leading ground coefficient 1)."""
    if not f:
        return monic(g, u)
    if not g:
        return monic(f, u)
    if u == 0:
        if len(f) < len(g):
            f, g = g, f
        return _uni_gcd(f, g)
    if is_const(f, u) or is_const(g, u):
        return const(ONE, u)
    cf, pf = primitive(f, u)
    cg, pg = primitive(g, u)
    c = gcd(cf, cg, u - 1)
    if len(pf) == 1 or len(pg) == 1:
        h = const(ONE, u)
    else:
        if len(pf) < len(pg):
            pf, pg = pg, pf
        h = _subresultant_gcd(pf, pg, u)
        if len(h) > 1:
            _, h = primitive(h, u)
        else:
            h = const(ONE, u)
    return monic([mul(a, c, u - 1) for a in h] if h else [], u)


def from_dict(terms: dict, nvars: int):
    """Sparse {exponent tuple: coeff} (nonnegative exponents) to dense."""
    if nvars == 0:
        raise ValueError("dense form needs at least one variable")
    return _from_items(list(terms.items()), 0, nvars)


def _from_items(items, depth, nvars):
    if not items:
        return []
    deg = max(e[depth] for e, _ in items)
    buckets = [[] for _ in range(deg + 1)]
    for e, c in items:
        buckets[e[depth]].append((e, c))
    if depth == nvars - 1:
        out = [0] * (deg + 1)
        for k, b in enumerate(buckets):
            if b:
                out[k] = b[0][1]
        return strip(out)
    return strip([_from_items(b, depth + 1, nvars) for b in buckets])


def to_dict(f, nvars: int) -> dict:
    out = {}
    _to_items(f, (), nvars - 1, out)
    return out


def _to_items(f, prefix, u, out):
    for k, c in enumerate(f):
        if not c:
            continue
        if u == 0:
            out[prefix + (k,)] = c
        else:
            _to_items(c, prefix + (k,), u - 1, out)


# -- heuristic gcd over Z ------------------------------------------------

def _ground_content(f, u):
    if u < 0:
        return abs(f)
    c = 0
    for a in f:
        if a:
            c = _igcd(c, _ground_content(a, u - 1))
            if c == 1:
                break
    return c


def _ground_map(f, u, op):
    if u == 0:
        return [op(a) for a in f]
    return [_ground_map(a, u - 1, op) for a in f]


def _ground_norm(f, u):
    if u == 0:
        return max((abs(a) for a in f), default=0)
    return max((_ground_norm(a, u - 1) for a in f), default=0)


def _eval_main(f, x, u):
    """Substitute the integer x for the main variable (result at level u - 1)."""
    if u == 0:
        acc = 0
        for a in reversed(f):
            acc = acc * x + a
        return acc
    acc = []
    for a in reversed(f):
        acc = add(mul_ground(acc, x, u - 1), a, u - 1)
    return acc


def _interpolate(h, x, v):
    """Inverse of evaluation at x using symmetric base-x digits."""
    half = x // 2

    def smod(c):
        r = c % x
        return r - x if r > half else r

    out = []
    if v < 0:
        while h:
            g = smod(h)
            out.append(g)
            h = (h - g) // x
        return strip(out)
    while h:
        g = _strip_deep(_ground_map(h, v, smod), v)
        out.append(g)
        h = _strip_deep(_ground_map(sub(h, g, v), v, lambda c: c // x), v)
    return strip(out)


def _strip_deep(f, u):
    if u == 0:
        return strip(f)
    return strip([_strip_deep(a, u - 1) for a in f])


def _divides(h, f, u):
    try:
        exquo(f, h, u)
    except NotExact:
        return False
    return True


class HeuristicGCDFailed(ArithmeticError):
    pass


def zz_heu_gcd(f, g, u):
    """gcd over Z of nonzero integer polynomials at level u (up to sign)."""
    isqrt = _zisqrt
    cf, cg = _ground_content(f, u), _ground_content(g, u)
    gc = _igcd(cf, cg)
    if cf != 1:
        f = _ground_map(f, u, lambda a: a // cf)
    if cg != 1:
        g = _ground_map(g, u, lambda a: a // cg)
    if is_const(f, u) or is_const(g, u):
        return const(gc, u)
    fn, gn = _ground_norm(f, u), _ground_norm(g, u)
    lf, lg = abs(ground_lc(f, u)), abs(ground_lc(g, u))
    b = 2 * min(fn, gn) + 29
    x = mpz(max(min(b, 99 * isqrt(b)), 2 * min(fn // lf, gn // lg) + 4))
    for _ in range(6):
        ff, gg = _eval_main(f, x, u), _eval_main(g, x, u)
        if ff and gg:
            if u == 0:
                himg = _igcd(ff, gg)
            else:
                himg = zz_heu_gcd(ff, gg, u - 1)
            h = _interpolate(himg, x, u - 1)
            if h:
                c = _ground_content(h, u)
                if c != 1:
                    h = _ground_map(h, u, lambda a: a // c)
                if _divides(h, f, u) and _divides(h, g, u):
                    return _ground_map(h, u, lambda a: a * gc) if gc != 1 else h
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed("heuristic gcd did not converge")


def _igcd(a, b):
    return _zgcd(a, b)
