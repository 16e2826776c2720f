"""Finite group presentations, abelianization and integral 1-classes.

A presentation is read as its presentation 2-complex: one 0-cell, a
1-cell per generator and a 2-cell per relator.  Everything downstream
only ever sees the :class:`GroupPresentation` value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .commalg.snf import inverse_unimodular, smith_normal_form

__all__ = [
    "Word",
    "GroupPresentation",
    "AbelianizationData",
    "CohomologyClass",
    "Character",
    "PresentationSyntaxError",
    "InvalidDTCode",
    "ZeroClassError",
    "parse_presentation",
    "wirtinger_from_dt",
    "abelianize",
    "divisibility",
    "evaluate_class",
    "class_from_generator_values",
    "TietzeMap",
    "tietze_add_generator",
    "tietze_add_consequence",
]


class PresentationSyntaxError(ValueError):
    """Malformed presentation text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class InvalidDTCode(ValueError):
    pass


class ZeroClassError(ValueError):
    def __init__(self, message: str = "nonzero class required"):
        super().__init__(message)


# -- words -----------------------------------------------------------------

def _free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


class Word:
    """Freely reduced word in the free group; letters are (generator, +-1)."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        checked = []
        for g, s in letters:
            if s not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, s)!r}")
            checked.append((int(g), int(s)))
        self.letters = _free_reduce(checked)
        self._hash = hash(self.letters)

    @classmethod
    def _reduced(cls, letters: tuple) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = hash(letters)
        return w

    @classmethod
    def generator(cls, g: int, power: int = 1) -> "Word":
        s = 1 if power > 0 else -1
        return cls._reduced(((g, s),) * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        i = 0
        while i < len(a) and i < len(b) and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
            i += 1
        return Word._reduced(a[:len(a) - i] + b[i:])

    def inverse(self) -> "Word":
        return Word._reduced(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self, by: "Word") -> "Word":
        """by * self * by^-1"""
        return by * self * by.inverse()

    def prefix(self, k: int) -> "Word":
        return Word._reduced(self.letters[:k])

    def exponent_vector(self, m: int) -> list[int]:
        v = [0] * m
        for g, s in self.letters:
            v[g] += s
        return v

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        L = self.letters
        while i < len(L):
            j = i
            while j < len(L) and L[j] == L[i]:
                j += 1
            g, s = L[i]
            k = (j - i) * s
            parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
            i = j
        return " ".join(parts)

    def __repr__(self):
        return f"Word({list(self.letters)})"


# -- presentations ---------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        names = tuple(self.generator_names)
        if not names:
            raise ValueError("a presentation needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        rels = tuple(r if isinstance(r, Word) else Word(r) for r in self.relators)
        for r in rels:
            if r.max_generator() >= len(names):
                raise ValueError("relator uses a generator outside the presentation")
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_words(cls, m: int, relators: Iterable, names: Sequence[str] | None = None):
        if names is None:
            names = _default_names(m)
        return cls(tuple(names), tuple(relators))

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)

    @property
    def deficiency(self) -> int:
        return self.generator_count - len(self.relators)

    def format(self) -> str:
        rels = ", ".join(r.format(self.generator_names) for r in self.relators)
        return f"gens: {', '.join(self.generator_names)}; rels: {rels};"

    def __str__(self):
        return self.format()


def _default_names(m: int) -> tuple[str, ...]:
    if m <= 4:
        return ("x", "y", "z", "w")[:m]
    return tuple(f"x{i}" for i in range(m))


_LEX = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                  r"|(?P<int>[+-]?\d+)|(?P<punct>[:;,^()])")


def _lex(text: str):
    pos, line, col = 0, 1, 1
    toks = []
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind not in ("ws", "comment"):
            toks.append((kind, val, line, col))
        nl = val.count("\n")
        if nl:
            line += nl
            col = len(val) - val.rfind("\n")
        else:
            col += len(val)
        pos = m.end()
    toks.append(("end", "", line, col))
    return toks


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``gens: a, b; rels: w1, w2;`` (see README for the grammar)."""
    toks = _lex(text)
    i = 0

    def peek():
        return toks[i]

    def err(msg, tok=None):
        tok = tok or peek()
        raise PresentationSyntaxError(msg, tok[2], tok[3])

    def expect(kind, val=None):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind or (val is not None and tok[1] != val):
            want = repr(val) if val is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            err(f"expected {want}, found {got}", tok)
        i += 1
        return tok

    expect("name", "gens")
    expect("punct", ":")
    names: list[str] = []
    if peek()[0] == "punct" and peek()[1] == ";":
        err("empty generator list")
    while True:
        tok = expect("name")
        if tok[1] in names:
            err(f"duplicate generator {tok[1]!r}", tok)
        names.append(tok[1])
        if peek()[1] == ",":
            i += 1
            continue
        expect("punct", ";")
        break
    index = {n: k for k, n in enumerate(names)}
    expect("name", "rels")
    expect("punct", ":")
    relators: list[Word] = []
    if peek()[1] == ";" and peek()[0] == "punct":
        i += 1
    else:
        while True:
            letters: list[tuple[int, int]] = []
            while peek()[0] == "name":
                tok = toks[i]
                i += 1
                if tok[1] not in index:
                    err(f"unknown generator {tok[1]!r}", tok)
                g = index[tok[1]]
                k = 1
                if peek()[1] == "^" and peek()[0] == "punct":
                    i += 1
                    paren = peek()[1] == "("
                    if paren:
                        i += 1
                    ktok = expect("int")
                    k = int(ktok[1])
                    if paren:
                        expect("punct", ")")
                    if k == 0:
                        err("exponent must be nonzero", ktok)
                s = 1 if k > 0 else -1
                letters.extend([(g, s)] * abs(k))
            if not letters and peek()[0] == "int" and peek()[1] == "1":
                i += 1  # explicit trivial word
            relators.append(Word(letters))
            if peek()[1] == "," and peek()[0] == "punct":
                i += 1
                continue
            expect("punct", ";")
            break
    if peek()[0] != "end":
        err(f"unexpected {peek()[1]!r} after relators")
    return GroupPresentation(tuple(names), tuple(relators))


# -- Dowker--Thistlethwaite codes ------------------------------------------

def _validate_dt(code: Sequence[int]) -> list[int]:
    code = [int(a) for a in code]
    n = len(code)
    if n == 0:
        raise InvalidDTCode("invalid DT code: empty")
    seen = set()
    for a in code:
        if a % 2:
            raise InvalidDTCode(f"invalid DT code: odd entry {a}")
        if not 2 <= abs(a) <= 2 * n:
            raise InvalidDTCode(f"invalid DT code: entry {a} out of range")
        if abs(a) in seen:
            raise InvalidDTCode(f"invalid DT code: repeated entry {abs(a)}")
        seen.add(abs(a))
    return code


def _crossing_orientations(code: list[int]) -> list[int]:
    """For each crossing, +1 or -1 giving the cyclic order of its four ends.

    The knot shadow is a 4-valent planar graph whose vertex rotations must
    keep each strand straight.  Every crossing is replaced by a wheel (hub
    plus a 4-cycle of ends ordered odd-in, even-in, odd-out, even-out), and
    every arc is subdivided, so a planar embedding of the gadget graph is
    exactly a realization of the code.  The orientation of the rim around
    the hub is read from the embedding.
    """
    import networkx as nx

    n = len(code)
    at = {}  # label -> (crossing, is_odd)
    for i, a in enumerate(code):
        at[2 * i + 1] = (i, True)
        at[abs(a)] = (i, False)
    G = nx.Graph()
    for i in range(n):
        rim = [("c", i, k) for k in range(4)]
        for k in range(4):
            G.add_edge(("hub", i), rim[k])
            G.add_edge(rim[k], rim[(k + 1) % 4])
    for lab in range(1, 2 * n + 1):
        nxt = lab % (2 * n) + 1
        ci, odd = at[lab]
        cj, odd2 = at[nxt]
        out_end = ("c", ci, 2 if odd else 3)
        in_end = ("c", cj, 0 if odd2 else 1)
        mid = ("m", lab)
        G.add_edge(out_end, mid)
        G.add_edge(mid, in_end)
    planar, emb = nx.check_planarity(G)
    if not planar:
        raise InvalidDTCode("invalid DT code: pairing is not realizable by a planar diagram")
    signs = []
    for i in range(n):
        order = list(emb.neighbors_cw_order(("hub", i)))
        k0 = order.index(("c", i, 0))
        nxt = order[(k0 + 1) % 4]
        signs.append(1 if nxt == ("c", i, 1) else -1)
    return signs


def wirtinger_from_dt(dt_code: Sequence[int]) -> GroupPresentation:
    """Wirtinger presentation of the knot with the given DT code.

    Positive entries mean the odd-labelled passage is the over-strand.
    One generator per arc, one relator per crossing, the last relator
    dropped (it is a consequence of the others).
    """
    code = _validate_dt(dt_code)
    n = len(code)
    over_odd = [a > 0 for a in code]
    orient = _crossing_orientations(code)
    under_labels = []
    for i, a in enumerate(code):
        under_labels.append(abs(a) if over_odd[i] else 2 * i + 1)
    unders = sorted(under_labels)
    pos = {lab: k for k, lab in enumerate(unders)}

    def arc_of(label):
        # arc k runs from just after unders[k] up to and including unders[k+1]
        k = -1
        for j, u in enumerate(unders):
            if u < label:
                k = j
        return k % n

    relators = []
    for i, a in enumerate(code):
        u = under_labels[i]
        o = 2 * i + 1 if over_odd[i] else abs(a)
        x_o = arc_of(o)
        x_in = (pos[u] - 1) % n
        x_out = pos[u]
        # orientation of (odd strand, even strand) -> sign of (over, under)
        sign = orient[i] if over_odd[i] else -orient[i]
        o_w = Word.generator(x_o, sign)
        rel = o_w * Word.generator(x_in) * o_w.inverse() * Word.generator(x_out, -1)
        relators.append(rel)
    return GroupPresentation.from_words(n, relators[:-1])


# -- abelianization --------------------------------------------------------

@dataclass(frozen=True)
class AbelianizationData:
    """H_1 = Z^betti + sum Z/d_i with explicit projections.

    ``proj_free[j]`` and ``proj_tors[j]`` are the images of generator j.
    ``free_basis[i]`` and ``torsion_basis[i]`` are exponent vectors (words
    in the abelianized generators) representing the chosen basis elements.
    """

    generator_count: int
    betti: int
    torsion_orders: tuple[int, ...]
    proj_free: tuple[tuple[int, ...], ...]
    proj_tors: tuple[tuple[int, ...], ...]
    free_basis: tuple[tuple[int, ...], ...] = field(repr=False)
    torsion_basis: tuple[tuple[int, ...], ...] = field(repr=False)

    def free_vector(self, w: Word | Sequence[int]) -> tuple[int, ...]:
        v = w.exponent_vector(self.generator_count) if isinstance(w, Word) else w
        return tuple(sum(v[j] * self.proj_free[j][i] for j in range(self.generator_count))
                     for i in range(self.betti))

    def torsion_vector(self, w: Word | Sequence[int]) -> tuple[int, ...]:
        v = w.exponent_vector(self.generator_count) if isinstance(w, Word) else w
        return tuple(sum(v[j] * self.proj_tors[j][i] for j in range(self.generator_count)) % d
                     for i, d in enumerate(self.torsion_orders))


def abelianize(p: GroupPresentation) -> AbelianizationData:
    m = p.generator_count
    R = [r.exponent_vector(m) for r in p.relators]
    U, D, V = smith_normal_form(R, m)
    diag = [D[i][i] for i in range(min(len(R), m))]
    rank = sum(1 for d in diag if d)
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    free_idx = list(range(rank, m))
    Vinv = inverse_unimodular(V)
    orders = tuple(diag[i] for i in tors_idx)
    proj_free = tuple(tuple(V[j][i] for i in free_idx) for j in range(m))
    proj_tors = tuple(tuple(V[j][i] % diag[i] for i in tors_idx) for j in range(m))
    return AbelianizationData(
        generator_count=m,
        betti=len(free_idx),
        torsion_orders=orders,
        proj_free=proj_free,
        proj_tors=proj_tors,
        free_basis=tuple(tuple(Vinv[i]) for i in free_idx),
        torsion_basis=tuple(tuple(Vinv[i]) for i in tors_idx),
    )


# -- classes and characters ------------------------------------------------

@dataclass(frozen=True)
class CohomologyClass:
    """psi in Hom(G, Z), G = H_1 / torsion, given on the chosen basis of G."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, n: int) -> "CohomologyClass":
        return CohomologyClass(tuple(n * c for c in self.coeffs))

    __rmul__ = __mul__

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return self * -1

    def on(self, g: Sequence[int]) -> int:
        """Value on an element of G given in basis coordinates."""
        return sum(a * b for a, b in zip(self.coeffs, g))

    def primitive(self) -> "CohomologyClass":
        n = divisibility(self)
        return CohomologyClass(tuple(c // n for c in self.coeffs))


def divisibility(psi: CohomologyClass) -> int:
    """Largest positive integer dividing psi."""
    if psi.is_zero():
        raise ZeroClassError()
    return reduce(gcd, (abs(c) for c in psi.coeffs))


def evaluate_class(psi: CohomologyClass, w: Word, ab: AbelianizationData) -> int:
    if len(psi) != ab.betti:
        raise ValueError(f"class has {len(psi)} coordinates, b1 = {ab.betti}")
    return psi.on(ab.free_vector(w))


@dataclass(frozen=True)
class Character:
    """sigma: Tors H_1 -> <zeta_n>, zeta_n^images[i] on the i-th torsion generator."""

    order: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("character order must be positive")
        object.__setattr__(self, "images", tuple(int(e) % self.order for e in self.images))

    @classmethod
    def trivial(cls, ab: AbelianizationData | None = None) -> "Character":
        return cls(1, (0,) * (len(ab.torsion_orders) if ab else 0))

    def check(self, ab: AbelianizationData) -> None:
        if len(self.images) != len(ab.torsion_orders):
            raise ValueError(f"character needs {len(ab.torsion_orders)} images, "
                             f"got {len(self.images)}")
        for e, d in zip(self.images, ab.torsion_orders):
            if (d * e) % self.order:
                raise ValueError(f"image zeta_{self.order}^{e} has order not dividing {d}")

    def is_trivial(self) -> bool:
        return not any(self.images)

    def exponent(self, tors: Sequence[int]) -> int:
        """k with sigma(element) = zeta_n^k, element given in torsion coordinates."""
        return sum(e * c for e, c in zip(self.images, tors)) % self.order

    def image_order(self) -> int:
        """Order of the image subgroup sigma(Tors H_1) in the roots of unity."""
        g = reduce(gcd, self.images, self.order)
        return self.order // g


def class_from_generator_values(ab: AbelianizationData, values: Sequence[int]) -> CohomologyClass:
    """The class with psi(x_j) = values[j]; values must kill every relator."""
    coeffs = tuple(sum(b[j] * values[j] for j in range(ab.generator_count)) for b in ab.free_basis)
    psi = CohomologyClass(coeffs)
    for j in range(ab.generator_count):
        if psi.on(ab.proj_free[j]) != values[j]:
            raise ValueError("generator values do not define a homomorphism to Z")
    return psi


# -- Tietze moves ------------------------------------------------------------

@dataclass(frozen=True)
class TietzeMap:
    """A presentation together with the images of its generators as words
    in the generators of an original presentation."""

    presentation: GroupPresentation
    images: tuple[Word, ...]

    @classmethod
    def identity(cls, p: GroupPresentation) -> "TietzeMap":
        return cls(p, tuple(Word.generator(j) for j in range(p.generator_count)))

    def pull(self, w: Word) -> Word:
        """Rewrite a word in the current generators in the original ones."""
        out = Word()
        for g, s in w:
            out = out * (self.images[g] if s == 1 else self.images[g].inverse())
        return out


def tietze_add_generator(t: TietzeMap, w: Word) -> TietzeMap:
    """New generator y with the relator y w^-1 (w in the current generators)."""
    p = t.presentation
    m = p.generator_count
    names = list(p.generator_names)
    k = m
    while f"x{k}" in names:
        k += 1
    names.append(f"x{k}")
    rel = Word.generator(m) * w.inverse()
    q = GroupPresentation(tuple(names), p.relators + (rel,))
    return TietzeMap(q, t.images + (t.pull(w),))


def tietze_add_consequence(t: TietzeMap, i: int, j: int, g: Word) -> TietzeMap:
    """Append the relator g r_i g^-1 r_j."""
    p = t.presentation
    rel = p.relators[i].conjugate(g) * p.relators[j]
    return TietzeMap(GroupPresentation(p.generator_names, p.relators + (rel,)), t.images)
