"""Fox free differential calculus over Z[F] and its abelian pushforward."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .commalg.fields import coefficient_field
from .commalg.polys import LaurentPoly
from .presentations import AbelianizationData, Character, GroupPresentation, Word

__all__ = [
    "FreeGroupRingElt",
    "AlexanderMatrix",
    "fox_derivative",
    "alexander_matrix",
    "push_abelian",
    "group_variable_names",
]


class FreeGroupRingElt:
    """Integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            if not isinstance(w, Word):
                w = Word(w)
            acc[w] = acc.get(w, 0) + int(c)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: Word, c: int = 1) -> "FreeGroupRingElt":
        return cls({w: c})

    @classmethod
    def one(cls) -> "FreeGroupRingElt":
        return cls({Word(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FreeGroupRingElt({Word(): other})
        return isinstance(other, FreeGroupRingElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FreeGroupRingElt") -> "FreeGroupRingElt":
        if isinstance(other, int):
            other = FreeGroupRingElt({Word(): other})
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeGroupRingElt(out)

    __radd__ = __add__

    def __neg__(self):
        return FreeGroupRingElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, FreeGroupRingElt) else -int(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "FreeGroupRingElt":
        if isinstance(other, int):
            return FreeGroupRingElt({w: c * other for w, c in self.terms.items()})
        if isinstance(other, Word):
            other = FreeGroupRingElt({other: 1})
        out: dict[Word, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                w = a * b
                out[w] = out.get(w, 0) + ca * cb
        return FreeGroupRingElt(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return FreeGroupRingElt({other: 1}) * self
        return NotImplemented

    def format(self, names) -> str:
        if not self.terms:
            return "0"
        out = []
        for w in sorted(self.terms):
            c = self.terms[w]
            body = w.format(names)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}" if w else str(abs(c))
            out.append(("-" if c < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"FreeGroupRingElt({self.terms!r})"


def fox_derivative(w: Word, j: int) -> FreeGroupRingElt:
    """d w / d x_j from the Fox axioms.

    A letter x_j at position k contributes +(prefix before it); a letter
    x_j^-1 contributes -(prefix including it).
    """
    out: dict[Word, int] = {}
    letters = w.letters
    for k, (g, s) in enumerate(letters):
        if g != j:
            continue
        if s == 1:
            p = Word._reduced(letters[:k])
            out[p] = out.get(p, 0) + 1
        else:
            p = Word._reduced(letters[:k + 1])
            out[p] = out.get(p, 0) - 1
    return FreeGroupRingElt(out)


@dataclass(frozen=True)
class AlexanderMatrix:
    """Fox Jacobian: rows are relators, columns are generators."""

    rows: int
    cols: int
    entries: tuple[tuple[FreeGroupRingElt, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def alexander_matrix(p: GroupPresentation) -> AlexanderMatrix:
    m = p.generator_count
    entries = tuple(tuple(fox_derivative(r, j) for j in range(m)) for r in p.relators)
    return AlexanderMatrix(len(p.relators), m, entries)


def group_variable_names(b: int) -> tuple[str, ...]:
    return ("t",) if b == 1 else tuple(f"t{i + 1}" for i in range(b))


def push_abelian(e: FreeGroupRingElt, ab: AbelianizationData, sigma: Character,
                 grading=None) -> LaurentPoly:
    """Image of e in Q(zeta_n)[G] under hg -> sigma(h) g.

    ``grading`` optionally replaces the free projection: a callable taking
    a generator exponent vector to an exponent tuple (used for the
    tau-splitting of G); its output length fixes the variable count.
    """
    sigma.check(ab)
    field = coefficient_field(sigma.order)
    m = ab.generator_count
    if grading is None:
        nv = ab.betti
        names = group_variable_names(nv)
        grade = ab.free_vector
    else:
        grade = grading
        nv = len(grade([0] * m))
        names = None
    cache: dict = {}
    terms: dict = {}
    for w, c in e.terms.items():
        v = w.exponent_vector(m)
        key = tuple(v)
        if key not in cache:
            exp = tuple(grade(v))
            k = sigma.exponent(ab.torsion_vector(v))
            cache[key] = (exp, field.root_of_unity(k))
        exp, zeta = cache[key]
        val = terms.get(exp, field.zero) + zeta * c
        terms[exp] = val
    return LaurentPoly({x: v for x, v in terms.items() if v}, nv, field, names)
