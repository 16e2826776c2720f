"""Random inputs and small fixtures shared by the test modules."""

from __future__ import annotations

import random

from thurston.commalg import LaurentPoly
from thurston.presentations import (
    Character,
    CohomologyClass,
    GroupPresentation,
    TietzeMap,
    Word,
    abelianize,
    class_from_generator_values,
    tietze_add_consequence,
    tietze_add_generator,
)
from thurston.skewlaurent import MonomialAutomorphism, SkewField, SkewLaurentPoly

# name -> (DT code, span of Delta, fibered)
KNOTS = {
    "3_1": ([4, 6, 2], 2, True),
    "4_1": ([4, 6, 8, 2], 2, True),
    "5_2": ([4, 8, 10, 2, 6], 2, False),
    "6_1": ([4, 8, 12, 10, 2, 6], 2, False),
    "T(2,5)": ([6, 8, 10, 2, 4], 4, True),
    "T(2,7)": ([8, 10, 12, 14, 2, 4, 6], 6, True),
    "T(3,4)": ([4, 8, -12, 2, -14, -16, -6, -10], 6, True),
}


def random_word(rng: random.Random, m: int, length: int) -> Word:
    return Word([(rng.randrange(m), rng.choice((1, -1))) for _ in range(length)])


def _forest(rng, m, ncomp, maxlen=3):
    """Wirtinger-style relators w x_i w^-1 x_k^-1 along a random forest."""
    order = list(range(m))
    rng.shuffle(order)
    rels = []
    for idx in range(ncomp, m):
        k, i = order[idx], order[rng.randrange(idx)]
        w = random_word(rng, m, rng.randint(1, maxlen))
        rels.append(w * Word.generator(i) * w.inverse() * Word.generator(k).inverse())
    return rels, order[:ncomp]


def _pad(rng, m, rels):
    while len(rels) < m - 1:
        a, b = random_word(rng, m, rng.randint(1, 3)), random_word(rng, m, rng.randint(1, 3))
        rels.append(a * b * a.inverse() * b.inverse())
    return rels


def forest_presentation(rng: random.Random, m: int, b1: int) -> GroupPresentation:
    """Deficiency one, H_1 = Z^b1 (torsion free)."""
    rels, _ = _forest(rng, m, b1)
    return GroupPresentation.from_words(m, _pad(rng, m, rels))


def torsion_presentation(rng: random.Random, m: int, b1: int) -> GroupPresentation:
    """Deficiency one, H_1 = Z^b1 + Z/2: two forest roots a, b tied by u a^2 u^-1 b^2."""
    rels, roots = _forest(rng, m, b1 + 1)
    a, b = roots[0], roots[1]
    u = random_word(rng, m, rng.randint(0, 2))
    rels.append(u * Word.generator(a, 2) * u.inverse() * Word.generator(b, 2))
    return GroupPresentation.from_words(m, _pad(rng, m, rels))


def order_two_character(ab) -> Character:
    return Character(2, tuple(1 if d % 2 == 0 else 0 for d in ab.torsion_orders))


def random_class(rng: random.Random, b: int, bound: int = 2) -> CohomologyClass:
    while True:
        psi = CohomologyClass(tuple(rng.randint(-bound, bound) for _ in range(b)))
        if not psi.is_zero():
            return psi


def random_tietze(rng: random.Random, p: GroupPresentation, moves: int) -> TietzeMap:
    t = TietzeMap.identity(p)
    for _ in range(moves):
        q = t.presentation
        m = q.generator_count
        if q.relators and rng.random() < 0.5:
            i, j = rng.randrange(len(q.relators)), rng.randrange(len(q.relators))
            t = tietze_add_consequence(t, i, j, random_word(rng, m, rng.randint(0, 3)))
        else:
            t = tietze_add_generator(t, random_word(rng, m, rng.randint(1, 4)))
    return t


def transport(t: TietzeMap, ab_old, psi: CohomologyClass, sigma: Character):
    """psi and sigma expressed on the presentation reached by Tietze moves."""
    q = t.presentation
    ab = abelianize(q)
    vals = [psi.on(ab_old.free_vector(w)) for w in t.images]
    psi_new = class_from_generator_values(ab, vals)
    images = []
    for b in ab.torsion_basis:
        w = Word([(j, 1 if e > 0 else -1) for j, e in enumerate(b) for _ in range(abs(e))])
        images.append(sigma.exponent(ab_old.torsion_vector(t.pull(w))))
    sig_new = Character(sigma.order, tuple(images))
    return q, ab, psi_new, sig_new


# -- skew fields -------------------------------------------------------------

def swap_field() -> SkewField:
    """Q(u, v) with alpha swapping u and v."""
    return SkewField(2, aut=MonomialAutomorphism([[0, 1], [1, 0]]), names=("u", "v"))


def inversion_field() -> SkewField:
    """Q(u) with alpha(u) = 1/u."""
    return SkewField(1, aut=MonomialAutomorphism([[-1]]), names=("u",))


def random_monomial_coeff(rng: random.Random, K: SkewField):
    c = rng.choice([1, -1, 2, -2, 3])
    if K.k == 0:
        return K(c)
    e = tuple(rng.randint(0, 1) for _ in range(K.k))
    return K(LaurentPoly({e: c}, K.k, names=K.names))


def random_coeff(rng: random.Random, K: SkewField, terms: int = 2, denominators: bool = False):
    """A small element of K: a sum of monomials, optionally over another such sum."""
    a = K.zero
    for _ in range(rng.randint(1, terms)):
        a = a + random_monomial_coeff(rng, K)
    if denominators and K.k and rng.random() < 0.3:
        b = K.zero
        while not b:
            b = random_monomial_coeff(rng, K) + K.one
        a = a / b
    return a


def random_skew(rng: random.Random, K: SkewField, max_terms: int = 2, span: int = 1,
                coeff=None) -> SkewLaurentPoly:
    coeff = coeff or (lambda: random_monomial_coeff(rng, K))
    lo = rng.randint(-1, 1)
    degs = rng.sample(range(lo, lo + span + 1), rng.randint(1, min(max_terms, span + 1)))
    return SkewLaurentPoly(K, {d: coeff() for d in degs})


def random_skew_matrix(rng: random.Random, K: SkewField, rows: int, cols: int,
                       density: float = 0.5) -> list:
    return [[random_skew(rng, K) if rng.random() < density else SkewLaurentPoly(K)
             for _ in range(cols)] for _ in range(rows)]


def certificate_ok(A, K: SkewField, cols: int | None = None):
    """Diagonalize with certificates and check U A V = D, U U^-1 = 1, V V^-1 = 1.

    Returns the form when everything holds, None otherwise.
    """
    from thurston.skewlaurent import diagonalize, identity_matrix, mat_mul

    form = diagonalize(A, K, cols, certify=True)
    r, c = form.rows, form.cols
    if r and c and mat_mul(K, mat_mul(K, form.U, A, r), form.V, c) != form.D:
        return None
    if mat_mul(K, form.U, form.U_inv, r) != identity_matrix(K, r):
        return None
    if mat_mul(K, form.V, form.V_inv, c) != identity_matrix(K, c):
        return None
    for i in range(r):
        for j in range(c):
            if i != j and form.D[i][j]:
                return None
    if [form.D[i][i] for i in range(len(form.diag))] != form.diag:
        return None
    return form
