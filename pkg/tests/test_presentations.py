import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reduce_word, snf_invariants
from support import KNOTS, forest_presentation, random_word, torsion_presentation
from thurston.commalg import delta_sigma
from thurston.presentations import (
    Character,
    CohomologyClass,
    GroupPresentation,
    InvalidDTCode,
    PresentationSyntaxError,
    Word,
    ZeroClassError,
    abelianize,
    class_from_generator_values,
    divisibility,
    evaluate_class,
    parse_presentation,
    wirtinger_from_dt,
)

letters = st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=30)


def test_parse_two_generators():
    p = parse_presentation("gens: x, y; rels: x y x y^-1 x^-1 y^-1;")
    assert p.generator_count == 2
    assert p.generator_names == ("x", "y")
    assert len(p.relators) == 1 and len(p.relators[0]) == 6


def test_parse_unknot_and_free_reduction():
    p = parse_presentation("gens: x; rels: ;")
    assert p.generator_count == 1 and p.relators == ()
    q = parse_presentation("gens: x; rels: x x^-1;")
    assert q.relators == (Word(),)


def test_parse_powers_comments_and_lines():
    p = parse_presentation("# a comment\ngens: a, b;\nrels: a^3 b^(-2), 1;")
    assert p.relators[0].letters == ((0, 1),) * 3 + ((1, -1),) * 2
    assert p.relators[1] == Word()


@pytest.mark.parametrize("text, where", [
    ("gens: ; rels: ;", (1, 7)),
    ("gens: x; rels: y;", (1, 16)),
    ("gens: x, x; rels: ;", (1, 10)),
    ("gens: x;\nrels: x^0;", (2, 9)),
    ("gens: x rels: x;", (1, 9)),
])
def test_parse_errors_carry_position(text, where):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation(text)
    assert (err.value.line, err.value.column) == where


def test_word_rejects_bad_letters():
    with pytest.raises(ValueError):
        Word([(0, 2)])
    with pytest.raises(ValueError):
        GroupPresentation(("x",), (Word([(1, 1)]),))


@given(letters)
def test_free_reduction_idempotent(ls):
    w = Word(ls)
    assert w.letters == reduce_word(ls)
    assert Word(w.letters) == w
    assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(w.letters, w.letters[1:]))


@given(letters, letters)
def test_word_group_laws(a, b):
    u, v = Word(a), Word(b)
    assert (u * v).letters == reduce_word(u.letters + v.letters)
    assert u * u.inverse() == Word()
    assert (u * v).inverse() == v.inverse() * u.inverse()


@pytest.mark.parametrize("dt, m", [([4, 6, 2], 3), ([4, 6, 8, 2], 4)])
def test_wirtinger_shape(dt, m):
    p = wirtinger_from_dt(dt)
    assert p.generator_count == m and len(p.relators) == m - 1
    ab = abelianize(p)
    assert ab.betti == 1 and ab.torsion_orders == ()


@pytest.mark.parametrize("name", list(KNOTS))
def test_wirtinger_knot_table(name):
    p = wirtinger_from_dt(KNOTS[name][0])
    assert p.deficiency == 1
    # every Wirtinger generator is a meridian: all project to the same +-1
    ab = abelianize(p)
    vals = {ab.proj_free[j] for j in range(p.generator_count)}
    assert len(vals) == 1 and abs(next(iter(vals))[0]) == 1


@pytest.mark.parametrize("code", [[], [3, 6, 2], [4, 4, 2], [4, 6, 20]])
def test_invalid_dt(code):
    with pytest.raises(InvalidDTCode):
        wirtinger_from_dt(code)


def test_kinked_unknot_diagram():
    # three nugatory crossings: the group is Z
    p = wirtinger_from_dt([2, 4, 6])
    assert abelianize(p).betti == 1
    assert str(delta_sigma(p, Character(1, ()))) == "1"


def test_abelianize_examples():
    ab = abelianize(parse_presentation("gens: x, y; rels: x y x y^-1 x^-1 y^-1;"))
    assert ab.betti == 1 and ab.torsion_orders == ()
    ab = abelianize(parse_presentation("gens: x; rels: x^2;"))
    assert ab.betti == 0 and ab.torsion_orders == (2,)
    ab = abelianize(parse_presentation("gens: x, y; rels: ;"))
    assert ab.betti == 2 and ab.torsion_orders == ()


def test_abelianize_against_minors():
    rng = random.Random(5)
    for _ in range(40):
        m = rng.randint(1, 4)
        rels = [random_word(rng, m, rng.randint(0, 8)) for _ in range(rng.randint(0, 4))]
        p = GroupPresentation.from_words(m, rels)
        ab = abelianize(p)
        R = [r.exponent_vector(m) for r in rels]
        inv = snf_invariants(R) if R else []
        assert ab.betti == m - len(inv)
        assert ab.torsion_orders == tuple(d for d in inv if d > 1)
        for r in p.relators:
            assert not any(ab.free_vector(r)) and not any(ab.torsion_vector(r))
        # the chosen bases map to the standard basis
        for i, b in enumerate(ab.free_basis):
            assert list(ab.free_vector(b)) == [int(i == k) for k in range(ab.betti)]
        for i, b in enumerate(ab.torsion_basis):
            assert list(ab.torsion_vector(b)) == [int(i == k) for k in range(len(ab.torsion_orders))]


def test_torsion_family_has_order_two():
    rng = random.Random(2)
    for b1 in (1, 2):
        ab = abelianize(torsion_presentation(rng, 4, b1))
        assert ab.betti == b1 and ab.torsion_orders == (2,)


def test_divisibility():
    assert divisibility(CohomologyClass((2, 4))) == 2
    assert divisibility(CohomologyClass((1, 0, 0))) == 1
    with pytest.raises(ZeroClassError, match="nonzero class required"):
        divisibility(CohomologyClass((0, 0)))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4).filter(any), st.integers(1, 9))
def test_divisibility_scales(v, n):
    psi = CohomologyClass(v)
    assert divisibility(psi * n) == n * divisibility(psi)
    assert divisibility(psi.primitive()) == 1


def test_evaluate_class_examples():
    p = parse_presentation("gens: x, y; rels: x y x^-1 y^-1;")
    ab = abelianize(p)
    x, y = Word.generator(0), Word.generator(1)
    psi_x = class_from_generator_values(ab, [1, 0])
    assert evaluate_class(psi_x, x * y * x.inverse(), ab) == 0
    assert evaluate_class(psi_x, x * y * x, ab) == 2
    assert evaluate_class(psi_x, Word(), ab) == 0
    assert evaluate_class(class_from_generator_values(ab, [1, 1]), x * y, ab) == 2


@settings(max_examples=50)
@given(st.integers(0, 10 ** 6), letters, letters)
def test_evaluate_class_is_additive(seed, a, b):
    rng = random.Random(seed)
    p = forest_presentation(rng, 4, rng.randint(1, 3))
    ab = abelianize(p)
    psi = CohomologyClass([rng.randint(-3, 3) for _ in range(ab.betti)])
    u, v = Word(a), Word(b)
    assert evaluate_class(psi, u * v, ab) == evaluate_class(psi, u, ab) + evaluate_class(psi, v, ab)
    for r in p.relators:
        assert evaluate_class(psi, r, ab) == 0


def test_class_from_generator_values_rejects_non_homomorphisms():
    ab = abelianize(parse_presentation("gens: x, y; rels: x y^-1;"))
    assert class_from_generator_values(ab, [2, 2]).coeffs in ((2,), (-2,))
    with pytest.raises(ValueError):
        class_from_generator_values(ab, [1, 0])


def test_character_checks_orders():
    ab = abelianize(parse_presentation("gens: x, y; rels: x^2;"))
    Character(2, (1,)).check(ab)
    Character(4, (2,)).check(ab)
    with pytest.raises(ValueError):
        Character(4, (1,)).check(ab)
    with pytest.raises(ValueError):
        Character(2, ()).check(ab)
