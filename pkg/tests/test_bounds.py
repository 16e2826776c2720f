import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import (
    KNOTS,
    forest_presentation,
    order_two_character,
    random_class,
    random_word,
    torsion_presentation,
)
from thurston.bounds import (
    NO_BOUND,
    CoefficientConfig,
    CrossValidationError,
    InconsistentConfiguration,
    RankStatus,
    assemble_bound,
    build_ring_hom,
    compute_bound,
    cross_validate,
    detect_cyclic_phi,
    h1_rank,
    stretch,
    twisted_chain_complex,
)
from thurston.presentations import (
    Character,
    CohomologyClass,
    ZeroClassError,
    abelianize,
    evaluate_class,
    parse_presentation,
    wirtinger_from_dt,
)
from thurston.skewlaurent import SkewField, SkewLaurentPoly

TREFOIL = parse_presentation("gens: x, y; rels: x y x y^-1 x^-1 y^-1;")
UNKNOT = parse_presentation("gens: x; rels: ;")
F2 = parse_presentation("gens: a, b; rels: ;")
ONE = CohomologyClass((1,))


def cfg(kind, sigma, **kw):
    return CoefficientConfig(kind, sigma, **kw)


def rank_of(p, psi, c):
    phi = build_ring_hom(p, psi, c)
    d2, d1 = twisted_chain_complex(p, phi)
    return h1_rank(d2, d1, phi.K)


# -- ring homomorphisms and chain complexes ---------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["seifert", "alexander_fox"]))
def test_ring_hom_is_multiplicative_and_sees_psi(seed, kind):
    rng = random.Random(seed)
    b1 = rng.randint(1, 2)
    p = torsion_presentation(rng, 4, b1)
    ab = abelianize(p)
    psi = random_class(rng, b1)
    if kind == "alexander_fox":
        psi = psi.primitive()
    phi = build_ring_hom(p, psi, cfg(kind, order_two_character(ab)), ab)
    for _ in range(5):
        u, v = random_word(rng, 4, 8), random_word(rng, 4, 8)
        assert phi.unit(u * v) == phi.unit(u) * phi.unit(v)
        assert phi.word(u)[0] == evaluate_class(psi, u, ab)
    d2, d1 = twisted_chain_complex(p, phi)
    assert len(d2) == len(p.relators) and len(d1) == p.generator_count


def test_h1_rank_examples():
    triv = Character(1, ())
    assert rank_of(TREFOIL, ONE, cfg("seifert", triv)) == RankStatus("torsion", 2, 1, (2,))
    assert rank_of(UNKNOT, ONE, cfg("seifert", triv)).rank == 0
    s = rank_of(F2, CohomologyClass((1, 0)), cfg("alexander_fox", triv))
    assert s.status == "not_fg_over_K" and s.rank is None


@pytest.mark.parametrize("name", list(KNOTS))
def test_knot_ranks(name):
    dt, span, _ = KNOTS[name]
    p = wirtinger_from_dt(dt)
    for kind in ("seifert", "alexander_fox"):
        assert rank_of(p, ONE, cfg(kind, Character(1, ()))).rank == span


# -- cyclicity ---------------------------------------------------------------

def test_detect_cyclic_examples():
    triv = Character(1, ())
    c = cfg("seifert", triv)
    assert detect_cyclic_phi(TREFOIL, build_ring_hom(TREFOIL, ONE, c), c) is True
    c = cfg("alexander_fox", triv)
    psi = CohomologyClass((1, 0))
    assert detect_cyclic_phi(F2, build_ring_hom(F2, psi, c), c) is False
    # Z x Z/2 with sigma nontrivial: the image {+-t^k} is not cyclic
    p = parse_presentation("gens: x, y; rels: x^2 y^-2, x y x^-1 y^-1;")
    ab = abelianize(p)
    c = cfg("seifert", Character(2, (1,)))
    phi = build_ring_hom(p, ONE, c, ab)
    assert detect_cyclic_phi(p, phi, c, ab) is False


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_seifert_cyclicity_follows_sigma_on_torsion(seed):
    # phi(pi) contains sigma(Tors) x 0 next to an element of nonzero t-degree
    rng = random.Random(seed)
    p = torsion_presentation(rng, 4, 1)
    ab = abelianize(p)
    for sigma, want in ((order_two_character(ab), False), (Character(2, (0,)), True)):
        c = cfg("seifert", sigma)
        assert detect_cyclic_phi(p, build_ring_hom(p, ONE, c, ab), c, ab) is want


# -- assembly ---------------------------------------------------------------

def test_assemble_examples():
    r = assemble_bound(RankStatus("torsion", 2, 1), True, "manifold", 1, 1)
    assert r.bound == 1
    assert assemble_bound(RankStatus("torsion", 5, 1), False, "manifold", 1, 1).bound == 5
    assert assemble_bound(RankStatus("torsion", 1, 1), True, "manifold", 1, 2).bound == 0
    assert assemble_bound(RankStatus("torsion", 2, 1), True, "complex", 3).bound == 3
    r = assemble_bound(RankStatus("torsion", 4, 1), None, "complex", 1)
    assert r.bound == 3 and "undecided" in r.note
    r = assemble_bound(RankStatus("not_fg_over_K", None, 2), False, "manifold", 1, 1)
    assert r.bound == 0 and r.note == NO_BOUND
    with pytest.raises(ValueError):
        assemble_bound(RankStatus("torsion", 2, 1), True, "manifold", 1, 3)


def test_compute_bound_trefoil():
    r = compute_bound(TREFOIL, ONE, cfg("seifert", Character(1, ())), epsilon=1,
                      cross_check=True, fiber_chi_minus=1)
    assert (r.rank, r.cyclic, r.bound) == (2, True, 1)
    assert r.cross_check == {"skew_rank": 2, "norm_sigma": 2, "equal": True}
    assert r.fibered == {"chi_minus": 1, "equal": True}
    r = compute_bound(TREFOIL, CohomologyClass((3,)), cfg("seifert", Character(1, ())), epsilon=1)
    assert (r.rank, r.psi_divisibility, r.bound) == (6, 3, 3)


def test_zero_class_rejected():
    with pytest.raises(ZeroClassError):
        compute_bound(TREFOIL, CohomologyClass((0,)), cfg("seifert", Character(1, ())), epsilon=1)


# -- cross validation ---------------------------------------------------------

def test_cross_validate_examples():
    triv = Character(1, ())
    assert cross_validate(TREFOIL, ONE, triv) == (2, 2, True)
    assert cross_validate(UNKNOT, ONE, triv) == (0, 0, True)
    assert cross_validate(F2, CohomologyClass((1, 0)), triv) == (None, 0, True)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_cross_validate_random(seed, b1):
    rng = random.Random(seed)
    p = forest_presentation(rng, 4, b1)
    psi = random_class(rng, b1).primitive()
    assert cross_validate(p, psi, Character(1, ()))[2]


def test_cross_check_mismatch_raises(monkeypatch):
    import thurston.bounds as b

    monkeypatch.setattr(b, "alexander_fox_norm", lambda d, psi: 99)
    with pytest.raises(CrossValidationError):
        compute_bound(TREFOIL, ONE, cfg("alexander_fox", Character(1, ())), epsilon=1, cross_check=True)


# -- custom skew coefficients and bad configurations ------------------------------------

def test_custom_skew_matches_seifert_on_the_trefoil():
    c = cfg("custom_skew", Character(1, ()), nvars=1, alpha_matrix=((1,),),
            images=((1, "u"), (1, "u")), cyclic=None)
    r = compute_bound(TREFOIL, ONE, c, epsilon=1)
    assert (r.rank, r.cyclic, r.bound) == (2, None, 1)
    assert "undecided" in r.note
    c = cfg("custom_skew", Character(1, ()), images=((1, "1"), (1, "1")), cyclic=True)
    assert compute_bound(TREFOIL, ONE, c, epsilon=1).bound == 1


def test_custom_skew_with_twist():
    # Z^2 = <x, y>, psi(x) = 1, psi(y) = 0; x -> t, y -> u over Q(u), alpha(u) = 1/u.
    # The relator x y x^-1 y^-1 goes to t u t^-1 u^-1 = u^-2, so this is inconsistent,
    # while the Klein bottle group <x, y | x y x^-1 y> is fine.
    bad = parse_presentation("gens: x, y; rels: x y x^-1 y^-1;")
    c = cfg("custom_skew", Character(1, ()), nvars=1, alpha_matrix=((-1,),), images=((1, "1"), (0, "u")))
    with pytest.raises(InconsistentConfiguration, match="relator 1"):
        compute_bound(bad, CohomologyClass((1, 0)), c, epsilon=1)
    klein = parse_presentation("gens: x, y; rels: x y x^-1 y;")
    c = cfg("custom_skew", Character(1, (0,)), nvars=1, alpha_matrix=((-1,),), images=((1, "1"), (0, "u")))
    r = compute_bound(klein, ONE, c, mode="complex")
    assert r.rank_status == "torsion" and r.rank == 0


def test_inconsistent_configurations():
    c = cfg("custom_skew", Character(1, ()), images=((2, "1"), (1, "1")))
    with pytest.raises(InconsistentConfiguration, match="t-degree"):
        compute_bound(TREFOIL, ONE, c, epsilon=1)
    c = cfg("custom_skew", Character(1, ()), images=((1, "1"),))
    with pytest.raises(InconsistentConfiguration, match="generator images"):
        compute_bound(TREFOIL, ONE, c, epsilon=1)
    c = cfg("custom_skew", Character(1, ()), images=((1, "1"), (1, "2")))
    with pytest.raises(InconsistentConfiguration, match="does not map to 1"):
        compute_bound(TREFOIL, ONE, c, epsilon=1)
    with pytest.raises(ValueError):
        CoefficientConfig("novikov", Character(1, ()))


# -- scaling ---------------------------------------------------------------

def test_stretch_is_a_ring_map():
    K = SkewField(0)
    f = SkewLaurentPoly(K, {0: 1, 1: -1, 2: 1})
    g = SkewLaurentPoly(K, {-1: 2, 1: 3})
    assert stretch(f * g, 3) == stretch(f, 3) * stretch(g, 3)
    assert stretch(f, 3).span() == 3 * f.span()
