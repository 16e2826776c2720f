"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
from pathlib import Path

import pytest

from oracles import fox_identity_residual, knot_alexander, laurent_to_sympy
from support import (
    KNOTS,
    certificate_ok,
    forest_presentation,
    inversion_field,
    order_two_character,
    random_class,
    random_coeff,
    random_skew,
    random_skew_matrix,
    random_tietze,
    random_word,
    swap_field,
    torsion_presentation,
    transport,
)
from thurston.bounds import (
    CoefficientConfig,
    build_ring_hom,
    compute_bound,
    cross_validate,
    h1_rank,
    stretch,
    twisted_chain_complex,
)
from thurston.commalg import LaurentPoly, alexander_fox_norm, delta_sigma, newton_polytope
from thurston.foxcalc import FreeGroupRingElt, fox_derivative
from thurston.presentations import Character, CohomologyClass, Word, abelianize, wirtinger_from_dt
from thurston.skewlaurent import (
    SkewField,
    harvey_estimate_check,
    left_divide,
    ore_rank,
    right_divide,
)

README = Path(__file__).resolve().parent.parent / "README.md"


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def seifert(sigma):
    return CoefficientConfig("seifert", sigma)


def rank_status(p, psi, cfg, ab=None):
    phi = build_ring_hom(p, psi, cfg, ab)
    d2, d1 = twisted_chain_complex(p, phi)
    return h1_rank(d2, d1, phi.K), d2


def test_knot_regression(report):
    bad = []
    for name, (dt, span, fibered) in KNOTS.items():
        p = wirtinger_from_dt(dt)
        delta = delta_sigma(p, Character(1, ()))
        oracle = knot_alexander(p.generator_count, [r.letters for r in p.relators])
        if laurent_to_sympy(delta) != oracle:
            bad.append(f"{name}: Delta {delta} vs oracle {oracle.as_expr()}")
        chi = 2 * (span // 2) - 1 if fibered else None
        r = compute_bound(p, CohomologyClass((1,)), seifert(Character(1, ())), epsilon=1, fiber_chi_minus=chi)
        if r.bound != span - 1:
            bad.append(f"{name}: bound {r.bound}, want {span - 1}")
        if fibered and not r.fibered["equal"]:
            bad.append(f"{name}: fibered check failed")
    report(1, not bad, f"{len(KNOTS)} knots, Delta vs Fox oracle, bound = span - 1, fibered equality"
           + ("; " + "; ".join(bad) if bad else ""))


def test_cross_validation(report):
    rng = random.Random(2024)
    cases = []
    for b1 in (1, 1, 2, 2, 3):
        for _ in range(2):
            cases.append((forest_presentation(rng, rng.randint(max(3, b1 + 1), 5), b1), "trivial"))
    for b1 in (1, 1, 2):
        for _ in range(2):
            p = torsion_presentation(rng, rng.randint(b1 + 2, 5), b1)
            cases.append((p, "order2"))
            cases.append((p, "trivial"))
    bad, kinds = [], set()
    for p, which in cases:
        assert p.deficiency == 1
        ab = abelianize(p)
        sigma = order_two_character(ab) if which == "order2" else Character.trivial(ab)
        psi = random_class(rng, ab.betti).primitive()
        rank, norm, equal = cross_validate(p, psi, sigma, ab)
        kinds.add((ab.betti > 1, which, rank is None))
        if not equal:
            bad.append(f"{p} psi={psi.coeffs}: rank {rank} vs norm {norm}")
    report(2, not bad and len(cases) >= 20,
           f"{len(cases)} presentations ({len(kinds)} kinds of case), {len(bad)} mismatches")


def _harvey_instances(rng, K, count):
    for _ in range(count):
        l, m = rng.randint(1, 6), rng.randint(1, 6)
        A = [[random_coeff(rng, K) if rng.random() < 0.7 else K.zero for _ in range(m)] for _ in range(l)]
        B = [[random_coeff(rng, K) if rng.random() < 0.7 else K.zero for _ in range(m)] for _ in range(l)]
        yield A, B


def test_harvey_estimate(report):
    rng = random.Random(3)
    counts = {}
    for label, K in (("Q", SkewField(0)), ("Q(u), u -> 1/u", inversion_field())):
        counts[label] = sum(not harvey_estimate_check(A, B, K) for A, B in _harvey_instances(rng, K, 200))
    report(3, not any(counts.values()),
           "200 instances each, l, m <= 6; violations: " + ", ".join(f"{k}: {v}" for k, v in counts.items()))


def test_fox_identity(report):
    rng = random.Random(11)
    bad = 0
    for _ in range(500):
        w = random_word(rng, 4, rng.randint(0, 30))
        lhs = FreeGroupRingElt()
        for j in range(4):
            lhs = lhs + fox_derivative(w, j) * FreeGroupRingElt({Word.generator(j): 1, Word(): -1})
        rhs = FreeGroupRingElt([(w, 1), (Word(), -1)])
        bad += lhs != rhs or fox_identity_residual(w.letters, 4) != {}
    report(4, bad == 0, f"500 words of length <= 30 on 4 generators, {bad} failures")


def test_skew_certificates(report):
    K = swap_field()
    bad = []
    n = 0
    for seed in range(100):
        rng = random.Random(seed)
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = random_skew_matrix(rng, K, r, c)
        form = certificate_ok(A, K)
        if form is None:
            bad.append(f"seed {seed}: certificate")
            continue
        if len(form.diag) != ore_rank(A, K):
            bad.append(f"seed {seed}: ore_rank")
        entries = [e for row in A for e in row if e]
        for f, g in zip(entries, entries[1:]):
            if (f * g).span() != f.span() + g.span():
                bad.append(f"seed {seed}: span additivity")
            h = f * g + random_skew(rng, K, 2, 3)
            q, rem = right_divide(h, g)
            if h != g * q + rem or (rem and rem.span() >= g.span()):
                bad.append(f"seed {seed}: right division")
            q, rem = left_divide(h, f)
            if h != q * f + rem or (rem and rem.span() >= f.span()):
                bad.append(f"seed {seed}: left division")
        n += 1
    report(5, not bad and n >= 100, f"{n} matrices up to 5x5 over Q(u, v) with swap; "
           + (", ".join(bad[:5]) if bad else "all certificates exact"))


def test_seminorm_laws(report):
    rng = random.Random(6)
    bad = 0
    for _ in range(120):
        nv = rng.randint(2, 4)
        d = LaurentPoly({tuple(rng.randint(-3, 3) for _ in range(nv)): rng.choice([1, -1, 2, -3])
                         for _ in range(rng.randint(1, 8))}, nv)
        a = tuple(rng.randint(-5, 5) for _ in range(nv))
        b = tuple(rng.randint(-5, 5) for _ in range(nv))
        k = rng.randint(-4, 4)
        norm = lambda v: alexander_fox_norm(d, v)  # noqa: E731
        bad += norm(tuple(k * x for x in a)) != abs(k) * norm(a)
        bad += norm(tuple(x + y for x, y in zip(a, b))) > norm(a) + norm(b)
        bad += newton_polytope(d).width(a) != norm(a)
    report(6, bad == 0, f"120 random supports in 2-4 variables, {bad} violations")


def _scaling_cases(rng):
    for dt, _, _ in KNOTS.values():
        yield wirtinger_from_dt(dt), Character(1, ())
    for _ in range(4):
        p = torsion_presentation(rng, rng.randint(3, 5), 1)
        yield p, order_two_character(abelianize(p))


def test_scaling(report):
    rng = random.Random(7)
    bad, count = [], 0
    for p, sigma in _scaling_cases(rng):
        ab = abelianize(p)
        prim = CohomologyClass((1,))
        base, d2 = rank_status(p, prim, seifert(sigma), ab)
        for n in (2, 3):
            direct, d2n = rank_status(p, prim * n, seifert(sigma), ab)
            if direct.status != base.status or (base.rank is not None and direct.rank != n * base.rank):
                bad.append(f"{p} n={n}: {direct.rank} vs {n} x {base.rank}")
            K = d2n[0][0].K if d2n and d2n[0] else None
            if any(stretch(e, n, K) != en for row, rown in zip(d2, d2n) for e, en in zip(row, rown)):
                bad.append(f"{p} n={n}: stretched d_2 differs")
            r = compute_bound(p, prim * n, seifert(sigma), mode="complex")
            if r.rank != direct.rank:
                bad.append(f"{p} n={n}: reported rank {r.rank}")
        count += 1
    report(7, not bad and count >= 10, f"{count} presentations, n in (2, 3); " + ("; ".join(bad) or "exact"))


def test_tietze_invariance(report):
    rng = random.Random(8)
    cases = [(wirtinger_from_dt(KNOTS[k][0]), "trivial") for k in ("3_1", "4_1", "5_2")]
    cases += [(torsion_presentation(rng, rng.randint(3, 5), 1), "order2") for _ in range(4)]
    cases += [(forest_presentation(rng, rng.randint(3, 5), 2), "trivial") for _ in range(3)]
    bad = []
    for p, which in cases:
        ab = abelianize(p)
        sigma = order_two_character(ab) if which == "order2" else Character.trivial(ab)
        psi = random_class(rng, ab.betti).primitive()
        cfg = CoefficientConfig("alexander_fox", sigma)
        before, _ = rank_status(p, psi, cfg, ab)
        t = random_tietze(rng, p, 5)
        q, ab2, psi2, sigma2 = transport(t, ab, psi, sigma)
        after, _ = rank_status(q, psi2, CoefficientConfig("alexander_fox", sigma2), ab2)
        if (before.status, before.rank) != (after.status, after.rank):
            bad.append(f"{p}: {before.status}/{before.rank} -> {after.status}/{after.rank}")
    report(8, not bad and len(cases) >= 10, f"{len(cases)} presentations, 5 moves each; "
           + ("; ".join(bad) or "rank_status unchanged"))


def test_disclosure(report):
    text = README.read_text(encoding="utf-8")
    ok = "## What is not reproduced" in text and "fibered check" in text
    report(9, ok, "README states that true Thurston norms are not computed from above "
           "beyond user-supplied fibered data")
