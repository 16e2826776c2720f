"""Homological lower bounds for the Thurston norm of a presentation.

The pipeline is: a ring homomorphism phi from Z[pi] to Lambda = K[t^{+-1};
alpha] compatible with psi, the twisted chain complex of the presentation
2-complex, the K-rank of H_1 read off a diagonal form of d_2, and finally
the bound itself.  Matrices use row vectors: d_2 is r x m (one row per
relator), d_1 is m x 1, and the chain condition is d_2 * d_1 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Sequence

from .commalg.alexander import alexander_fox_norm, delta_sigma
from .commalg.polys import LaurentPoly
from .commalg.snf import inverse_unimodular, smith_normal_form
from .foxcalc import FreeGroupRingElt, fox_derivative
from .presentations import (
    AbelianizationData,
    Character,
    CohomologyClass,
    GroupPresentation,
    Word,
    ZeroClassError,
    abelianize,
    divisibility,
)
from .skewlaurent import MonomialAutomorphism, SkewField, SkewLaurentPoly, diagonalize, mat_mul

__all__ = [
    "KINDS",
    "InconsistentConfiguration",
    "CrossValidationError",
    "CoefficientConfig",
    "RingHom",
    "RankStatus",
    "BoundReport",
    "build_ring_hom",
    "twisted_chain_complex",
    "h1_rank",
    "detect_cyclic_phi",
    "assemble_bound",
    "cross_validate",
    "fibered_equality_check",
    "compute_bound",
    "stretch",
]

KINDS = ("seifert", "alexander_fox", "custom_skew")
NO_BOUND = "hypothesis fails; no bound"


class InconsistentConfiguration(ValueError):
    """phi is not a well-defined ring homomorphism compatible with psi."""


class CrossValidationError(RuntimeError):
    """The skew and the commutative computation disagree."""


@dataclass(frozen=True)
class CoefficientConfig:
    """Which coefficient system to use.

    ``seifert``: K = Q(zeta_n), phi(x) = sigma([x]) t^psi(x).
    ``alexander_fox``: K = Q(zeta_n)(U), U the kernel of psi on H/Tors,
    phi(h u tau^m) = sigma(h) u t^m.
    ``custom_skew``: K = Q(zeta_N)(u_1..u_k) with a monomial automorphism
    and user-given generator images t^e c; sigma([x]) multiplies them.
    """

    kind: str
    character: Character
    field_order: int | None = None
    nvars: int = 0
    alpha_matrix: tuple[tuple[int, ...], ...] = ()
    alpha_scalars: tuple[str, ...] | None = None
    images: tuple[tuple[int, str], ...] = ()
    cyclic: bool | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")


@dataclass
class RingHom:
    """x_j -> t^{d_j} c_j, stored as (d_j, c_j)."""

    K: SkewField
    images: tuple[tuple[int, object], ...]
    psi_values: tuple[int, ...]
    relators_checked: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._inverses = tuple(self.unit_inverse(u) for u in self.images)
        self._cache = {(): (0, self.K.one)}

    def unit_mul(self, a, b):
        # t^i c * t^j d = t^{i+j} alpha^j(c) d
        return a[0] + b[0], self.K.alpha(a[1], b[0]) * b[1]

    def unit_inverse(self, a):
        d, c = a
        return -d, self.K.alpha(self.K.inv(c), -d)

    def word(self, w: Word):
        """phi(w) as (t-degree, coefficient)."""
        letters = w.letters
        cache = self._cache
        hit = cache.get(letters)
        if hit is not None:
            return hit
        k = len(letters) - 1
        while k > 0 and letters[:k] not in cache:
            k -= 1
        acc = cache[letters[:k]]
        for i in range(k, len(letters)):
            g, s = letters[i]
            acc = self.unit_mul(acc, self.images[g] if s == 1 else self._inverses[g])
            cache[letters[:i + 1]] = acc
        return acc

    def unit(self, w: Word) -> SkewLaurentPoly:
        d, c = self.word(w)
        return SkewLaurentPoly._raw(self.K, {d: c})

    def element(self, e: FreeGroupRingElt) -> SkewLaurentPoly:
        K = self.K
        terms: dict = {}
        for w, n in e.terms.items():
            d, c = self.word(w)
            v = terms.get(d, K.zero) + c * n
            terms[d] = v
        return SkewLaurentPoly._raw(K, {d: v for d, v in terms.items() if v})

    def generator(self, j: int) -> SkewLaurentPoly:
        d, c = self.images[j]
        return SkewLaurentPoly._raw(self.K, {d: c})


def _embed_root(base, k: int, n: int):
    """zeta_n^k inside Q(zeta_N), N = base order."""
    N = base.order
    if N % n:
        raise InconsistentConfiguration(f"Q(zeta_{N}) does not contain the {n}-th roots of unity")
    return base.root_of_unity(k * (N // n))


def _psi_values(p: GroupPresentation, psi: CohomologyClass, ab: AbelianizationData) -> tuple[int, ...]:
    if len(psi) != ab.betti:
        raise ValueError(f"class has {len(psi)} coordinates, b1 = {ab.betti}")
    if psi.is_zero():
        raise ZeroClassError()
    return tuple(psi.on(ab.proj_free[j]) for j in range(p.generator_count))


def tau_splitting(psi: CohomologyClass, ab: AbelianizationData):
    """Unimodular P with psi P = e_1, and its inverse.

    The columns of P are tau, u_1, .., u_{b-1} in the basis of G; the
    coordinates of g in the new basis are P^-1 g.
    """
    b = ab.betti
    U, _, V = smith_normal_form([list(psi.coeffs)], b)
    s = U[0][0]
    P = [list(row) for row in V]
    for row in P:
        row[0] *= s
    return P, inverse_unimodular(P)


def build_ring_hom(p: GroupPresentation, psi: CohomologyClass, cfg: CoefficientConfig,
                   ab: AbelianizationData | None = None) -> RingHom:
    ab = ab or abelianize(p)
    values = _psi_values(p, psi, ab)
    sigma = cfg.character
    sigma.check(ab)
    m = p.generator_count
    if cfg.kind == "seifert":
        K = SkewField(0, order=cfg.field_order or sigma.order)
        images = tuple((values[j], _embed_root(K.base, sigma.exponent(ab.proj_tors[j]), sigma.order))
                       for j in range(m))
    elif cfg.kind == "alexander_fox":
        if divisibility(psi) != 1:
            raise InconsistentConfiguration("alexander_fox coefficients need a primitive class")
        K = SkewField(ab.betti - 1, order=cfg.field_order or sigma.order)
        _, Pinv = tau_splitting(psi, ab)
        images = []
        for j in range(m):
            g = ab.proj_free[j]
            y = [sum(Pinv[i][l] * g[l] for l in range(ab.betti)) for i in range(ab.betti)]
            root = _embed_root(K.base, sigma.exponent(ab.proj_tors[j]), sigma.order)
            if K.k:
                c = K(LaurentPoly.monomial(y[1:], root, K.base, K.names))
            else:
                c = root
            images.append((y[0], c))
        images = tuple(images)
    else:
        base_order = cfg.field_order or sigma.order
        if cfg.nvars:
            from .commalg.fields import coefficient_field

            base = coefficient_field(base_order)
            scal = None
            if cfg.alpha_scalars is not None:
                scal = [SkewField(0, order=base_order).parse(c) for c in cfg.alpha_scalars]
            aut = MonomialAutomorphism(cfg.alpha_matrix, scal, base)
        else:
            aut = None
        K = SkewField(cfg.nvars, order=base_order, aut=aut)
        if len(cfg.images) != m:
            raise InconsistentConfiguration(f"need {m} generator images, got {len(cfg.images)}")
        images = []
        for j, (d, text) in enumerate(cfg.images):
            c = K.parse(text) if isinstance(text, str) else K(text)
            if not c:
                raise InconsistentConfiguration(f"image of generator {p.generator_names[j]} is zero")
            root = _embed_root(K.base, sigma.exponent(ab.proj_tors[j]), sigma.order)
            if d != values[j]:
                raise InconsistentConfiguration(
                    f"t-degree of the image of {p.generator_names[j]} is {d}, but psi gives {values[j]}")
            images.append((int(d), K(root) * c if K.k else root * c))
        images = tuple(images)
    phi = RingHom(K, images, values)
    for i, r in enumerate(p.relators):
        d, c = phi.word(r)
        if d != 0 or c != K.one:
            raise InconsistentConfiguration(f"relator {i + 1} does not map to 1")
    phi.relators_checked = True
    return phi


def twisted_chain_complex(p: GroupPresentation, phi: RingHom):
    """(d_2, d_1): d_2 = phi(Fox Jacobian), d_1 = column of phi(x_j) - 1."""
    K = phi.K
    m = p.generator_count
    d2 = [[phi.element(fox_derivative(r, j)) for j in range(m)] for r in p.relators]
    one = SkewLaurentPoly._raw(K, {0: K.one})
    d1 = [[phi.generator(j) - one] for j in range(m)]
    if d2:
        prod = mat_mul(K, d2, d1, m)
        if any(row[0] for row in prod):
            raise RuntimeError("chain condition d_2 d_1 = 0 fails")
    return d2, d1


@dataclass(frozen=True)
class RankStatus:
    status: str  # torsion | not_fg_over_K | inconsistent
    rank: int | None
    free_rank: int
    spans: tuple[int, ...] = ()

    def scaled(self, n: int) -> "RankStatus":
        if self.rank is None or n == 1:
            return self
        return RankStatus(self.status, self.rank * n, self.free_rank, self.spans)


def h1_rank(d2, d1, K: SkewField) -> RankStatus:
    m = len(d1)
    form = diagonalize(d2, K, m)
    f = form.free_rank
    spans = tuple(q.span() for q in form.diag)
    if f == 1:
        return RankStatus("torsion", sum(spans), f, spans)
    if f >= 2:
        return RankStatus("not_fg_over_K", None, f, spans)
    return RankStatus("inconsistent", None, f, spans)


def _cyclic_subgroup(gens: Sequence[tuple[int, int]], n: int) -> bool:
    """Is the subgroup of Z/n x Z generated by gens cyclic?

    It splits as (finite part) x Z, the finite part being the lattice's
    intersection with Z x 0 modulo n; that intersection is det(L)/d Z
    where d is the gcd of the second coordinates.
    """
    rows = [[k % n, d] for k, d in gens] + [[n, 0]]
    _, D, _ = smith_normal_form(rows, 2)
    det = D[0][0] * D[1][1]
    d = reduce(gcd, (abs(x[1]) for x in gens), 0)
    if d == 0:
        return True  # a subgroup of Z/n
    return det == n * d


def detect_cyclic_phi(p: GroupPresentation, phi: RingHom, cfg: CoefficientConfig,
                      ab: AbelianizationData | None = None):
    """True/False, or None when the construction does not decide it."""
    ab = ab or abelianize(p)
    sigma = cfg.character
    if cfg.kind == "seifert":
        gens = [(sigma.exponent(ab.proj_tors[j]), phi.psi_values[j]) for j in range(p.generator_count)]
        return _cyclic_subgroup(gens, sigma.order)
    if cfg.kind == "alexander_fox":
        return ab.betti == 1 and sigma.is_trivial()
    return cfg.cyclic


@dataclass
class BoundReport:
    rank_status: str
    rank: int | None
    cyclic: bool | None
    mode: str
    epsilon: int
    psi_divisibility: int
    bound: int
    note: str = ""
    cross_check: dict | None = None
    fibered: dict | None = None
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rank_status": self.rank_status,
            "rank": self.rank,
            "cyclic": "undecided" if self.cyclic is None else self.cyclic,
            "mode": self.mode,
            "epsilon": self.epsilon,
            "psi_divisibility": self.psi_divisibility,
            "bound": self.bound,
            "note": self.note,
            "cross_check": self.cross_check,
            "fibered": self.fibered,
            "warnings": list(self.warnings),
        }


def assemble_bound(status: RankStatus, cyclic: bool | None, mode: str, psi_div: int,
                   epsilon: int | None = None) -> BoundReport:
    """Combine the rank of the primitive class with the cyclicity correction.

    ``status`` refers to psi / |psi|; its rank is multiplied by |psi|.
    In manifold mode the cyclic case subtracts epsilon |psi|; in complex
    mode delta_phi |psi| with delta_phi = 1 exactly when phi(pi) is
    cyclic.  An undecided cyclicity takes the smaller, cyclic-case value.
    """
    if mode not in ("manifold", "complex"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "manifold":
        if epsilon not in (1, 2):
            raise ValueError("manifold mode needs epsilon in {1, 2}")
        corr = epsilon
    else:
        corr = 1
    status = status.scaled(psi_div)
    note = ""
    if status.status != "torsion":
        bound = 0
        note = NO_BOUND if status.status == "not_fg_over_K" else "inconsistent complex"
    elif cyclic is False:
        bound = status.rank
    else:
        bound = max(status.rank - corr * psi_div, 0)
        if cyclic is None:
            note = "cyclicity undecided; cyclic-case bound reported"
    eps = epsilon if mode == "manifold" else (0 if cyclic is False else 1)
    return BoundReport(status.status, status.rank, cyclic, mode, eps, psi_div, bound, note)


def cross_validate(p: GroupPresentation, psi: CohomologyClass, sigma: Character,
                   ab: AbelianizationData | None = None, status: RankStatus | None = None):
    """(skew rank or None, ||psi||^sigma, agree) for a primitive psi."""
    ab = ab or abelianize(p)
    if status is None:
        cfg = CoefficientConfig("alexander_fox", sigma)
        phi = build_ring_hom(p, psi, cfg, ab)
        d2, d1 = twisted_chain_complex(p, phi)
        status = h1_rank(d2, d1, phi.K)
    delta = delta_sigma(p, sigma, ab)
    norm = alexander_fox_norm(delta, psi.coeffs)
    if status.status == "torsion":
        equal = status.rank == norm
    else:
        equal = status.status == "not_fg_over_K" and norm == 0
    return status.rank, norm, equal


def fibered_equality_check(report: BoundReport, fiber_chi_minus: int) -> bool:
    return report.bound == fiber_chi_minus


def stretch(f: SkewLaurentPoly, n: int, K: SkewField | None = None) -> SkewLaurentPoly:
    """u^m a -> t^{mn} a, from K[u^{+-1}; alpha^n] into K[t^{+-1}; alpha]."""
    return SkewLaurentPoly._raw(K or f.K, {n * i: a for i, a in f.terms.items()})


def compute_bound(p: GroupPresentation, psi: CohomologyClass, cfg: CoefficientConfig,
                  mode: str = "manifold", epsilon: int | None = None,
                  cross_check: bool = False, fiber_chi_minus: int | None = None) -> BoundReport:
    ab = abelianize(p)
    _psi_values(p, psi, ab)
    n = divisibility(psi)
    prim = psi.primitive()
    phi = build_ring_hom(p, prim, cfg, ab)
    d2, d1 = twisted_chain_complex(p, phi)
    status = h1_rank(d2, d1, phi.K)
    cyclic = detect_cyclic_phi(p, phi, cfg, ab)
    report = assemble_bound(status, cyclic, mode, n, epsilon)
    if status.status == "inconsistent":
        raise InconsistentConfiguration("d_2 has full column rank: phi kills the augmentation ideal")
    if cross_check:
        reuse = status if cfg.kind == "alexander_fox" else None
        rank, norm, equal = cross_validate(p, prim, cfg.character, ab, reuse)
        report.cross_check = {
            "skew_rank": None if rank is None else rank * n,
            "norm_sigma": norm * n,
            "equal": equal,
        }
        if not equal:
            raise CrossValidationError(f"skew rank {rank} but ||psi||^sigma = {norm}")
    if fiber_chi_minus is not None:
        report.fibered = {"chi_minus": fiber_chi_minus,
                          "equal": fibered_equality_check(report, fiber_chi_minus)}
    return report
