"""Skew Laurent polynomial rings K[t^{+-1}; alpha] over rational function fields."""

from .field import MonomialAutomorphism, RatFunc, SkewField
from .matrix import (
    DiagonalForm,
    diagonalize,
    harvey_estimate_check,
    identity_matrix,
    mat_mul,
    ore_rank,
    torsion_rank_over_K,
    zero_matrix,
)
from .ring import SkewLaurentPoly, left_divide, right_divide, skew_mul

__all__ = [
    "MonomialAutomorphism",
    "RatFunc",
    "SkewField",
    "DiagonalForm",
    "diagonalize",
    "harvey_estimate_check",
    "identity_matrix",
    "mat_mul",
    "ore_rank",
    "torsion_rank_over_K",
    "zero_matrix",
    "SkewLaurentPoly",
    "left_divide",
    "right_divide",
    "skew_mul",
]
