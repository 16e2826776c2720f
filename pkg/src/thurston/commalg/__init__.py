"""Exact commutative algebra: fields, Laurent polynomials, SNF, Alexander data."""

from .alexander import (
    NewtonPolytope,
    alexander_fox_norm,
    delta_sigma,
    elementary_ideal_gens,
    gcd_of_minors,
    laurent_determinant,
    newton_polytope,
)
from .fields import CyclotomicField, CycloElt, RationalField, coefficient_field, cyclotomic_polynomial
from .polys import LaurentPoly, laurent_gcd, laurent_gcd_many, poly_gcd
from .snf import determinant, identity, inverse_unimodular, mat_mul, smith_normal_form

__all__ = [
    "NewtonPolytope",
    "alexander_fox_norm",
    "delta_sigma",
    "elementary_ideal_gens",
    "gcd_of_minors",
    "laurent_determinant",
    "newton_polytope",
    "CyclotomicField",
    "CycloElt",
    "RationalField",
    "coefficient_field",
    "cyclotomic_polynomial",
    "LaurentPoly",
    "laurent_gcd",
    "laurent_gcd_many",
    "poly_gcd",
    "determinant",
    "identity",
    "inverse_unimodular",
    "mat_mul",
    "smith_normal_form",
]
