"""Exact arithmetic kernel: fields, univariate polynomials, linear algebra."""

from .factor import (
    cyclotomic_embedding,
    cyclotomic_field,
    extension_field,
    factor,
    field_make,
    is_irreducible_q,
    root_of_unity,
    roots_in_field,
)
from .fields import QQ, ExtElement, ExtensionField, RationalField, cyclotomic_poly
from .linalg import determinant, nullspace, rank, rref, solve
from .poly import (
    Poly,
    multiplicative_order,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    resultant,
    squarefree_factor,
    squarefree_part,
)

__all__ = [
    "QQ",
    "ExtElement",
    "ExtensionField",
    "Poly",
    "RationalField",
    "cyclotomic_embedding",
    "cyclotomic_field",
    "cyclotomic_poly",
    "determinant",
    "extension_field",
    "factor",
    "field_make",
    "is_irreducible_q",
    "multiplicative_order",
    "nullspace",
    "poly_gcd",
    "poly_lcm",
    "poly_xgcd",
    "rank",
    "resultant",
    "root_of_unity",
    "roots_in_field",
    "rref",
    "solve",
    "squarefree_factor",
    "squarefree_part",
]
