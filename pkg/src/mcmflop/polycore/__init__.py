"""Exact polynomial kernel: polynomials over Q, ideals, Groebner bases, minors."""

from .ideal import (
    Ideal,
    MissingGroebnerBasis,
    dimension_and_degree,
    eliminate,
    groebner_basis,
    ideal_equal,
    is_subset,
    normal_form,
    quotient,
    saturate,
    standard_monomials,
)
from .matrix import PolyMatrix, all_minors, bareiss_det, block_diag, minors
from .orders import DEGREVLEX, LEX, MonomialOrder, block_order, order_by_name
from .parse import ParseError, parse_poly
from .poly import QQ, Poly, RingMismatch

__all__ = [
    "DEGREVLEX",
    "LEX",
    "QQ",
    "Ideal",
    "MissingGroebnerBasis",
    "MonomialOrder",
    "ParseError",
    "Poly",
    "PolyMatrix",
    "RingMismatch",
    "all_minors",
    "bareiss_det",
    "block_diag",
    "block_order",
    "dimension_and_degree",
    "eliminate",
    "groebner_basis",
    "ideal_equal",
    "is_subset",
    "minors",
    "normal_form",
    "order_by_name",
    "parse_poly",
    "quotient",
    "saturate",
    "standard_monomials",
]
