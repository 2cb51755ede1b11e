"""
Algebra package for the realization engine.
Exact Laurent arithmetic, the text grammar, Laurent matrices and the
Gröbner machinery behind every module computation.
"""

from .equations import EquationModule, contract_to_subring, ideal_ops, laurent_member, syzygies
from .laurent import LaurentPolynomial, clear_to_polynomial, is_unit, poly_arith
from .matrix import LaurentMatrix, matrix_ops
from .parser import parse_polynomial

__all__ = [
    "EquationModule",
    "LaurentMatrix",
    "LaurentPolynomial",
    "clear_to_polynomial",
    "contract_to_subring",
    "ideal_ops",
    "is_unit",
    "laurent_member",
    "matrix_ops",
    "parse_polynomial",
    "poly_arith",
    "syzygies",
]
