"""Exact computation in NC-nilpotent truncations of the free associative algebra."""

from .arith import LocalizedPoly, MultiPoly, Q, RatFunc
from .lie import LieElement, bracket, decompose_lie, lyndon_basis, witt_dimension
from .normal import NormalForm, algebra, graded_count, multiply, q_dimension, structure_eval
from .words import WordPoly, ad_power, mul_words, nc_order, straighten

__version__ = "0.1.0"

__all__ = [
    "Q", "MultiPoly", "RatFunc", "LocalizedPoly",
    "LieElement", "bracket", "decompose_lie", "lyndon_basis", "witt_dimension",
    "NormalForm", "algebra", "multiply", "structure_eval", "q_dimension", "graded_count",
    "WordPoly", "mul_words", "straighten", "nc_order", "ad_power",
]
