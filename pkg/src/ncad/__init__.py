"""Exact difference-differential calculus and antiderivatives for free nc functions."""

from ._backend import BACKEND
from .errors import MathError, NcadError, UsageError
from .exactalg import Matrix, PointMatrix, block_upper, kron_identity, matrix_unit
from .ncpoly import NcPolynomial, evaluate

__all__ = [
    "BACKEND",
    "Matrix",
    "MathError",
    "NcPolynomial",
    "NcadError",
    "PointMatrix",
    "UsageError",
    "block_upper",
    "evaluate",
    "kron_identity",
    "matrix_unit",
]
