"""Numerical kernels: quadrature, symmetric eigensolver, Legendre functions."""
from .eigen import SymMatrix, sym_eigenvalues, sym_eigh
from .legendre import (
    assoc_legendre_derivative_table,
    assoc_legendre_normalized,
    assoc_legendre_table,
)
from .quadrature import QuadratureRule, gauss_legendre

__all__ = [
    "QuadratureRule",
    "SymMatrix",
    "assoc_legendre_derivative_table",
    "assoc_legendre_normalized",
    "assoc_legendre_table",
    "gauss_legendre",
    "sym_eigenvalues",
    "sym_eigh",
]
