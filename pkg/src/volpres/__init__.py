"""Exact toolkit for linear operators that preserve volume polynomials."""

from .poly import Polynomial

__version__ = "0.1.0"

__all__ = ["Polynomial", "__version__"]
