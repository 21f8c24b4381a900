"""Exact-arithmetic toolkit for second-order algebraic knot concordance."""

__version__ = "0.1.0"
