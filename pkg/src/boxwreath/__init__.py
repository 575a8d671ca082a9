"""Finite-scale construction and analysis of wreath and box products of permutation groups."""

__version__ = "0.1.0"
