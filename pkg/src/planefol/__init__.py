"""Reduction of singularities of plane foliations and curves, ramifications, separatrices."""

__version__ = "0.1.0"
