"""Exact computations for conic divisorial ideals of toric singularities and dimer models."""

__version__ = "0.1.0"
