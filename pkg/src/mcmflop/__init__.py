"""Blowing up hypersurface singularities in matrix-factorisation modules, and flops."""

__version__ = "0.1.0"
