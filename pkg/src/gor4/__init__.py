"""Exact computations with Gorenstein codimension-four curve families over a prime field."""

__version__ = "0.1.0"
