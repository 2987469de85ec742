"""Combinatorics and geometry of triangulated translation surfaces."""

__version__ = "0.1.0"
