"""Gauss-diagram invariants and diagram moves for knot diagrams."""

__version__ = "0.1.0"
