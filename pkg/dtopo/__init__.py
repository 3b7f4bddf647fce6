"""Directed algebraic topology on finite pre-cubical sets."""

__version__ = "0.1.0"
