"""Stolarsky-family means, their integral representations, and numerical checks."""

__version__ = "0.1.0"
