"""Main module for spin_chebyshev."""

__version__ = "0.1.0"
