"""Exact verification toolkit for small nonassociative algebra classifications."""

__version__ = "0.1.0"
