"""Kauffman bracket and HOMFLY toolkit for chained link families."""

__version__ = "0.1.0"
