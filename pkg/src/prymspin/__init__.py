"""Exact-arithmetic verification of the rational boundary-class rings of
the genus-2 square-root moduli spaces."""

__version__ = "0.1.0"
