"""Exact computations with Danielewski-type rings R[U,V]/(rU - sV - 1)."""

__version__ = "0.1.0"
