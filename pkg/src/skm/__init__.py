"""Exact Cartan-matrix / Dynkin-diagram calculus for Kac-Moody superalgebras."""

__version__ = "0.1.0"
