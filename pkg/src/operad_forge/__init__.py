"""Finite combinatorial models of E_n operads, with brute-force and homological checks."""

__version__ = "0.1.0"
