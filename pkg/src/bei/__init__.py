"""Exact combinatorial invariants of binomial edge ideals of small graphs."""

__version__ = "0.1.0"
