"""Exact Auslander-Reiten computations for perfect complexes over self-injective algebras."""

__version__ = "0.1.0"
