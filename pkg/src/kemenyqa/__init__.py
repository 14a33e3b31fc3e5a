"""Kemeny rank aggregation through QUBO encodings."""

__version__ = "0.1.0"
