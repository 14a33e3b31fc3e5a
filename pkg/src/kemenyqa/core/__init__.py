"""Core rank aggregation functionality."""
