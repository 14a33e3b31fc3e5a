"""Utility modules for kemenyqa."""
