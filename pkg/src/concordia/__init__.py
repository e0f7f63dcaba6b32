"""Concordance-group invariants of marked links."""
__version__ = "0.1.0"
