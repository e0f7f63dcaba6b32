"""Packaged link fixtures (plain text)."""
