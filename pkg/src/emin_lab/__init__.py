"""Ergotropy and measurement-induced nonlocality toolkit."""

__version__ = "0.3.0"
