"""Khovanov homology of link diagrams and Turaev genus one diagnostics."""

__version__ = "0.1.0"
