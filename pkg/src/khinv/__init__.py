"""Involutive Khovanov and Bar-Natan homology of symmetric link diagrams."""

__version__ = "0.1.0"
