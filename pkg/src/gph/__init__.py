"""Homological algebra of bound quiver algebras and their tensor products."""

__version__ = "0.1.0"
