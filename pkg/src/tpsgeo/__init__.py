"""Exact and numeric differential geometry of thermodynamic phase space."""

__version__ = "0.1.0"
