"""Constraint-based enumeration and optimization of rectangular floor plans."""

__version__ = "0.1.0"
