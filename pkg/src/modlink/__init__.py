"""Horizontal linkage of graded modules over quotients of polynomial rings over F_p."""

__version__ = "0.1.0"
