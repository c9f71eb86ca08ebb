"""Exterior power operations on complexes, binary complexes and representations."""

__version__ = "0.1.0"
