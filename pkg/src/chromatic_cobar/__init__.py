"""Exact computations in the 2-primary BP cobar complex near the chromatic boundary."""

__version__ = "0.1.0"
