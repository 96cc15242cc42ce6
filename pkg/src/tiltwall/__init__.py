"""Exact wall-and-chamber computations for tilt stability on Calabi-Yau threefolds."""

__version__ = "0.1.0"
