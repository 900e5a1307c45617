"""Radicals, triple decomposition and exponentially distorted length functions."""

__version__ = "0.1.0"
