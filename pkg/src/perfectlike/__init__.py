"""Codes with the parameters of shortened 1-perfect codes: bounds, constructions, lengthening."""

__version__ = "0.1.0"
