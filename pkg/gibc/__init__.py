"""Inverse obstacle scattering with generalized impedance boundary conditions."""

__version__ = "0.1.0"
