"""Numerical laboratory for Toeplitz kernels and de Branges-Rovnyak spaces."""

__version__ = "0.1.0"
