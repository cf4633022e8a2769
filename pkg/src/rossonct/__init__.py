"""Numerical experiments on rank-one symmetric spaces of negative curvature."""

__version__ = "0.1.0"
