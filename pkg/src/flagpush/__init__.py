"""Exact push-forward calculus for flag and Grassmann bundles."""

from .polyring import Degree, DimensionError, MultiPoly

__version__ = "0.1.0"
__all__ = ["Degree", "DimensionError", "MultiPoly"]
