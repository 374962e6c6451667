"""Exact computations with DGLAs, commuting varieties and line bundle cohomology."""

__version__ = "0.1.0"
