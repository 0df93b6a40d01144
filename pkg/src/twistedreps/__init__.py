"""Twisted quiver representations over finite-dimensional algebras."""

from twistedreps.linalg import BACKEND, GF, QQ, Field, Matrix

__all__ = ["BACKEND", "GF", "QQ", "Field", "Matrix"]
__version__ = "0.1.0"
