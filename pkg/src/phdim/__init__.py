"""Persistent homology dimension, MST dimension and box dimension of finite point sets."""

__version__ = "0.1.0"
FORMAT_VERSION = 1
