"""multlab: exact homological invariants of artinian local rings over GF(p)."""

__version__ = "0.1.0"
