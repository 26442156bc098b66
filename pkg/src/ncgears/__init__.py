"""Noncircular spur gear pairs generated by a rack cutter."""

__version__ = "0.1.0"
