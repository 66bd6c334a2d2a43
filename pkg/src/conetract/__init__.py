"""Numerics for quintic threefolds containing a cone with a triple point at its vertex."""

__version__ = "0.1.0"
