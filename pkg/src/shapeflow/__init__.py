"""Interleaved text-image conditioned rectified-flow generation on a shape world."""

__version__ = "0.1.0"
