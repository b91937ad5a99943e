"""Homotopy colimits of subcomplex arrangements and exact fiber censuses."""

__version__ = "0.1.0"
