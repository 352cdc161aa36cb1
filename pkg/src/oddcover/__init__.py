"""Odd covers of the plane by translates of rational polygons."""

__version__ = "0.1.0"
