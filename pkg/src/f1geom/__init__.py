"""f1geom: exact monoid schemes, toric fans, point counts and torifications."""

__version__ = "0.1.0"
