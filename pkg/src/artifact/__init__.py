"""Local computations for the cubic metaplectic co-period."""

__version__ = "0.1.0"
