"""Exact and asymptotic combinatorics of linear chord diagrams."""

__version__ = "1.0.0"
