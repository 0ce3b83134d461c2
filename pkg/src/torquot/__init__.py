"""Exact polyhedral computations for quotient fans of polytope products."""

__version__ = "0.1.0"
