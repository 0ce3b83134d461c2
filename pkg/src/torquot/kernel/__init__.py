"""Exact arithmetic kernel: integer linear algebra, cones, LPs, polyhedra."""
