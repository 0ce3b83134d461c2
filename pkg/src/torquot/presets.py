"""Named example data used across tests, experiments and the CLI.

Everything here is a plain construction — no computation beyond convex
hulls — so the rest of the package can treat these as fixed inputs.
"""

from __future__ import annotations

import random

from .kernel.cones import Cone
from .kernel.polyhedra import LatticePolytope


def simplex(d: int) -> LatticePolytope:
    """conv(0, e_1, ..., e_d)."""
    pts = [tuple(0 for _ in range(d))]
    for i in range(d):
        pts.append(tuple(1 if j == i else 0 for j in range(d)))
    return LatticePolytope.from_points(pts)


def f2_polytope() -> LatticePolytope:
    """A polygon whose two-point quotient fan has a singular cone.

    The polygon itself is smooth-ish looking; the singularity only
    appears downstairs, generated by e1 and e1 + 2*e2.
    """
    return LatticePolytope.from_points([(0, 0), (3, 0), (1, 1), (0, 1)])


def f40_polytope() -> LatticePolytope:
    """The sliver triangle whose four-point family has non-reduced fibres."""
    return LatticePolytope.from_points([(0, 0), (0, 4), (-1, 4)])


NONREDUCED_WITNESS_TUPLE = ((0, 0), (-3, -1), (-5, -2), (-6, -3))


def hexagon_sigma_cones():
    """The six counterclockwise plane cones of the running hexagon remark."""
    pairs = [
        ((1, 0), (1, 1)),
        ((1, 1), (0, 1)),
        ((0, 1), (-1, 0)),
        ((-1, 0), (-1, -1)),
        ((-1, -1), (0, -1)),
        ((0, -1), (1, 0)),
    ]
    return [Cone.from_rays(list(p), ambient_dim=2) for p in pairs]


def cayley_example():
    """Three parallel segments in the plane plus the projection x + y.

    The classifying map sends them to -3, 0, 3; their hull fibred over
    [-3, 3] is the running example of a twisted Cayley sum whose summand
    images are not vertices.
    """
    r1 = LatticePolytope.from_points([(-2, -1), (-1, -2)])
    r2 = LatticePolytope.from_points([(-2, 2), (2, -2)])
    r3 = LatticePolytope.from_points([(1, 2), (2, 1)])
    pi = ((1, 1),)
    return (r1, r2, r3), pi


def figure5_tuples():
    """Triangle three-point tuples: the two equivalent ones, then a third
    subdivision from the same figure."""
    return (
        ((0, 0), (-1, -2), (-5, 0)),
        ((0, 0), (-1, -2), (-2, 0)),
    )


FIGURE5_FORGETFUL_WITNESS = {
    "v": ((0, 0), (-1, -2), (-5, 0), (-4, -3)),
    "u": ((0, 0), (-1, -2), (-2, 0)),
    "drop": 4,
}


# Reference enumeration of the 36 maximal cones of the two-point family
# fan over the triangle, as printed in the classification table that the
# ``table1`` experiment reproduces.  One entry per row: the row number and
# the extreme rays in signed-digit notation ("-1-100" is (-1,-1,0,0)).
# Kept verbatim — the experiment's job is to diff the printed rows against
# the computed fan, and ten rows genuinely disagree.
TABLE1_ROWS = (
    (1, ("0001", "0101", "1000", "1010", "1100")),
    (2, ("00-1-1", "0001", "0101", "1000", "1100")),
    (3, ("00-1-1", "1000", "1010", "1100")),
    (4, ("0-100", "0001", "1000", "1010")),
    (5, ("-1-1-1-1", "0-100", "00-1-1", "0001", "1000")),
    (6, ("-1-1-1-1", "0-100", "00-1-1", "1000", "1010")),
    (7, ("-1-1-1-1", "00-1-1", "0001", "0101")),
    (8, ("0100", "0101", "1010", "1100")),
    (9, ("00-1-1", "0100", "0101", "1100")),
    (10, ("00-1-1", "000-1", "0100", "1010", "1100")),
    (11, ("-1-1-1-1", "00-1-1", "000-1", "1010")),
    (12, ("-1-1-1-1", "00-1-1", "0100", "0101")),
    (13, ("-1-1-1-1", "00-1-1", "000-1", "0100")),
    (14, ("0010", "0100", "0101", "1010")),
    (15, ("000-1", "0010", "0100", "1010")),
    (16, ("-1-1-1-1", "000-1", "0010", "1010")),
    (17, ("-1000", "0010", "0100", "0101")),
    (18, ("-1-1-1-1", "-1000", "0100", "0101")),
    (19, ("-1-1-1-1", "-1000", "000-1", "0010", "0100")),
    (20, ("0010", "0011", "0100", "0101", "1010")),
    (21, ("-1-100", "0010", "0011", "1010")),
    (22, ("-1-1-1-1", "-1-100", "000-1", "0010", "1010")),
    (23, ("-1-100", "0010", "0011", "0100", "0101")),
    (24, ("-1-1-1-1", "-1-100", "0100", "0101")),
    (25, ("-1-1-1-1", "-1-100", "000-1", "0010", "0100")),
    (26, ("0001", "0011", "0101", "1010")),
    (27, ("-1-100", "0-100", "0001", "0011", "1010")),
    (28, ("-1-1-1-1", "-1-100", "0-100", "0001")),
    (29, ("-1-1-1-1", "-1-100", "0-100", "1010")),
    (30, ("-1-100", "0001", "0011", "0101")),
    (31, ("-1-1-1-1", "-1-100", "0001", "0101")),
    (32, ("0001", "0101", "1000", "1010")),
    (33, ("00-10", "0001", "0101", "1000")),
    (34, ("-1-1-1-1", "0-100", "00-10", "0001", "1000")),
    (35, ("-1-1-1-1", "0-100", "1000", "1010")),
    (36, ("-1-1-1-1", "00-10", "0001", "0101")),
)


def random_lattice_polygon(seed: int, max_coord: int = 5) -> LatticePolytope:
    """Deterministic full-dimensional polygon with at most six vertices."""
    rng = random.Random(seed)
    while True:
        pts = [
            (rng.randint(-max_coord, max_coord), rng.randint(-max_coord, max_coord))
            for _ in range(rng.randint(3, 8))
        ]
        try:
            poly = LatticePolytope.from_points(pts)
        except ValueError:
            continue
        if poly.dim() == 2 and len(poly.vertices) <= 6:
            return poly


POLYTOPE_REGISTRY = {
    "segment": lambda: simplex(1),
    "triangle": lambda: simplex(2),
    "tetrahedron": lambda: simplex(3),
    "f2": f2_polytope,
    "f40": f40_polytope,
}


def polytope_by_name(name: str) -> LatticePolytope:
    if name in POLYTOPE_REGISTRY:
        return POLYTOPE_REGISTRY[name]()
    if name.startswith("random-"):
        return random_lattice_polygon(int(name.split("-", 1)[1]))
    raise KeyError(f"unknown polytope preset {name!r}")
