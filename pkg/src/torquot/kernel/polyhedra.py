"""Rational polyhedra and lattice polytopes, exact throughout.

A :class:`Polyhedron` carries both descriptions, obtained from each other by
homogenizing to a cone one dimension up (coordinate 0 is the homogenizing
variable) and running the double-description machinery.  Inequalities are
stored as integer-primitive affine pairs ``(a, b)`` meaning ``a . x >= b``.

The empty polyhedron is the one with no vertices: every nonempty polyhedron
has at least one vertex class (modulo lineality), which the homogenization
cone sees as an extreme ray with positive first coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .cones import Cone
from .intlinalg import (
    IMat,
    IVec,
    clear_denominators,
    hermite_normal_form,
    is_zero_vector,
    mat_vec,
    rational_rank,
    vec_dot,
    vec_sub,
)

Q = Fraction


@dataclass(frozen=True)
class Polyhedron:
    ambient_dim: int
    vertices: tuple          # tuples of Fractions, sorted
    rays: tuple               # primitive integer recession generators, sorted
    lineality: IMat            # canonical HNF basis
    inequalities: tuple        # ((a, b), ...) with a integer primitive jointly with b
    equalities: tuple

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_generators(points=(), rays=(), lineality=(), ambient_dim=None):
        pts = [tuple(Q(x) for x in p) for p in points]
        if ambient_dim is None:
            for v in list(pts) + list(rays) + list(lineality):
                ambient_dim = len(v)
                break
            else:
                raise ValueError("ambient_dim required with no generators")
        gens = [clear_denominators((1,) + p) for p in pts]
        gens += [(0,) + clear_denominators(r) for r in rays]
        lins = [(0,) + clear_denominators(l) for l in lineality]
        if not gens and not lins:
            return Polyhedron.empty(ambient_dim)
        cone = Cone.from_rays(gens, lins, ambient_dim=ambient_dim + 1)
        return Polyhedron._from_homogenization(ambient_dim, cone)

    @staticmethod
    def from_inequalities(inequalities=(), equalities=(), ambient_dim=None):
        ineqs = [(tuple(a), b) for a, b in inequalities]
        eqs = [(tuple(e), c) for e, c in equalities]
        if ambient_dim is None:
            for a, _ in ineqs + eqs:
                ambient_dim = len(a)
                break
            else:
                raise ValueError("ambient_dim required with no constraints")
        hom_ineqs = [clear_denominators((-b,) + tuple(a)) for a, b in ineqs]
        hom_ineqs.append((1,) + (0,) * ambient_dim)
        hom_eqs = [clear_denominators((-c,) + tuple(e)) for e, c in eqs]
        cone = Cone.from_inequalities(hom_ineqs, hom_eqs,
                                      ambient_dim=ambient_dim + 1)
        return Polyhedron._from_homogenization(ambient_dim, cone)

    @staticmethod
    def _from_homogenization(n: int, cone: Cone) -> "Polyhedron":
        verts = []
        rec = []
        for r in cone.rays:
            t = r[0]
            assert t >= 0, "homogenization cone must satisfy t >= 0"
            if t > 0:
                verts.append(tuple(Q(x, t) for x in r[1:]))
            else:
                rec.append(r[1:])
        lin = []
        for l in cone.lineality:
            assert l[0] == 0
            lin.append(l[1:])
        if not verts:
            return Polyhedron.empty(n)
        ineqs = []
        for c in cone.inequalities:
            a = c[1:]
            if is_zero_vector(a):
                continue  # this is t >= 0 itself
            ineqs.append((a, -c[0]))
        eqs = []
        for c in cone.equalities:
            a = c[1:]
            assert not is_zero_vector(a)
            eqs.append((a, -c[0]))
        return Polyhedron(
            n,
            tuple(sorted(verts)),
            tuple(sorted(rec)),
            hermite_normal_form(lin),
            tuple(sorted(ineqs)),
            tuple(sorted(eqs)),
        )

    @staticmethod
    def empty(ambient_dim: int) -> "Polyhedron":
        falsum = ((0,) * ambient_dim, 1)  # 0 >= 1
        return Polyhedron(ambient_dim, (), (), (), (falsum,), ())

    # -- queries -------------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.vertices

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def is_lattice_polytope(self) -> bool:
        return (self.is_bounded() and not self.is_empty()
                and all(x.denominator == 1 for v in self.vertices for x in v))

    def dim(self) -> int:
        if self.is_empty():
            return -1
        v0 = self.vertices[0]
        span = [tuple(x - y for x, y in zip(v, v0)) for v in self.vertices[1:]]
        span += [tuple(Q(x) for x in r) for r in self.rays]
        span += [tuple(Q(x) for x in l) for l in self.lineality]
        return rational_rank(tuple(span))

    def contains(self, x) -> bool:
        return (all(vec_dot(a, x) >= b for a, b in self.inequalities)
                and all(vec_dot(e, x) == c for e, c in self.equalities))

    def integer_vertices(self) -> tuple:
        assert self.is_lattice_polytope()
        return tuple(tuple(int(x) for x in v) for v in self.vertices)

    def support_value(self, direction) -> Fraction:
        """min of direction . x over the polyhedron (inner support number)."""
        assert not self.is_empty()
        for r in self.rays:
            if vec_dot(direction, r) < 0:
                raise ValueError("unbounded below in this direction")
        for l in self.lineality:
            if vec_dot(direction, l) != 0:
                raise ValueError("unbounded in this direction")
        return min(vec_dot(direction, v) for v in self.vertices)

    def face_in_direction(self, direction) -> "Polyhedron":
        """The face minimizing ``direction . x`` (inner normal convention)."""
        m = self.support_value(direction)
        return Polyhedron.from_inequalities(
            self.inequalities,
            self.equalities + ((tuple(direction), m),),
            self.ambient_dim,
        )

    def translate(self, t) -> "Polyhedron":
        return Polyhedron.from_generators(
            [tuple(x + y for x, y in zip(v, t)) for v in self.vertices],
            self.rays, self.lineality, self.ambient_dim)


def convex_hull(points, ambient_dim=None) -> Polyhedron:
    return Polyhedron.from_generators(points, ambient_dim=ambient_dim)


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    assert p.ambient_dim == q.ambient_dim
    if p.is_empty() or q.is_empty():
        return Polyhedron.empty(p.ambient_dim)
    pts = [tuple(a + b for a, b in zip(u, v))
           for u in p.vertices for v in q.vertices]
    return Polyhedron.from_generators(
        pts, p.rays + q.rays, p.lineality + q.lineality, p.ambient_dim)


def dilate(p: Polyhedron, k: int) -> Polyhedron:
    assert k >= 1
    return Polyhedron.from_generators(
        [tuple(k * x for x in v) for v in p.vertices],
        p.rays, p.lineality, p.ambient_dim)


def map_polyhedron(matrix, p: Polyhedron, out_dim=None) -> Polyhedron:
    """Image under ``x -> matrix . x`` (rows of matrix = output coords)."""
    if out_dim is None:
        out_dim = len(matrix)
    if p.is_empty():
        return Polyhedron.empty(out_dim)
    return Polyhedron.from_generators(
        [mat_vec(matrix, v) for v in p.vertices],
        [mat_vec(matrix, r) for r in p.rays],
        [mat_vec(matrix, l) for l in p.lineality],
        out_dim)


def intersect_polyhedra(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    assert p.ambient_dim == q.ambient_dim
    return Polyhedron.from_inequalities(
        p.inequalities + q.inequalities,
        p.equalities + q.equalities,
        p.ambient_dim)


def integer_point(p: Polyhedron):
    """Lexicographically first integer point found, or None.

    Unbounded input is reduced to the bounded polytope
    ``conv(vertices) + sum of [0,1]-segments over recession generators``
    (lineality contributes both signs): subtracting integer multiples of the
    primitive generators moves any integer point of ``p`` into that box.
    """
    if p.is_empty():
        return None
    gens = list(p.rays)
    for l in p.lineality:
        gens.append(tuple(l))
        gens.append(tuple(-x for x in l))
    corners = [tuple(v) for v in p.vertices]
    for g in gens:
        corners += [tuple(c + x for c, x in zip(v, g)) for v in corners]
    lo = [floor(min(c[i] for c in corners)) for i in range(p.ambient_dim)]
    hi = [ceil(max(c[i] for c in corners)) for i in range(p.ambient_dim)]

    def scan(prefix, i):
        if i == p.ambient_dim:
            return tuple(prefix) if p.contains(tuple(prefix)) else None
        for x in range(lo[i], hi[i] + 1):
            got = scan(prefix + [x], i + 1)
            if got is not None:
                return got
        return None

    return scan([], 0)


def integer_points(p: Polyhedron) -> tuple:
    """All lattice points of a bounded polyhedron, lexicographically sorted."""
    assert p.is_bounded()
    if p.is_empty():
        return ()
    lo = [floor(min(v[i] for v in p.vertices)) for i in range(p.ambient_dim)]
    hi = [ceil(max(v[i] for v in p.vertices)) for i in range(p.ambient_dim)]
    out = []

    def scan(prefix, i):
        if i == p.ambient_dim:
            pt = tuple(prefix)
            if p.contains(pt):
                out.append(pt)
            return
        for x in range(lo[i], hi[i] + 1):
            scan(prefix + [x], i + 1)

    scan([], 0)
    return tuple(out)


@dataclass(frozen=True)
class LatticePolytope:
    """Bounded polyhedron with integer vertices, canonical vertex tuple."""

    vertices: tuple

    @staticmethod
    def from_points(points) -> "LatticePolytope":
        hull = convex_hull([tuple(int(x) for x in p) for p in points])
        assert not hull.is_empty(), "a lattice polytope needs at least one point"
        assert hull.is_lattice_polytope()
        return LatticePolytope(hull.integer_vertices())

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def to_polyhedron(self) -> Polyhedron:
        return Polyhedron.from_generators(self.vertices)

    def dim(self) -> int:
        v0 = self.vertices[0]
        return rational_rank(tuple(vec_sub(v, v0) for v in self.vertices[1:]))

    def dilate(self, k: int) -> "LatticePolytope":
        return LatticePolytope.from_points(
            [tuple(k * x for x in v) for v in self.vertices])

    def minkowski(self, other: "LatticePolytope") -> "LatticePolytope":
        return LatticePolytope.from_points(
            [tuple(a + b for a, b in zip(u, v))
             for u in self.vertices for v in other.vertices])

    def contains(self, x) -> bool:
        return self.to_polyhedron().contains(x)

    def lattice_points(self) -> tuple:
        return integer_points(self.to_polyhedron())
