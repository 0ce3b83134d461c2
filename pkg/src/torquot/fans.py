"""Fans of polyhedral cones: validation, refinement, morphisms, realization.

A :class:`Fan` is a canonical tuple of maximal cones.  Construction goes
through :func:`validate_fan`, which certifies that every pairwise
intersection is a face of both cones; completeness is certified separately
by facet pairing (every facet of every full-dimensional maximal cone is
shared with exactly one other maximal cone, so the union has no boundary).

The common refinement of several complete cone families is computed by
enumerating the full-dimensional sign cells of the central hyperplane
arrangement spanned by all facet covectors, tagging each cell with its
membership signature across the input cones, and merging equal signatures.
Convexity of each merged class is a theorem for the intended inputs; here it
is re-verified, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .kernel.cones import Cone, DDState, cone_image, cone_product
from .kernel.intlinalg import (
    clear_denominators,
    invert_rational,
    is_zero_vector,
    mat_vec,
    primitive,
    rational_rank,
    vec_dot,
)
from .kernel.lp import lp_feasibility
from .kernel.polyhedra import LatticePolytope, Polyhedron


class FanError(Exception):
    pass


class FanValidationError(FanError):
    """Two cones whose intersection is not a common face."""

    def __init__(self, cone_a, cone_b, witness):
        self.cone_a = cone_a
        self.cone_b = cone_b
        self.witness = witness
        super().__init__(
            f"intersection is not a common face (witness point {witness})")


class NonCoveringFamilyError(FanError):
    pass


class RefinementMergeError(FanError):
    pass


class PolytopalityError(FanError):
    pass


class Fan:
    """Immutable fan given by its maximal cones (canonically sorted)."""

    __slots__ = ("ambient_dim", "maximal_cones", "_all", "_member_keys",
                 "_complete")

    def __init__(self, ambient_dim: int, maximal_cones):
        uniq = {c.key(): c for c in maximal_cones}
        self.ambient_dim = ambient_dim
        self.maximal_cones = tuple(uniq[k] for k in sorted(uniq))
        self._all = None
        self._member_keys = None
        self._complete = None

    def key(self):
        return (self.ambient_dim, tuple(c.key() for c in self.maximal_cones))

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"Fan(ambient_dim={self.ambient_dim}, "
                f"maximal={len(self.maximal_cones)})")

    def all_cones(self):
        """Every cone of the fan (face closure), large dimensions first."""
        if self._all is None:
            seen = {}
            for c in self.maximal_cones:
                for f in c.faces():
                    seen.setdefault(f.key(), f)
            self._all = tuple(sorted(seen.values(),
                                     key=lambda c: (-c.dim(), c.key())))
            self._member_keys = frozenset(seen)
        return self._all

    def has_cone(self, c: Cone) -> bool:
        if self._member_keys is None:
            self.all_cones()
        return c.key() in self._member_keys

    def f_vector(self):
        counts = [0] * (self.ambient_dim + 1)
        for c in self.all_cones():
            counts[c.dim()] += 1
        return tuple(counts)

    def is_complete(self) -> bool:
        """Facet-pairing certificate: a fan whose full-dimensional cones
        glue without free facets covers the whole space."""
        if self._complete is None:
            self._complete = self._certify_complete()
        return self._complete

    def _certify_complete(self) -> bool:
        if not self.maximal_cones:
            return False
        if len(self.maximal_cones) == 1 and \
                len(self.maximal_cones[0].lineality) == self.ambient_dim:
            return True  # the whole space as a single cone
        counts = {}
        for c in self.maximal_cones:
            if not c.is_full_dimensional():
                return False
            for f in c.facets():
                counts[f.key()] = counts.get(f.key(), 0) + 1
        if self.ambient_dim == 0:
            return True
        return bool(counts) and all(v == 2 for v in counts.values())

    def maximal_cone_containing(self, x):
        for c in self.maximal_cones:
            if c.contains_point(x):
                return c
        return None


def validate_fan(cones, ambient_dim=None) -> Fan:
    """Certify the fan property; raise :class:`FanValidationError` else.

    Checks pairwise that the intersection of two cones is a face of each,
    and that no maximal cone contains another.
    """
    cones = list(cones)
    if not cones:
        raise ValueError("a fan needs at least one cone")
    if ambient_dim is None:
        ambient_dim = cones[0].ambient_dim
    assert all(c.ambient_dim == ambient_dim for c in cones)
    uniq = list({c.key(): c for c in cones}.values())
    for i, a in enumerate(uniq):
        for b in uniq[i + 1:]:
            inter = _intersect(a, b)
            if inter.is_zero() and a.is_pointed() and b.is_pointed():
                continue
            if inter == a or inter == b:
                # containment among distinct maximal cones
                raise FanValidationError(a, b, inter.relative_interior_point())
            if not _is_face_given_contained(inter, a) or \
                    not _is_face_given_contained(inter, b):
                raise FanValidationError(a, b, inter.relative_interior_point())
    return Fan(ambient_dim, uniq)


def _intersect(a: Cone, b: Cone) -> Cone:
    ai, ae = a._membership_h()
    bi, be = b._membership_h()
    return Cone.from_inequalities(ai + bi, ae + be, a.ambient_dim)


def _is_face_given_contained(f: Cone, c: Cone) -> bool:
    if f.lineality != c.lineality:
        return False
    return f == c.smallest_face_containing(f.relative_interior_point())


def normal_fan(p, validate: bool = True) -> Fan:
    """Inner normal fan: the cone at vertex v is {u : u.v <= u.x for x in P}.

    Accepts a bounded :class:`Polyhedron` or a :class:`LatticePolytope`.
    Lower-dimensional polytopes give cones with common lineality (the
    annihilator of the direction span); the fan is still complete.
    """
    if isinstance(p, LatticePolytope):
        p = p.to_polyhedron()
    assert p.is_bounded() and not p.is_empty()
    cones = []
    for v in p.vertices:
        rows = []
        for w in p.vertices:
            if w != v:
                rows.append(clear_denominators(
                    tuple(b - a for a, b in zip(v, w))))
        cones.append(Cone.from_inequalities(rows, ambient_dim=p.ambient_dim))
    fan = validate_fan(cones) if validate else Fan(p.ambient_dim, cones)
    assert fan.is_complete()
    return fan


def normal_equivalence(p, q) -> bool:
    """True when the two polytopes have equal inner normal fans."""
    return normal_fan(p, validate=False) == normal_fan(q, validate=False)


def product_fan(f1: Fan, f2: Fan) -> Fan:
    cones = [cone_product(a, b)
             for a in f1.maximal_cones for b in f2.maximal_cones]
    return Fan(f1.ambient_dim + f2.ambient_dim, cones)


def _signed_hyperplane(a):
    v = primitive(a)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def common_refinement(families, expect_complete: bool = True) -> Fan:
    """Coarsest fan refining every cone of every input family.

    ``families`` is a list of cone collections, each covering the space.
    Full-dimensional sign cells of the arrangement of all facet covectors
    are enumerated by a branch-on-sign recursion over a shared incremental
    double-description state; cells are merged by their membership
    signature over all input cones and each merged hull is re-verified to
    carry the constant signature.
    """
    flat = [c for fam in families for c in fam]
    assert flat, "refinement of nothing"
    n = flat[0].ambient_dim
    assert all(c.ambient_dim == n for c in flat)
    fam_slices = []
    start = 0
    for fam in families:
        fam_slices.append(range(start, start + len(fam)))
        start += len(fam)
    membership_h = [c._membership_h() for c in flat]

    hset = set()
    for c in flat:
        for a in c.inequalities:
            hset.add(_signed_hyperplane(a))
    hyperplanes = sorted(hset)

    def member(idx, pt):
        ineqs, eqs = membership_h[idx]
        return (all(vec_dot(e, pt) == 0 for e in eqs)
                and all(vec_dot(a, pt) >= 0 for a in ineqs))

    classes: dict = {}
    common_lin = None

    def leaf(state: DDState):
        nonlocal common_lin
        pt = [0] * n
        for vec, _ in state.rays:
            for i, x in enumerate(vec):
                pt[i] += x
        pt = tuple(pt)
        sig = tuple(member(i, pt) for i in range(len(flat)))
        for sl in fam_slices:
            if not any(sig[i] for i in sl):
                raise NonCoveringFamilyError(
                    f"no cone of family {fam_slices.index(sl)} contains {pt}")
        rays = classes.setdefault(sig, set())
        rays.update(vec for vec, _ in state.rays)
        if common_lin is None:
            common_lin = tuple(state.lineality)
        else:
            assert common_lin == tuple(state.lineality)

    def explore(i: int, state: DDState):
        if i == len(hyperplanes):
            leaf(state)
            return
        h = hyperplanes[i]
        if all(vec_dot(h, l) == 0 for l in state.lineality):
            vals = [vec_dot(h, vec) for vec, _ in state.rays]
            has_pos = any(v > 0 for v in vals)
            has_neg = any(v < 0 for v in vals)
            assert has_pos or has_neg, \
                "hyperplane vanishes on a full-dimensional cell"
            if not has_neg:
                state.insert(h, False)
                explore(i + 1, state)
                return
            if not has_pos:
                state.insert(tuple(-x for x in h), False)
                explore(i + 1, state)
                return
        plus = state.copy()
        plus.insert(h, False)
        explore(i + 1, plus)
        state.insert(tuple(-x for x in h), False)
        explore(i + 1, state)

    explore(0, DDState(n))

    merged = []
    for sig, rays in classes.items():
        hull = Cone.from_rays(sorted(rays), common_lin, ambient_dim=n)
        pt = hull.relative_interior_point()
        if tuple(member(i, pt) for i in range(len(flat))) != sig:
            raise RefinementMergeError(
                f"merged class is not signature-constant at {pt}")
        for i, bit in enumerate(sig):
            if bit and not flat[i].contains_cone(hull):
                raise RefinementMergeError(
                    "merged class escapes an input cone it started inside")
        merged.append(hull)

    fan = validate_fan(merged, ambient_dim=n)
    if expect_complete:
        assert fan.is_complete(), "refinement of complete families is complete"
    return fan


@dataclass(frozen=True)
class MorphismWitness:
    cone: Cone
    ray: tuple


def fan_morphism_check(src: Fan, tgt: Fan, matrix):
    """None when ``matrix`` maps every cone of ``src`` into a cone of
    ``tgt``; otherwise a witness (source cone, image ray outside the
    candidate target cone)."""
    for sigma in src.maximal_cones:
        img = cone_image(sigma, matrix)
        if any(tau.contains_cone(img) for tau in tgt.maximal_cones):
            continue
        candidate = tgt.maximal_cone_containing(img.relative_interior_point())
        bad = None
        if candidate is not None:
            for r in img.rays:
                if not candidate.contains_point(r):
                    bad = r
                    break
        return MorphismWitness(sigma, bad)
    return None


def fan_image_is_member(src: Fan, tgt: Fan, matrix):
    """None when the image of every cone of ``src`` (faces included) is a
    member cone of ``tgt``; otherwise the offending source cone."""
    for sigma in src.all_cones():
        img = cone_image(sigma, matrix)
        if not tgt.has_cone(img):
            return sigma
    return None


def fans_isomorphic_via(f1: Fan, f2: Fan, matrix) -> bool:
    """Does ``matrix`` carry the maximal cones of f1 bijectively onto f2's?"""
    assert rational_rank(tuple(tuple(Fraction(x) for x in row)
                               for row in matrix)) == f1.ambient_dim, \
        "the comparison map must be invertible"
    images = {cone_image(c, matrix).key() for c in f1.maximal_cones}
    targets = {c.key() for c in f2.maximal_cones}
    return images == targets


@dataclass(frozen=True)
class FanReport:
    num_maximal: int
    num_simplicial: int
    smooth: bool
    f_vector: tuple
    ray_count_histogram: tuple  # sorted (#extreme rays, #cones) pairs


def fan_report(f: Fan) -> FanReport:
    simplicial = sum(1 for c in f.maximal_cones if c.is_simplicial())
    smooth = all(c.is_smooth() for c in f.maximal_cones)
    hist = {}
    for c in f.maximal_cones:
        hist[len(c.rays)] = hist.get(len(c.rays), 0) + 1
    return FanReport(
        num_maximal=len(f.maximal_cones),
        num_simplicial=simplicial,
        smooth=smooth,
        f_vector=f.f_vector(),
        ray_count_histogram=tuple(sorted(hist.items())),
    )


def realize_polytope(f: Fan) -> LatticePolytope:
    """A lattice polytope whose inner normal fan is exactly ``f``.

    One support value per fan ray is the unknown; the vertex of each
    maximal cone is the solution of its ray equations, so wall-crossing
    convexity (slack >= 1, scale-invariant) and the consistency equations
    of non-simplicial cones become one exact LP in the support values.
    Infeasibility means the fan is not polytopal and is raised, never
    patched over.  The result is verified by a normal-fan round trip.
    """
    if not f.is_complete():
        raise PolytopalityError("realization needs a complete fan")
    assert all(not c.lineality for c in f.maximal_cones), \
        "realization implemented for pointed fans"
    n = f.ambient_dim
    rays = sorted({r for c in f.maximal_cones for r in c.rays})
    ray_idx = {r: i for i, r in enumerate(rays)}
    nv = len(rays)

    # vertex of each maximal cone as a linear map applied to the support
    # values: rows express the n coordinates in the nv unknowns
    vertex_maps = []
    extra_rows = []  # equality constraints from non-simplicial cones
    for c in f.maximal_cones:
        sel = []
        for r in c.rays:
            if rational_rank(tuple(sel) + (r,)) > len(sel):
                sel.append(r)
                if len(sel) == n:
                    break
        inv = invert_rational(tuple(sel))  # columns solve sel . v = h_sel
        cmap = [[Fraction(0)] * nv for _ in range(n)]
        for k, r in enumerate(sel):
            for j in range(n):
                cmap[j][ray_idx[r]] += inv[j][k]
        vertex_maps.append(cmap)
        for r in c.rays:
            if r in sel:
                continue
            row = [sum(Fraction(r[j]) * cmap[j][t] for j in range(n))
                   for t in range(nv)]
            row[ray_idx[r]] -= 1
            extra_rows.append((tuple(row), Fraction(0)))

    walls = {}
    for ci, c in enumerate(f.maximal_cones):
        for facet in c.facets():
            walls.setdefault(facet.key(), []).append((ci, facet))
    ineqs = []
    for pair in walls.values():
        assert len(pair) == 2
        (c1, _), (c2, facet) = pair
        facet_rays = set(facet.rays)
        r = next(r for r in f.maximal_cones[c2].rays if r not in facet_rays)
        cmap = vertex_maps[c1]
        row = [sum(Fraction(r[j]) * cmap[j][t] for j in range(n))
               for t in range(nv)]
        row[ray_idx[r]] -= 1
        ineqs.append((tuple(row), Fraction(1)))

    res = lp_feasibility(nv, ineqs, extra_rows)
    if not res.feasible:
        raise PolytopalityError("support-value system infeasible: "
                                "the fan is not the normal fan of a polytope")
    h = res.witness
    verts = [tuple(sum(cmap[j][t] * h[t] for t in range(nv)) for j in range(n))
             for cmap in vertex_maps]
    scale = lcm(*(x.denominator for v in verts for x in v)) if verts else 1
    points = [tuple(int(x * scale) for x in v) for v in verts]
    assert len(set(points)) == len(f.maximal_cones)
    result = LatticePolytope.from_points(points)
    assert normal_fan(result, validate=False) == f, \
        "normal-fan round trip failed"
    return result
