"""Difference fans of point configurations modulo simultaneous translation.

Take a full-dimensional lattice polytope in ZZ^d and an integer m >= 1.
Tuples of m points, each moving in a copy of R^d, are considered up to
simultaneous translation; the difference coordinates ``y_i = v_i - v_m``
identify the quotient with R^(d(m-1)).  Projecting every cone of the
m-fold product of the polytope's normal fan into the quotient and taking
the coarsest common refinement of the resulting images yields a complete
fan there (``build_quotient_fan``).  Upstairs, the pieces cut out of the
product fan by the fibres of the projection assemble into a second
complete fan (``build_r_fan``) whose toric family is what the rest of
the package interrogates.

The same data has an affine shadow: translating the normal fan to the
positions ``-v_i`` and superimposing the m copies subdivides R^d
(``build_subdivision``).  Membership of the class ``[v]`` in a quotient
cone is equivalent to an emptiness pattern of that subdivision, which is
what ``cone_of_vector`` / ``subdivisions_equivalent`` exploit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fans import (
    Fan,
    FanError,
    common_refinement,
    normal_fan,
    product_fan,
    realize_polytope,
    validate_fan,
)
from .kernel.cones import (
    Cone,
    DDState,
    cone_image,
    cone_intersect,
    cone_preimage,
    zero_cone,
)
from .kernel.intlinalg import (
    clear_denominators,
    hermite_normal_form,
    identity_matrix,
    kernel_basis,
    mat_mul,
    mat_vec,
    transpose,
    vec_dot,
)
from .kernel.polyhedra import (
    LatticePolytope,
    Polyhedron,
    dilate,
    map_polyhedron,
    minkowski_sum,
)


class QuotientSetupError(ValueError):
    """The base polytope or the multiplicity is unusable."""


# --------------------------------------------------------------------------
# setup: the fixed linear algebra of the construction


@dataclass(frozen=True)
class QuotientSetup:
    """Base data shared by every construction for one (polytope, m) pair.

    ``delta`` embeds R^d diagonally into (R^d)^m, ``smap`` is its adjoint
    (blockwise sum), ``qmap`` sends a tuple to its difference coordinates
    and ``qstar`` is the rational section of ``qmap`` whose image is the
    sum-zero complement of the diagonal.
    """

    P: LatticePolytope
    m: int
    delta: tuple            # (d*m) x d, integer
    qmap: tuple             # d*(m-1) x (d*m), integer
    smap: tuple             # d x (d*m), integer
    qstar: tuple            # (d*m) x d*(m-1), rational (denominators divide m)
    sigma_p: Fan

    @property
    def d(self) -> int:
        return self.P.ambient_dim

    @property
    def tuple_dim(self) -> int:
        return self.d * self.m

    @property
    def quotient_dim(self) -> int:
        return self.d * (self.m - 1)

    def key(self):
        return (self.P.vertices, self.m)


def build_setup(P, m: int) -> QuotientSetup:
    if not isinstance(P, LatticePolytope):
        P = LatticePolytope.from_points(P)
    if not isinstance(m, int) or m < 1:
        raise QuotientSetupError(f"multiplicity must be a positive integer, got {m!r}")
    d = P.ambient_dim
    if P.dim() != d:
        raise QuotientSetupError(
            f"polytope must be full-dimensional ({P.dim()} < {d}); "
            "work inside its affine span first"
        )

    dm = d * m
    delta = tuple(
        tuple(1 if c == j else 0 for c in range(d)) for _i in range(m) for j in range(d)
    )
    qmap = tuple(
        tuple(
            (1 if c == i * d + j else 0) - (1 if c == (m - 1) * d + j else 0)
            for c in range(dm)
        )
        for i in range(m - 1)
        for j in range(d)
    )
    smap = tuple(
        tuple(1 if c % d == j else 0 for c in range(dm)) for j in range(d)
    )
    inv_m = Fraction(1, m)
    qstar = tuple(
        tuple(
            ((1 if (i == k and i < m - 1) else 0) - inv_m) if j == c else Fraction(0)
            for k in range(m - 1)
            for c in range(d)
        )
        for i in range(m)
        for j in range(d)
    )

    # The whole construction stands on these identities; check them once.
    qdim = d * (m - 1)
    assert smap == transpose(delta)
    assert all(all(x == 0 for x in row) for row in mat_mul(qmap, delta))
    assert mat_mul(smap, delta) == tuple(
        tuple(m if i == j else 0 for j in range(d)) for i in range(d)
    )
    if m > 1:
        assert mat_mul(qmap, qstar) == identity_matrix(qdim)
        assert all(all(x == 0 for x in row) for row in mat_mul(smap, qstar))
        # difference coordinates hit the full integer lattice ...
        assert hermite_normal_form(transpose(qmap)) == identity_matrix(qdim)
    # ... and the kernel is exactly the diagonal copy of ZZ^d.
    assert kernel_basis(qmap, ncols=dm) == hermite_normal_form(transpose(delta))

    return QuotientSetup(
        P=P, m=m, delta=delta, qmap=qmap, smap=smap, qstar=qstar, sigma_p=normal_fan(P)
    )


def forgetful_matrix(d: int, m: int, i: int) -> tuple:
    """Drop the i-th point (1-based, i <= m+1) in difference coordinates.

    Maps the quotient coordinates of (m+1)-tuples (dimension d*m) onto
    those of m-tuples (dimension d*(m-1)).  Dropping any of the first m
    points deletes its coordinate block; dropping the last one re-bases
    the differences on the new last block.
    """
    if not 1 <= i <= m + 1:
        raise ValueError(f"point index {i} out of range 1..{m + 1}")
    src = d * m
    rows = []
    if i <= m:
        keep = [b for b in range(m) if b != i - 1]
        for b in keep[: m - 1]:
            for j in range(d):
                rows.append(tuple(1 if c == b * d + j else 0 for c in range(src)))
    else:
        for b in range(m - 1):
            for j in range(d):
                rows.append(
                    tuple(
                        (1 if c == b * d + j else 0)
                        - (1 if c == (m - 1) * d + j else 0)
                        for c in range(src)
                    )
                )
    return tuple(rows)


def section_matrix(d: int, m: int, j: int) -> tuple:
    """Lift difference coordinates to the tuple whose j-th point is 0.

    Right inverse of the difference map: the lift of ``[v]`` is
    ``(v_1 - v_j, ..., v_m - v_j)``, written as an integer matrix from
    R^(d(m-1)) to (R^d)^m.
    """
    if not 1 <= j <= m:
        raise ValueError(f"point index {j} out of range 1..{m}")
    qdim = d * (m - 1)

    def block_row(i: int, c: int):
        row = [0] * qdim
        if i < m - 1:
            row[i * d + c] += 1
        if j - 1 < m - 1:
            row[(j - 1) * d + c] -= 1
        return tuple(row)

    return tuple(block_row(i, c) for i in range(m) for c in range(d))


# --------------------------------------------------------------------------
# fan builders


_PRODUCT_MEMO: dict = {}
_IMAGES_MEMO: dict = {}
_QFAN_MEMO: dict = {}
_RFAN_MEMO: dict = {}


def product_tuple_fan(setup: QuotientSetup) -> Fan:
    """The m-fold product of the base normal fan, in (R^d)^m."""
    key = setup.key()
    if key not in _PRODUCT_MEMO:
        fan = setup.sigma_p
        for _ in range(setup.m - 1):
            fan = product_fan(fan, setup.sigma_p)
        _PRODUCT_MEMO[key] = fan
    return _PRODUCT_MEMO[key]


def _distinct_images(setup: QuotientSetup) -> list:
    key = setup.key()
    if key not in _IMAGES_MEMO:
        prod = product_tuple_fan(setup)
        images = {}
        for c in prod.all_cones():
            img = cone_image(c, setup.qmap)
            images.setdefault(img.key(), img)
        _IMAGES_MEMO[key] = [images[k] for k in sorted(images)]
    return _IMAGES_MEMO[key]


def _check_images_respect_fan(images, fan: Fan) -> None:
    # A projected cone of positive codimension must meet every chamber in a
    # boundary face; if one passed through a chamber's interior the chamber
    # would not be a member of the true refinement.  (Full-dimensional
    # images cannot cut anything: their facets are part of the arrangement
    # the chambers were enumerated from.)
    # The image meets int(chamber) iff the relative-interior point of
    # their intersection does: relint(K) clears every chamber facet that
    # does not contain all of K.  Dimension-zero meets are the apex.
    for dcone in images:
        if dcone.is_full_dimensional() or dcone.is_zero():
            continue
        for mx in fan.maximal_cones:
            meet = cone_intersect(dcone, mx)
            if meet.dim() == 0:
                continue
            z = meet.relative_interior_point()
            if all(vec_dot(a, z) > 0 for a in mx.inequalities):
                raise FanError(
                    "projected cone passes through a chamber interior: "
                    f"{dcone!r} vs {mx!r} at {z}"
                )


def build_quotient_fan(setup: QuotientSetup, verify_images: bool = True) -> Fan:
    """Coarsest common refinement of the projected product cones.

    For m = 1 the quotient space is a point and the fan is the trivial
    complete fan in R^0.
    """
    key = setup.key()
    if key in _QFAN_MEMO:
        return _QFAN_MEMO[key]
    if setup.m == 1:
        fan = Fan(0, [zero_cone(0)])
    else:
        images = _distinct_images(setup)
        fan = common_refinement([images])
        if verify_images:
            _check_images_respect_fan(images, fan)
    _QFAN_MEMO[key] = fan
    return fan


def quotient_fan_via_m2_lemma(P) -> Fan:
    """Independent m = 2 route: refine the normal fan with its negative.

    In difference coordinates ``[v, w] -> v - w`` the two-point quotient
    fan is the common refinement of the base normal fan and its mirror
    image; this builder never touches the product space and serves as a
    cross-check of ``build_quotient_fan`` at m = 2.
    """
    if not isinstance(P, LatticePolytope):
        P = LatticePolytope.from_points(P)
    sigma = normal_fan(P)
    minus = tuple(tuple(-x for x in row) for row in identity_matrix(P.ambient_dim))
    neg = Fan(P.ambient_dim, [cone_image(c, minus) for c in sigma.maximal_cones])
    return common_refinement([sigma.all_cones(), neg.all_cones()])


def build_r_fan(setup: QuotientSetup, qfan: Fan = None) -> Fan:
    """Fan of the total space: fibre pieces of the product fan.

    Members are the inclusion-maximal cones of the form
    ``preimage(xi) intersect tau`` with ``xi`` ranging over the quotient
    fan and ``tau`` over the product fan (faces included on both sides).
    """
    key = setup.key()
    if key in _RFAN_MEMO:
        return _RFAN_MEMO[key]
    if setup.m == 1:
        _RFAN_MEMO[key] = setup.sigma_p
        return setup.sigma_p

    if qfan is None:
        qfan = build_quotient_fan(setup)
    taus = product_tuple_fan(setup).all_cones()

    candidates = {}
    for xi in qfan.all_cones():
        pre = cone_preimage(xi, setup.qmap)
        for tau in taus:
            c = cone_intersect(pre, tau)
            candidates.setdefault(c.key(), c)

    # Keep exactly the candidates not strictly contained in another one.
    # Scanning by decreasing dimension, testing against the kept list
    # suffices: a dropped dominator is itself inside a kept cone of
    # dimension at least as large, so containment chains always end at a
    # kept cone.  Same-dimensional nesting is resolved inside each group.
    buckets: dict = {}
    for c in candidates.values():
        buckets.setdefault(c.dim(), []).append(c)
    kept = []
    for dim_c in sorted(buckets, reverse=True):
        survivors = [
            c for c in buckets[dim_c]
            if not any(k.contains_cone(c) for k in kept)
        ]
        kept.extend(
            c for c in survivors
            if not any(d is not c and d.contains_cone(c) for d in survivors)
        )

    fan = validate_fan(kept, setup.tuple_dim)
    assert fan.is_complete(), "fibre pieces failed to cover the tuple space"
    _RFAN_MEMO[key] = fan
    return fan


# --------------------------------------------------------------------------
# polytopes realizing the two fans


@dataclass(frozen=True)
class QuotientPolytopes:
    q_poly: LatticePolytope   # realizes the quotient fan (up to normal equivalence)
    r_poly: LatticePolytope   # realizes the total-space fan


def _power_polytope(P: LatticePolytope, m: int) -> Polyhedron:
    verts = [()]
    for _ in range(m):
        verts = [a + b for a in verts for b in P.vertices]
    return Polyhedron.from_generators(verts, ambient_dim=P.ambient_dim * m)


def build_polytopes(setup: QuotientSetup, qfan: Fan = None) -> QuotientPolytopes:
    """Lattice polytopes whose normal fans are the two constructed fans.

    The quotient polytope is any lattice realization of the quotient fan;
    the total-space polytope is the Minkowski sum of the m-th power of the
    base polytope with the pullback of the quotient polytope along the
    difference map.  The pullback is the *transpose* of ``qmap`` (so it is
    integral and killed by the blockwise sum); lifting along the rational
    section ``qstar`` instead would skew the summand by I - J/m and break
    the normal fan for m >= 3.
    """
    if setup.m == 1:
        return QuotientPolytopes(q_poly=LatticePolytope(((),)), r_poly=setup.P)

    if qfan is None:
        qfan = build_quotient_fan(setup)
    rfan = build_r_fan(setup, qfan)
    q_poly = realize_polytope(qfan)

    lifted = map_polyhedron(
        transpose(setup.qmap), q_poly.to_polyhedron(), out_dim=setup.tuple_dim
    )
    r_raw = minkowski_sum(_power_polytope(setup.P, setup.m), lifted)
    assert r_raw.is_lattice_polytope()
    r_poly = LatticePolytope.from_points(r_raw.vertices)

    assert normal_fan(r_raw, validate=False) == rfan, (
        "total-space polytope does not realize the fibre-piece fan"
    )
    # blockwise sum collapses the total-space polytope onto m * P
    summed = map_polyhedron(setup.smap, r_raw, out_dim=setup.d)
    assert summed.vertices == dilate(setup.P.to_polyhedron(), setup.m).vertices
    return QuotientPolytopes(q_poly=q_poly, r_poly=r_poly)


# --------------------------------------------------------------------------
# affine subdivisions of R^d attached to a tuple of translations


@dataclass(frozen=True)
class SubdivisionCell:
    polyhedron: Polyhedron
    # every m-tuple of base-fan cones whose translated intersection is this
    # cell, as a sorted tuple of m-tuples of cone keys
    labels: tuple


@dataclass(frozen=True)
class Subdivision:
    base_dim: int
    centers: tuple           # the m translation vectors v_i
    cells: tuple             # SubdivisionCell, graded by decreasing dimension

    def cells_of_dim(self, k: int):
        return tuple(c for c in self.cells if c.polyhedron.dim() == k)


def _coerce_centers(P: LatticePolytope, v) -> tuple:
    d = P.ambient_dim
    centers = []
    for vi in v:
        vi = tuple(Fraction(x) for x in vi)
        if len(vi) != d:
            raise ValueError(f"center {vi} does not live in R^{d}")
        centers.append(vi)
    if not centers:
        raise ValueError("need at least one center")
    return tuple(centers)


_NORMAL_FAN_MEMO: dict = {}


def _base_fan(P: LatticePolytope) -> Fan:
    if P.vertices not in _NORMAL_FAN_MEMO:
        _NORMAL_FAN_MEMO[P.vertices] = normal_fan(P)
    return _NORMAL_FAN_MEMO[P.vertices]


def _translated_rows(cone: Cone, center) -> tuple:
    """Homogenized inequality/equality rows of ``-center + cone``.

    Row layout is ``(t, x_1..x_d)`` with the polyhedron at ``t = 1``; a
    cone constraint ``a . (x + center) >= 0`` becomes the integral row
    ``(a . center, a)``.
    """
    ineqs, eqs = cone._membership_h()
    hi = tuple(clear_denominators((vec_dot(a, center),) + tuple(a)) for a in ineqs)
    he = tuple(clear_denominators((vec_dot(e, center),) + tuple(e)) for e in eqs)
    return hi, he


def _state_nonempty(state: DDState) -> bool:
    return any(r[0][0] > 0 for r in state.rays)


def build_subdivision(P, v) -> Subdivision:
    """Superimpose the translated copies of the base normal fan.

    The cells are all nonempty intersections of one translated cone per
    copy (faces included), deduplicated geometrically; each cell keeps
    the full set of labels that produced it.
    """
    if not isinstance(P, LatticePolytope):
        P = LatticePolytope.from_points(P)
    centers = _coerce_centers(P, v)
    d = P.ambient_dim
    cones = _base_fan(P).all_cones()
    rows_per_center = [[_translated_rows(c, vi) for c in cones] for vi in centers]

    root = DDState(d + 1)
    root.insert((1,) + (0,) * d, False)   # stay in the t >= 0 half

    found: dict = {}

    def descend(i: int, state: DDState, label):
        if i == len(centers):
            body = Cone.from_rays(
                [r for r, _m in state.rays], list(state.lineality), ambient_dim=d + 1
            )
            poly = Polyhedron._from_homogenization(d, body)
            assert not poly.is_empty()
            found.setdefault(poly, set()).add(label)
            return
        for ci, (hi, he) in enumerate(rows_per_center[i]):
            child = state.copy()
            for row in he:
                child.insert(row, True)
            for row in hi:
                child.insert(row, False)
            if _state_nonempty(child):
                descend(i + 1, child, label + (cones[ci].key(),))

    descend(0, root, ())

    cells = [
        SubdivisionCell(poly, tuple(sorted(found[poly])))
        for poly in sorted(
            found, key=lambda p: (-p.dim(), p.vertices, p.rays, p.lineality)
        )
    ]

    # Per-dimension maximality sweep.  In a genuine refinement complex
    # equal-dimensional cells never nest, so this is expected to keep
    # everything; nesting would mean the enumeration produced a non-cell.
    out = []
    for cell in cells:
        k = cell.polyhedron.dim()
        nested = any(
            other is not cell
            and other.polyhedron.dim() == k
            and _poly_contains(other.polyhedron, cell.polyhedron)
            for other in cells
        )
        if not nested:
            out.append(cell)

    return Subdivision(base_dim=d, centers=centers, cells=tuple(out))


def _poly_contains(big: Polyhedron, small: Polyhedron) -> bool:
    if big == small:
        return False
    if not all(big.contains(p) for p in small.vertices):
        return False
    gens = list(small.rays) + list(small.lineality) + [
        tuple(-x for x in l) for l in small.lineality
    ]
    for g in gens:
        if any(vec_dot(a, g) < 0 for a, _b in big.inequalities):
            return False
        if any(vec_dot(e, g) != 0 for e, _c in big.equalities):
            return False
    return True


def subdivisions_equivalent(P, v, w) -> bool:
    """Same emptiness pattern over all translated-cone tuples.

    Explored as one synchronized tree: a prefix empty on one side but not
    the other already decides the answer, because any nonempty prefix
    extends to a nonempty full tuple (the base fan is complete).
    """
    if not isinstance(P, LatticePolytope):
        P = LatticePolytope.from_points(P)
    cv = _coerce_centers(P, v)
    cw = _coerce_centers(P, w)
    if len(cv) != len(cw):
        raise ValueError("tuples must have the same number of centers")
    d = P.ambient_dim
    cones = _base_fan(P).all_cones()
    rows_v = [[_translated_rows(c, x) for c in cones] for x in cv]
    rows_w = [[_translated_rows(c, x) for c in cones] for x in cw]

    root = DDState(d + 1)
    root.insert((1,) + (0,) * d, False)

    def agree(i: int, sv: DDState, sw: DDState) -> bool:
        if i == len(cv):
            return True
        for ci in range(len(cones)):
            av = sv.copy()
            for row in rows_v[i][ci][1]:
                av.insert(row, True)
            for row in rows_v[i][ci][0]:
                av.insert(row, False)
            aw = sw.copy()
            for row in rows_w[i][ci][1]:
                aw.insert(row, True)
            for row in rows_w[i][ci][0]:
                aw.insert(row, False)
            ev, ew = _state_nonempty(av), _state_nonempty(aw)
            if ev != ew:
                return False
            if ev and not agree(i + 1, av, aw):
                return False
        return True

    return agree(0, root, root)


# --------------------------------------------------------------------------
# locating vectors inside the quotient fan


def _flatten_vector(setup: QuotientSetup, v) -> tuple:
    flat = []
    for item in v:
        if isinstance(item, (tuple, list)):
            flat.extend(item)
        else:
            flat.append(item)
    flat = tuple(Fraction(x) for x in flat)
    if len(flat) != setup.tuple_dim:
        raise ValueError(
            f"expected {setup.m} points in R^{setup.d}, got a vector of length {len(flat)}"
        )
    return flat


def cone_of_vector(setup: QuotientSetup, qfan: Fan, v) -> Cone:
    """The unique quotient-fan cone holding the class of ``v`` in its
    relative interior."""
    y = mat_vec(setup.qmap, _flatten_vector(setup, v))
    for c in qfan.all_cones():
        if c.classify_point(y) == "relative_interior":
            return c
    raise FanError(f"no cone holds {y} in its relative interior; fan incomplete?")


def local_quotient_cone(setup: QuotientSetup, v) -> Cone:
    """Quotient-fan cone around the class of ``v`` without building the fan.

    A generic infinitesimal push of ``[v]`` lands in the interior of a
    chamber; that chamber is contained in the intersection of all
    projected product cones holding the pushed point, and the cone sought
    is the smallest face of that intersection containing ``[v]``.  The
    guess is then certified: the result holds ``[v]`` in its relative
    interior, and no projected cone separates its relative interior, so
    it is exactly the closure of the membership-signature class of
    ``[v]``.
    """
    if setup.m == 1:
        return zero_cone(0)
    y = mat_vec(setup.qmap, _flatten_vector(setup, v))
    images = _distinct_images(setup)

    # choose a push direction off every hyperplane through y
    covectors = set()
    for img in images:
        covectors.update(img.inequalities)
        covectors.update(img.equalities)
    tight = [a for a in covectors if vec_dot(a, y) == 0]
    n = setup.quotient_dim
    g = None
    base = 2
    while g is None:
        cand = tuple(pow(base, k, 10007) for k in range(1, n + 1))
        if all(vec_dot(a, cand) != 0 for a in tight):
            g = cand
        base += 1

    def holds_pushed(cone: Cone) -> bool:
        ineqs, eqs = cone._membership_h()
        for e in eqs:
            if vec_dot(e, y) != 0 or vec_dot(e, g) != 0:
                return False
        for a in ineqs:
            s = vec_dot(a, y)
            if s < 0 or (s == 0 and vec_dot(a, g) < 0):
                return False
        return True

    containing = [img for img in images if holds_pushed(img)]
    assert containing, "pushed point escaped every projected cone"
    rows_i = []
    for img in containing:
        hi, he = img._membership_h()
        rows_i.extend(hi)
        assert not he, "lower-dimensional image contains a generic point"
    chamber = Cone.from_inequalities(rows_i, (), ambient_dim=n)
    assert chamber.is_full_dimensional(), "push direction was not generic"
    result = chamber.smallest_face_containing(y)
    assert result.classify_point(y) == "relative_interior"

    # certificate: no projected cone separates the relative interior
    for img in images:
        x = cone_intersect(result, img)
        if x.is_zero() or x == result:
            continue
        probe = x.relative_interior_point()
        if result.classify_point(probe) == "relative_interior":
            raise FanError(
                f"candidate cone straddles a projected cone: {img!r}"
            )
    return result
