"""Polyhedral cones with exact dual descriptions.

A cone is stored with a canonical V-description (extreme rays modulo
lineality, plus a canonical lineality basis) and a canonical H-description
(irredundant facet covectors modulo the span's annihilator).  Conversions run
an incremental double-description method over the integers: every extreme ray
and facet covector is a primitive integer vector, so equality of cones is
literal equality of canonical forms.

Sign convention: an inequality covector ``a`` means ``a . x >= 0``; an
equality covector means ``a . x == 0``.
"""

from __future__ import annotations

from fractions import Fraction

from .intlinalg import (
    IMat,
    IVec,
    annihilator_basis,
    clear_denominators,
    hermite_normal_form,
    identity_matrix,
    is_zero_vector,
    kernel_basis,
    mat_vec,
    orthogonal_project_mod,
    primitive,
    rational_rank,
    smith_normal_form_diagonal,
    solve_rational,
    transpose,
    vec_dot,
)


def _combine(h_pos: int, pos_vec: IVec, h_neg: int, neg_vec: IVec) -> IVec:
    """Positive combination of a +/- ray pair lying on the constraint."""
    return primitive(tuple(h_pos * nv - h_neg * pv for pv, nv in zip(pos_vec, neg_vec)))


class DDState:
    """Mutable double-description state for incremental constraint insertion.

    Tracks the extreme rays (with tight-set bitmasks over the inequalities
    inserted so far) and a lineality basis of the running intersection.
    While the current lineality basis meets a constraint, the basis is cut
    down exactly; afterwards rays are split with the classic combinatorial
    adjacency test.  ``copy`` is cheap, which lets tree searches branch on
    the sign of a hyperplane without redoing shared prefixes.
    """

    __slots__ = ("ambient_dim", "lineality", "rays", "n_bits")

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.lineality: list[IVec] = list(identity_matrix(ambient_dim))
        self.rays: list[list] = []  # [vector, tight_mask]
        self.n_bits = 0

    def copy(self) -> "DDState":
        dup = DDState.__new__(DDState)
        dup.ambient_dim = self.ambient_dim
        dup.lineality = list(self.lineality)
        dup.rays = [[vec, mask] for vec, mask in self.rays]
        dup.n_bits = self.n_bits
        return dup

    def ray_vectors(self) -> tuple:
        return tuple(r[0] for r in self.rays)

    def insert(self, h: IVec, is_eq: bool) -> None:
        if is_zero_vector(h):
            return
        lin = self.lineality
        rays = self.rays
        lin_vals = [vec_dot(h, l) for l in lin]
        idx = None
        for i, v in enumerate(lin_vals):
            if v != 0 and (idx is None or abs(v) < abs(lin_vals[idx])):
                idx = i
        if idx is not None:
            # The constraint cuts the lineality space.  Project everything
            # along l0 onto {h = 0}; for an inequality l0 itself survives as
            # the unique extreme ray off the hyperplane.
            l0, v0 = lin[idx], lin_vals[idx]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            self.lineality = [
                primitive(tuple(v0 * a - lin_vals[i] * b for a, b in zip(l, l0)))
                for i, l in enumerate(lin) if i != idx
            ]
            for ray in rays:
                hv = vec_dot(h, ray[0])
                if hv:
                    ray[0] = primitive(
                        tuple(v0 * a - hv * b for a, b in zip(ray[0], l0)))
            if not is_eq:
                bit = 1 << self.n_bits
                self.n_bits += 1
                for ray in rays:
                    ray[1] |= bit  # all projected rays lie on {h = 0}
                # l0 is tight on every previously inserted constraint: each of
                # them vanishes on the lineality space that contained l0.
                rays.append([l0, bit - 1])
            return
        vals = [vec_dot(h, r[0]) for r in rays]
        bit = 0
        if not is_eq:
            bit = 1 << self.n_bits
            self.n_bits += 1
            if all(v >= 0 for v in vals):
                for r, v in zip(rays, vals):
                    if v == 0:
                        r[1] |= bit
                return
        elif all(v == 0 for v in vals):
            return
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        combos = []
        for i in pos:
            for j in neg:
                common = rays[i][1] & rays[j][1]
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and (rays[k][1] & common) == common:
                        adjacent = False
                        break
                if adjacent:
                    vec = _combine(vals[i], rays[i][0], vals[j], rays[j][0])
                    combos.append([vec, (rays[i][1] & rays[j][1]) | bit])
        if is_eq:
            kept = [rays[k] for k in zero]
        else:
            kept = [rays[k] for k in pos]
            for k in zero:
                rays[k][1] |= bit
                kept.append(rays[k])
        self.rays = kept + combos


def dd_v_from_h(
    ambient_dim: int,
    inequalities=(),
    equalities=(),
):
    """Extreme rays and lineality of ``{x : A x >= 0, E x = 0}``.

    Returns ``(rays, lineality)`` as tuples of primitive integer vectors.
    Not canonicalized; use :class:`Cone` for canonical forms.
    """
    state = DDState(ambient_dim)
    for e in equalities:
        state.insert(tuple(e), True)
    for a in inequalities:
        state.insert(tuple(a), False)
    return state.ray_vectors(), tuple(state.lineality)


def dd_h_from_v(ambient_dim: int, rays=(), lineality=()):
    """Irredundant H-description of ``cone(rays) + span(lineality)``.

    Works through the dual: the facet covectors of C are the extreme rays of
    the dual cone ``{u : u.r >= 0, u.l = 0}`` and the equality covectors are
    its lineality.  Returns ``(inequalities, equalities)``.
    """
    dual_rays, dual_lin = dd_v_from_h(
        ambient_dim,
        inequalities=tuple(tuple(r) for r in rays),
        equalities=tuple(tuple(l) for l in lineality),
    )
    return dual_rays, dual_lin


def _saturated_span_basis(vectors, ambient_dim: int) -> IMat:
    """Canonical HNF basis of ``span(vectors) intersect Z^n`` (saturated)."""
    vecs = tuple(tuple(v) for v in vectors if not is_zero_vector(v))
    if not vecs:
        return ()
    ann = annihilator_basis(vecs, ncols=ambient_dim)
    if not ann:
        return identity_matrix(ambient_dim)
    return kernel_basis(ann, ncols=ambient_dim)


class Cone:
    """Immutable polyhedral cone with canonical dual descriptions.

    Construct with :meth:`from_rays` or :meth:`from_inequalities`.  Equality
    and hashing use the canonical V-description, so two cones compare equal
    exactly when they are equal as point sets.
    """

    __slots__ = ("ambient_dim", "rays", "lineality", "_ineqs", "_eqs", "_raw_h")

    def __init__(self, ambient_dim, rays, lineality, ineqs=None, eqs=None, raw_h=None):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.lineality = lineality
        self._ineqs = ineqs
        self._eqs = eqs
        self._raw_h = raw_h

    # -- construction -----------------------------------------------------

    @staticmethod
    def _canonicalize_v(ambient_dim, rays, lineality):
        lin = _saturated_span_basis(lineality, ambient_dim)
        out = []
        for r in rays:
            p = orthogonal_project_mod(r, lin)
            if not is_zero_vector(p):
                out.append(p)
        return tuple(sorted(set(out))), lin

    @classmethod
    def from_rays(cls, rays, lineality=(), ambient_dim=None):
        rays = tuple(clear_denominators(r) for r in rays)
        lineality = tuple(clear_denominators(l) for l in lineality)
        if ambient_dim is None:
            if rays:
                ambient_dim = len(rays[0])
            elif lineality:
                ambient_dim = len(lineality[0])
            else:
                raise ValueError("ambient_dim required for the zero cone")
        gens = tuple(primitive(r) for r in rays if not is_zero_vector(r))
        ineqs, eqs = dd_h_from_v(ambient_dim, gens, lineality)
        # true lineality may be larger than the span handed in (opposite rays)
        lin_full = kernel_basis(ineqs + eqs, ncols=ambient_dim)
        proj = []
        for r in gens:
            p = orthogonal_project_mod(r, lin_full)
            if not is_zero_vector(p):
                proj.append(p)
        proj = sorted(set(proj))
        extreme = []
        for r in proj:
            binding = [a for a in ineqs if vec_dot(a, r) == 0]
            if rational_rank(tuple(binding) + eqs) == ambient_dim - len(lin_full) - 1:
                extreme.append(r)
        eqs_c = hermite_normal_form(eqs)
        ineqs_c = tuple(sorted(set(
            p for p in (orthogonal_project_mod(a, eqs_c) for a in ineqs)
            if not is_zero_vector(p))))
        return cls(ambient_dim, tuple(extreme), lin_full, ineqs_c, eqs_c)

    @classmethod
    def from_inequalities(cls, inequalities=(), equalities=(), ambient_dim=None):
        inequalities = tuple(clear_denominators(a) for a in inequalities)
        equalities = tuple(clear_denominators(e) for e in equalities)
        if ambient_dim is None:
            for v in inequalities + equalities:
                ambient_dim = len(v)
                break
            else:
                raise ValueError("ambient_dim required when no constraints given")
        rays, lin = dd_v_from_h(ambient_dim, inequalities, equalities)
        rays_c, lin_c = cls._canonicalize_v(ambient_dim, rays, lin)
        return cls(ambient_dim, rays_c, lin_c,
                   raw_h=(inequalities, equalities))

    # -- canonical H-description (lazy) -----------------------------------

    def _ensure_h(self):
        if self._ineqs is None:
            ineqs, eqs = dd_h_from_v(self.ambient_dim, self.rays, self.lineality)
            eqs_c = hermite_normal_form(eqs)
            ineqs_c = tuple(sorted(set(
                p for p in (orthogonal_project_mod(a, eqs_c) for a in ineqs)
                if not is_zero_vector(p))))
            self._ineqs, self._eqs = ineqs_c, eqs_c

    @property
    def inequalities(self) -> IMat:
        self._ensure_h()
        return self._ineqs

    @property
    def equalities(self) -> IMat:
        self._ensure_h()
        return self._eqs

    def _membership_h(self):
        if self._ineqs is not None:
            return self._ineqs, self._eqs
        if self._raw_h is not None:
            return self._raw_h
        self._ensure_h()
        return self._ineqs, self._eqs

    # -- identity ----------------------------------------------------------

    def key(self):
        return (self.ambient_dim, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cone(dim={self.dim()}/{self.ambient_dim}, rays={list(self.rays)}, lin={list(self.lineality)})"

    # -- basic geometry ----------------------------------------------------

    def dim(self) -> int:
        return rational_rank(self.rays + self.lineality)

    def is_full_dimensional(self) -> bool:
        return self.dim() == self.ambient_dim

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.rays) == self.dim()

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains_point(self, x) -> bool:
        ineqs, eqs = self._membership_h()
        return (all(vec_dot(e, x) == 0 for e in eqs)
                and all(vec_dot(a, x) >= 0 for a in ineqs))

    def classify_point(self, x) -> str:
        """'outside', 'boundary', or 'relative_interior'."""
        for e in self.equalities:
            if vec_dot(e, x) != 0:
                return "outside"
        strict = True
        for a in self.inequalities:
            v = vec_dot(a, x)
            if v < 0:
                return "outside"
            if v == 0:
                strict = False
        return "relative_interior" if strict else "boundary"

    def relative_interior_point(self) -> IVec:
        """An integer point in the relative interior (0 for linear spaces)."""
        if not self.rays:
            return tuple([0] * self.ambient_dim)
        p = [0] * self.ambient_dim
        for r in self.rays:
            for i, x in enumerate(r):
                p[i] += x
        return tuple(p)

    def contains_cone(self, other: "Cone") -> bool:
        return (all(self.contains_point(r) for r in other.rays)
                and all(self.contains_point(l) for l in other.lineality)
                and all(self.contains_point(tuple(-x for x in l)) for l in other.lineality))

    # -- faces ---------------------------------------------------------------

    def facets(self) -> tuple["Cone", ...]:
        """Codimension-one faces, one per facet covector."""
        out = []
        for a in self.inequalities:
            out.append(Cone.from_inequalities(
                self.inequalities, self.equalities + (a,), self.ambient_dim))
        return tuple(out)

    def faces(self) -> tuple["Cone", ...]:
        """All faces, the cone itself and the minimal face included."""
        seen = {self.key(): self}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                for f in c.facets():
                    if f.key() not in seen:
                        seen[f.key()] = f
                        nxt.append(f)
            frontier = nxt
        return tuple(sorted(seen.values(), key=lambda c: (-c.dim(), c.key())))

    def smallest_face_containing(self, x) -> "Cone":
        """The unique face with ``x`` in its relative interior."""
        assert self.contains_point(x), "point must lie in the cone"
        binding = tuple(a for a in self.inequalities if vec_dot(a, x) == 0)
        return Cone.from_inequalities(
            self.inequalities, self.equalities + binding, self.ambient_dim)

    def is_face_of(self, other: "Cone") -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        if not other.contains_cone(self):
            return False
        return self == other.smallest_face_containing(
            self.relative_interior_point())

    # -- lattice properties --------------------------------------------------

    def ray_lattice_matrix(self, lattice_basis: IMat | None = None) -> IMat:
        """Rays expressed in the given lattice basis (default: standard)."""
        if lattice_basis is None:
            return self.rays
        out = []
        for r in self.rays:
            sol = solve_rational(transpose(lattice_basis), r)
            assert sol is not None, "ray outside the span of the lattice basis"
            assert all(f.denominator == 1 for f in sol), \
                "ray not in the given lattice"
            out.append(tuple(int(f) for f in sol))
        return tuple(out)

    def is_smooth(self, lattice_basis: IMat | None = None) -> bool:
        """Rays form part of a lattice basis (simplicial + unimodular)."""
        if not self.is_pointed():
            return False
        if len(self.rays) != self.dim():
            return False
        mat = self.ray_lattice_matrix(lattice_basis)
        return all(d == 1 for d in smith_normal_form_diagonal(mat))


def is_smooth_cone(c: Cone, lattice_basis: IMat | None = None) -> bool:
    """Free-standing form of :meth:`Cone.is_smooth`."""
    return c.is_smooth(lattice_basis)


def cone_intersect(a: Cone, b: Cone) -> Cone:
    assert a.ambient_dim == b.ambient_dim
    ai, ae = a._membership_h()
    bi, be = b._membership_h()
    return Cone.from_inequalities(
        tuple(ai) + tuple(bi), tuple(ae) + tuple(be), a.ambient_dim)


def cone_image(c: Cone, matrix: IMat) -> Cone:
    """Image of the cone under ``x -> matrix . x`` (rows = output coords)."""
    out_dim = len(matrix)
    return Cone.from_rays(
        [mat_vec(matrix, r) for r in c.rays],
        [mat_vec(matrix, l) for l in c.lineality],
        ambient_dim=out_dim,
    )


def cone_preimage(c: Cone, matrix: IMat) -> Cone:
    """Preimage ``{x : matrix . x in c}`` (exact H-description pullback)."""
    in_dim = len(matrix[0]) if matrix else 0
    mt = transpose(matrix)
    ineqs, eqs = c._membership_h()
    return Cone.from_inequalities(
        [mat_vec(mt, a) for a in ineqs],
        [mat_vec(mt, e) for e in eqs],
        ambient_dim=in_dim,
    )


def cone_product(a: Cone, b: Cone) -> Cone:
    """Direct product in the concatenated coordinates."""
    na, nb = a.ambient_dim, b.ambient_dim
    zero_a, zero_b = (0,) * na, (0,) * nb
    rays = [r + zero_b for r in a.rays] + [zero_a + r for r in b.rays]
    lin = [l + zero_b for l in a.lineality] + [zero_a + l for l in b.lineality]
    ai, ae = a._membership_h()
    bi, be = b._membership_h()
    raw = (tuple([x + zero_b for x in ai] + [zero_a + x for x in bi]),
           tuple([x + zero_b for x in ae] + [zero_a + x for x in be]))
    rays_c, lin_c = Cone._canonicalize_v(na + nb, rays, lin)
    return Cone(na + nb, rays_c, lin_c, raw_h=raw)


def dual_cone(c: Cone) -> Cone:
    """The dual cone ``{u : u . x >= 0 for all x in c}``."""
    return Cone.from_rays(c.inequalities, c.equalities, ambient_dim=c.ambient_dim)


def zero_cone(ambient_dim: int) -> Cone:
    return Cone.from_rays((), (), ambient_dim=ambient_dim)


def full_space_cone(ambient_dim: int) -> Cone:
    return Cone.from_rays((), identity_matrix(ambient_dim), ambient_dim=ambient_dim)
