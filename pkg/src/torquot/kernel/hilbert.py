"""Hilbert bases of pointed rational cones of dimension at most three.

The cone is rewritten in coordinates of the saturated lattice of its span,
triangulated there, and each simplicial piece contributes the lattice points
of its half-open fundamental parallelepiped.  Those points plus the primitive
ray generators generate the monoid; a pairwise reducibility filter leaves
exactly the irreducible elements.

Dimension three is enough for the intended callers and keeps triangulation
elementary: the cross-section of a pointed 3-cone is a polygon, so a walk
along facet/ray incidences yields the cyclic ray order and a fan
triangulation from the first ray.
"""

from __future__ import annotations

from math import ceil, floor

from .cones import Cone
from .intlinalg import (
    annihilator_basis,
    clear_denominators,
    invert_rational,
    kernel_basis,
    mat_vec,
    primitive,
    solve_rational,
    transpose,
    vec_dot,
    vec_sub,
)


def _cyclic_ray_order(cone: Cone):
    """Rays of a full-dimensional pointed 3-cone in cyclic boundary order."""
    neighbors = {r: set() for r in cone.rays}
    for a in cone.inequalities:
        binding = [r for r in cone.rays if vec_dot(a, r) == 0]
        assert len(binding) == 2, "facet of a pointed 3-cone has two rays"
        neighbors[binding[0]].add(binding[1])
        neighbors[binding[1]].add(binding[0])
    start = cone.rays[0]
    order = [start, min(neighbors[start])]
    while len(order) < len(cone.rays):
        nxt = (neighbors[order[-1]] - {order[-2]}).pop()
        order.append(nxt)
    return order


def _triangulate(cone: Cone):
    """Partition into simplicial subcones (tuples of independent rays)."""
    k = cone.ambient_dim
    if len(cone.rays) == k or k <= 2:
        return (cone.rays,)
    assert k == 3
    order = _cyclic_ray_order(cone)
    return tuple((order[0], order[i], order[i + 1])
                 for i in range(1, len(order) - 1))


def _parallelepiped_points(gens):
    """Nonzero lattice points of { sum t_i g_i : 0 <= t_i < 1 }."""
    k = len(gens)
    inv = invert_rational(transpose(gens))
    corners = [(0,) * len(gens[0])]
    for g in gens:
        corners += [tuple(c + x for c, x in zip(v, g)) for v in corners]
    lo = [floor(min(c[i] for c in corners)) for i in range(len(gens[0]))]
    hi = [ceil(max(c[i] for c in corners)) for i in range(len(gens[0]))]
    found = []

    def scan(prefix, i):
        if i == len(lo):
            t = mat_vec(inv, tuple(prefix))
            if all(0 <= ti < 1 for ti in t) and any(prefix):
                found.append(tuple(prefix))
            return
        for x in range(lo[i], hi[i] + 1):
            scan(prefix + [x], i + 1)

    scan([], 0)
    return found


def hilbert_basis(cone: Cone, lattice_basis=None):
    """Irreducible generators of ``cone`` intersected with its lattice.

    The lattice defaults to the saturation of span(cone) in the ambient
    integer lattice; an explicit ``lattice_basis`` (rows spanning the span
    of the cone, with every ray integral in it) overrides that.  Results
    are ambient integer vectors, lexicographically sorted.
    """
    assert cone.lineality == (), "Hilbert basis needs a pointed cone"
    if not cone.rays:
        return ()
    if lattice_basis is None:
        lattice_basis = kernel_basis(annihilator_basis(cone.rays),
                                     ncols=cone.ambient_dim)
    basis_t = transpose(lattice_basis)
    coord_rays = []
    for r in cone.rays:
        w = solve_rational(basis_t, r)
        assert w is not None, "ray outside the span of the lattice"
        coord_rays.append(primitive(clear_denominators(w)))
    k = len(lattice_basis)
    assert k <= 3, "only implemented through dimension three"
    local = Cone.from_rays(coord_rays, ambient_dim=k)
    assert len(local.rays) == len(coord_rays)

    candidates = set(local.rays)
    for gens in _triangulate(local):
        candidates.update(_parallelepiped_points(gens))

    basis = []
    for x in sorted(candidates):
        reducible = any(
            y != x and local.contains_point(vec_sub(x, y))
            for y in candidates)
        if not reducible:
            basis.append(x)
    ambient = [mat_vec(basis_t, w) for w in basis]
    return tuple(sorted(ambient))
