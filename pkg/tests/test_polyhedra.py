"""Polyhedron construction checked against LP-based and brute-force oracles."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from torquot.kernel.lp import lp_feasibility
from torquot.kernel.polyhedra import (
    LatticePolytope,
    Polyhedron,
    convex_hull,
    dilate,
    integer_point,
    integer_points,
    intersect_polyhedra,
    map_polyhedron,
    minkowski_sum,
)

Q = Fraction

coord = st.integers(min_value=-4, max_value=4)


def points_strategy(dim, max_n=7):
    return st.lists(st.tuples(*[coord] * dim), min_size=1, max_size=max_n)


def oracle_vertices(points):
    """A point is a vertex of the hull iff it is not a convex combination
    of the other points (decided by exact LP feasibility)."""
    uniq = sorted(set(tuple(Q(x) for x in p) for p in points))
    dim = len(uniq[0])
    verts = []
    for i, p in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1:]
        if not others:
            verts.append(p)
            continue
        # variables: one weight per other point
        n = len(others)
        ineqs = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            ineqs.append((tuple(e), 0))  # weight >= 0
        eqs = [((1,) * n, 1)]  # weights sum to one
        for c in range(dim):
            eqs.append((tuple(q[c] for q in others), p[c]))
        if not lp_feasibility(n, ineqs, eqs).feasible:
            verts.append(p)
    return tuple(verts)


@settings(max_examples=150, deadline=None)
@given(points_strategy(2))
def test_hull_vertices_match_lp_oracle_dim2(pts):
    hull = convex_hull(pts)
    assert hull.vertices == oracle_vertices(pts)


@settings(max_examples=80, deadline=None)
@given(points_strategy(3, max_n=8))
def test_hull_vertices_match_lp_oracle_dim3(pts):
    hull = convex_hull(pts)
    assert hull.vertices == oracle_vertices(pts)


@settings(max_examples=100, deadline=None)
@given(points_strategy(2), st.lists(st.tuples(coord, coord), max_size=2))
def test_h_to_v_round_trip(pts, rays):
    rays = [r for r in rays if r != (0, 0)]
    p = Polyhedron.from_generators(pts, rays)
    back = Polyhedron.from_inequalities(p.inequalities, p.equalities,
                                        ambient_dim=2)
    assert back == p


@settings(max_examples=100, deadline=None)
@given(points_strategy(2), points_strategy(2),
       st.tuples(coord, coord).filter(lambda d: d != (0, 0)))
def test_minkowski_support_additive(apts, bpts, direction):
    a, b = convex_hull(apts), convex_hull(bpts)
    s = minkowski_sum(a, b)
    assert s.support_value(direction) == (
        a.support_value(direction) + b.support_value(direction))


@settings(max_examples=100, deadline=None)
@given(points_strategy(2))
def test_integer_point_vs_brute_scan(pts):
    p = convex_hull(pts)
    got = integer_point(p)
    brute = integer_points(p)
    if brute:
        assert got == brute[0]
    else:
        assert got is None


def test_standard_triangle():
    p = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert p.vertices == ((0, 0), (0, 1), (1, 0))
    assert p.dim() == 2
    assert len(p.inequalities) == 3
    assert p.contains((Q(1, 3), Q(1, 3)))
    assert not p.contains((1, 1))
    assert p.is_lattice_polytope()


def test_quadrilateral_and_thin_triangle():
    f2 = convex_hull([(0, 0), (3, 0), (1, 1), (0, 1)])
    assert len(f2.vertices) == 4
    assert f2.contains((2, Q(1, 3)))
    f40 = convex_hull([(0, 0), (0, 4), (-1, 4)])
    assert f40.vertices == ((-1, 4), (0, 0), (0, 4))
    assert len(f40.inequalities) == 3
    assert integer_points(f40) == ((-1, 4), (0, 0), (0, 1), (0, 2), (0, 3), (0, 4))


def test_cube_faces():
    cube = Polyhedron.from_inequalities(
        [((1, 0, 0), 0), ((-1, 0, 0), -1),
         ((0, 1, 0), 0), ((0, -1, 0), -1),
         ((0, 0, 1), 0), ((0, 0, -1), -1)])
    assert len(cube.vertices) == 8
    assert len(cube.inequalities) == 6
    corner = cube.face_in_direction((1, 1, 1))
    assert corner.vertices == ((0, 0, 0),)
    bottom = cube.face_in_direction((0, 0, 1))
    assert len(bottom.vertices) == 4
    assert bottom.dim() == 2


def test_empty_and_unbounded():
    empty = Polyhedron.from_inequalities([((1,), 1), ((-1,), 0)])
    assert empty.is_empty()
    assert integer_point(empty) is None

    # strip 1/4 <= x <= 3/4, y free: unbounded yet integer-free
    strip = Polyhedron.from_inequalities(
        [((4, 0), 1), ((-4, 0), -3)])
    assert not strip.is_empty()
    assert not strip.is_bounded()
    assert strip.lineality == ((0, 1),)
    assert integer_point(strip) is None

    ray = Polyhedron.from_inequalities(
        [((2, 0), 1), ((0, 1), 0)], [((-2, 1), 0)])
    # x >= 1/2 on the line y = 2x
    assert integer_point(ray) == (1, 2)


def test_unbounded_generators_round_trip():
    p = Polyhedron.from_generators([(0, 0), (1, 0)], rays=[(1, 1), (-1, 1)])
    assert p.vertices == ((0, 0), (1, 0))
    assert p.rays == ((-1, 1), (1, 1))
    back = Polyhedron.from_inequalities(p.inequalities, ambient_dim=2)
    assert back == p


def test_map_dilate_translate_intersect():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    big = dilate(tri, 3)
    assert big.vertices == ((0, 0), (0, 3), (3, 0))
    proj = map_polyhedron(((1, 1),), tri)
    assert proj.vertices == ((0,), (1,))
    shifted = tri.translate((Q(1, 2), 0))
    assert shifted.contains((Q(1, 2), 0))
    both = intersect_polyhedra(tri, shifted)
    assert both.support_value((1, 0)) == Q(1, 2)


def test_lattice_polytope_type():
    lp = LatticePolytope.from_points([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert lp.vertices == ((0, 0), (0, 2), (2, 0))
    assert lp.dim() == 2
    assert len(lp.lattice_points()) == 6
    assert lp.dilate(2).vertices == ((0, 0), (0, 4), (4, 0))
    seg = LatticePolytope.from_points([(0,), (1,)])
    assert seg.minkowski(seg).vertices == ((0,), (2,))


def test_lattice_point_counts_under_dilation():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    for k in range(1, 5):
        assert len(integer_points(dilate(tri, k))) == (k + 1) * (k + 2) // 2
