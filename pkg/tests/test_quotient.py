"""Quotient/family fan construction: setup linear algebra, the two fan
builders (vs the m=2 shortcut and the Minkowski-sum polytope oracle),
translated-fan subdivisions (vs a brute-force tuple oracle), and the
vector-placement lemma."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torquot.fans import Fan, normal_fan
from torquot.kernel.cones import Cone, cone_image
from torquot.kernel.intlinalg import identity_matrix, mat_mul, transpose
from torquot.kernel.polyhedra import (
    LatticePolytope,
    Polyhedron,
    dilate,
    integer_point,
    intersect_polyhedra,
    map_polyhedron,
)
from torquot.presets import (
    NONREDUCED_WITNESS_TUPLE,
    f2_polytope,
    f40_polytope,
    figure5_tuples,
    random_lattice_polygon,
    simplex,
)
from torquot.quotient import (
    QuotientSetupError,
    build_polytopes,
    build_quotient_fan,
    build_r_fan,
    build_setup,
    build_subdivision,
    cone_of_vector,
    forgetful_matrix,
    local_quotient_cone,
    quotient_fan_via_m2_lemma,
    section_matrix,
    subdivisions_equivalent,
)

SEG = simplex(1)
TRI = simplex(2)


# ---------------------------------------------------------------- setup


def test_setup_matrices_segment_m2():
    s = build_setup(SEG, 2)
    assert s.delta == ((1,), (1,))
    assert s.qmap == ((1, -1),)
    assert s.smap == ((1, 1),)
    assert s.qstar == ((Fraction(1, 2),), (Fraction(-1, 2),))
    assert s.d == 1 and s.tuple_dim == 2 and s.quotient_dim == 1


def test_setup_triangle_m2_difference_coordinates():
    s = build_setup(TRI, 2)
    # (x, y, u, v) -> (x - u, y - v)
    assert s.qmap == ((1, 0, -1, 0), (0, 1, 0, -1))


@pytest.mark.parametrize("d,m", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_setup_identities(d, m):
    s = build_setup(simplex(d), m)
    qdim = d * (m - 1)
    assert s.smap == transpose(s.delta)
    if m > 1:
        assert mat_mul(s.qmap, s.qstar) == identity_matrix(qdim)
    assert all(x == 0 for row in mat_mul(s.qmap, s.delta) for x in row)


def test_setup_rejections():
    with pytest.raises(QuotientSetupError):
        build_setup(SEG, 0)
    with pytest.raises(QuotientSetupError):
        build_setup(LatticePolytope.from_points([(0, 0), (1, 0)]), 2)  # flat in R^2


def test_section_matrices_are_sections():
    for d in (1, 2):
        for m in (2, 3, 4):
            s = build_setup(simplex(d), m)
            for j in range(1, m + 1):
                lam = section_matrix(d, m, j)
                assert mat_mul(s.qmap, lam) == identity_matrix(d * (m - 1))


def test_forgetful_matrix_shapes_and_last_drop():
    # dropping the last of three points re-bases differences on block 2
    assert forgetful_matrix(1, 2, 3) == ((1, -1),)
    # dropping an earlier point deletes its block
    assert forgetful_matrix(1, 2, 1) == ((0, 1),)
    assert forgetful_matrix(1, 2, 2) == ((1, 0),)
    for i in (1, 2):
        assert len(forgetful_matrix(2, 2, i)) == 2
    with pytest.raises(ValueError):
        forgetful_matrix(2, 2, 4)


@pytest.mark.property
def test_graph_embedding_diagram_commutes():
    # blockwise sum of the graph-map pullback equals sum after projection
    for d, m in [(1, 2), (2, 2), (1, 3)]:
        s = build_setup(simplex(d), m)
        dm, qdim = s.tuple_dim, s.quotient_dim
        iota_star = tuple(
            tuple(identity_matrix(dm)[r]) + tuple(transpose(s.qmap)[r])
            for r in range(dm)
        )
        p1 = tuple(
            tuple(identity_matrix(dm)[r]) + (0,) * qdim for r in range(dm)
        )
        assert mat_mul(s.smap, iota_star) == mat_mul(s.smap, p1)


# ------------------------------------------------------- quotient fans


def test_quotient_fan_segment_m2():
    qf = build_quotient_fan(build_setup(SEG, 2))
    assert sorted(c.rays for c in qf.maximal_cones) == [((-1,),), ((1,),)]


def test_quotient_fan_m1_trivial():
    qf = build_quotient_fan(build_setup(TRI, 1))
    assert qf.ambient_dim == 0
    assert len(qf.maximal_cones) == 1


SEXTANTS = [
    ((1, 0), (1, 1)),
    ((1, 1), (0, 1)),
    ((0, 1), (-1, 0)),
    ((-1, 0), (-1, -1)),
    ((-1, -1), (0, -1)),
    ((0, -1), (1, 0)),
]


def test_quotient_fan_triangle_m2_is_six_sextants():
    qf = build_quotient_fan(build_setup(TRI, 2))
    got = {frozenset(c.rays) for c in qf.maximal_cones}
    assert got == {frozenset(p) for p in SEXTANTS}


@pytest.mark.property
def test_m2_lemma_route_agrees_in_the_plane():
    corpus = [TRI, f2_polytope(), f40_polytope()]
    corpus += [random_lattice_polygon(s) for s in (11, 12, 13)]
    for poly in corpus:
        assert build_quotient_fan(build_setup(poly, 2)) == quotient_fan_via_m2_lemma(poly)


def test_m2_shortcut_underrefines_tetrahedron():
    # The sigma/minus-sigma refinement has twelve square cones; difference
    # half-spaces such as {x <= y} slice each of them, so the definition
    # yields a strictly finer fan with 24 simplicial cones.  The shortcut
    # is only reliable in the plane.
    from torquot.fans import fan_morphism_check
    direct = build_quotient_fan(build_setup(simplex(3), 2))
    shortcut = quotient_fan_via_m2_lemma(simplex(3))
    assert len(shortcut.maximal_cones) == 12
    assert len(direct.maximal_cones) == 24
    assert fan_morphism_check(direct, shortcut, identity_matrix(3)) is None
    assert fan_morphism_check(shortcut, direct, identity_matrix(3)) is not None


def test_m2_lemma_f2_contains_singular_cone():
    fan = quotient_fan_via_m2_lemma(f2_polytope())
    assert fan.has_cone(Cone.from_rays([(1, 0), (1, 2)], ambient_dim=2))


def test_quotient_fan_segment_m4_permutohedron_count():
    qf = build_quotient_fan(build_setup(SEG, 4))
    assert len(qf.maximal_cones) == 24


# --------------------------------------------------------- family fans


def test_r_fan_m1_is_base_fan():
    s = build_setup(TRI, 1)
    assert build_r_fan(s) == s.sigma_p


def test_r_fan_segment_m2_hexagon_rays():
    rf = build_r_fan(build_setup(SEG, 2))
    assert len(rf.maximal_cones) == 6
    rays = {r for c in rf.maximal_cones for r in c.rays}
    assert rays == {(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)}


def test_r_fan_triangle_m2_count():
    rf = build_r_fan(build_setup(TRI, 2))
    assert len(rf.maximal_cones) == 36


@pytest.mark.property
@pytest.mark.parametrize("poly,m", [(SEG, 2), (SEG, 3), (TRI, 2)])
def test_r_fan_cones_project_to_members(poly, m):
    s = build_setup(poly, m)
    qfan = build_quotient_fan(s)
    rfan = build_r_fan(s, qfan)
    for c in rfan.all_cones():
        assert qfan.has_cone(cone_image(c, s.qmap))


# ----------------------------------------------------------- polytopes


def test_polytopes_segment_m2_hexagon():
    s = build_setup(SEG, 2)
    pols = build_polytopes(s)
    assert len(pols.r_poly.vertices) == 6
    shadow = map_polyhedron(s.smap, pols.r_poly.to_polyhedron(), out_dim=1)
    assert shadow.vertices == dilate(SEG.to_polyhedron(), 2).vertices


def test_polytopes_segment_m3_vertex_count():
    pols = build_polytopes(build_setup(SEG, 3))
    assert len(pols.r_poly.vertices) == 24


def test_polytopes_m1_returns_base():
    pols = build_polytopes(build_setup(TRI, 1))
    assert pols.r_poly.vertices == TRI.vertices


def test_polytopes_triangle_m2():
    pols = build_polytopes(build_setup(TRI, 2))
    assert len(pols.q_poly.vertices) == 6
    assert len(pols.r_poly.vertices) == 36


# -------------------------------------------------------- subdivisions


def brute_force_cells(poly, centers):
    """Independent tuple-by-tuple oracle for build_subdivision."""
    fan = normal_fan(poly)
    cones = fan.all_cones()
    d = poly.ambient_dim
    pieces = [[] for _ in centers]
    for idx, vi in enumerate(centers):
        for c in cones:
            ineqs, eqs = c._membership_h()
            shifted = Polyhedron.from_inequalities(
                [(a, -sum(x * y for x, y in zip(a, vi))) for a in ineqs],
                [(e, -sum(x * y for x, y in zip(e, vi))) for e in eqs],
                ambient_dim=d,
            )
            pieces[idx].append((c.key(), shifted))
    found = {}
    def rec(i, acc, label):
        if i == len(centers):
            found.setdefault(acc, set()).add(label)
            return
        for key, piece in pieces[i]:
            nxt = intersect_polyhedra(acc, piece)
            if not nxt.is_empty():
                rec(i + 1, nxt, label + (key,))
    rec(0, Polyhedron.from_inequalities([], [], ambient_dim=d), ())
    return found


@pytest.mark.property
def test_subdivision_matches_brute_force_oracle():
    import random
    rng = random.Random(4)
    for _ in range(6):
        v = tuple(tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(2))
        sub = build_subdivision(TRI, v)
        oracle = brute_force_cells(TRI, [tuple(map(Fraction, vi)) for vi in v])
        got = {cell.polyhedron: set(cell.labels) for cell in sub.cells}
        assert got == oracle, v


@pytest.mark.property
def test_cell_label_bijection_fifty_random_vectors():
    # nonempty cells of the translated subdivision <-> product-cone
    # tuples whose shifted intersection they are, labels included; the
    # oracle enumerates every tuple independently of the builder
    import random
    rng = random.Random(20260815)
    runs = [(SEG, 3, 1)] * 25 + [(TRI, 2, 2)] * 25
    for poly, m, d in runs:
        v = tuple(tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(m))
        sub = build_subdivision(poly, v)
        oracle = brute_force_cells(poly, [tuple(map(Fraction, vi)) for vi in v])
        got = {cell.polyhedron: set(cell.labels) for cell in sub.cells}
        assert got == oracle, v


def test_subdivision_m1_zero_is_base_fan():
    sub = build_subdivision(TRI, [(0, 0)])
    fan = normal_fan(TRI)
    cones_as_polys = {c.polyhedron for c in sub.cells}
    assert len(cones_as_polys) == len(fan.all_cones())
    full = sub.cells_of_dim(2)
    assert len(full) == 3


def test_subdivision_f40_witness_cell():
    sub = build_subdivision(f40_polytope(), NONREDUCED_WITNESS_TUPLE)
    free = [
        c.polyhedron
        for c in sub.cells_of_dim(2)
        if c.polyhedron.is_bounded() and integer_point(c.polyhedron) is None
    ]
    assert len(free) == 1
    expected = {
        (Fraction(5), Fraction(5, 4)),
        (Fraction(5), Fraction(3, 2)),
        (Fraction(6), Fraction(3, 2)),
        (Fraction(6), Fraction(7, 4)),
    }
    assert set(free[0].vertices) == expected


def test_subdivision_cell_interiors_disjoint():
    sub = build_subdivision(TRI, ((0, 0), (-1, -2)))
    full = [c.polyhedron for c in sub.cells_of_dim(2)]
    for i, a in enumerate(full):
        for b in full[i + 1 :]:
            common = intersect_polyhedra(a, b)
            assert common.is_empty() or common.dim() < 2


def test_equivalence_translation_invariance():
    v = ((0, 0), (-1, -2), (-5, 0))
    w = tuple((a + 3, b - 2) for a, b in v)
    assert subdivisions_equivalent(TRI, v, w)


def test_equivalence_figure5_pair():
    v2, v3 = figure5_tuples()
    assert subdivisions_equivalent(TRI, v2, v3)


def test_inequivalence_m2_swap_example():
    assert not subdivisions_equivalent(TRI, ((0, 0), (-1, -2)), ((0, 0), (-2, -1)))


def test_equivalence_rejects_length_mismatch():
    with pytest.raises(ValueError):
        subdivisions_equivalent(TRI, ((0, 0),), ((0, 0), (1, 1)))


# ---------------------------------------------- placing vectors in fans


def test_cone_of_vector_zero_is_zero_cone():
    s = build_setup(TRI, 2)
    qf = build_quotient_fan(s)
    c = cone_of_vector(s, qf, ((0, 0), (0, 0)))
    assert c.dim() == 0


def test_cone_of_vector_segment_m3_interior():
    s = build_setup(SEG, 3)
    qf = build_quotient_fan(s)
    c = cone_of_vector(s, qf, ((0,), (1,), (2,)))
    assert c.is_full_dimensional()


def test_cone_of_vector_on_wall_returns_ray():
    # ((1,0),(0,0)) has difference (1,0), which is a wall of the sextant
    # fan: the result is the ray, not either adjacent maximal cone
    s = build_setup(TRI, 2)
    qf = build_quotient_fan(s)
    c = cone_of_vector(s, qf, ((1, 0), (0, 0)))
    assert c.rays == ((1, 0),) and c.dim() == 1


@pytest.mark.property
def test_equivalence_lemma_matches_cone_placement():
    import random
    s = build_setup(TRI, 2)
    qf = build_quotient_fan(s)
    rng = random.Random(99)
    for _ in range(25):
        v = tuple(tuple(rng.randint(-5, 5) for _ in range(2)) for _ in range(2))
        w = tuple(tuple(rng.randint(-5, 5) for _ in range(2)) for _ in range(2))
        same = cone_of_vector(s, qf, v) == cone_of_vector(s, qf, w)
        assert same == subdivisions_equivalent(TRI, v, w)


@pytest.mark.property
def test_local_quotient_cone_matches_fan_lookup():
    import random
    s = build_setup(TRI, 2)
    qf = build_quotient_fan(s)
    rng = random.Random(5)
    for _ in range(20):
        v = tuple(
            tuple(Fraction(rng.randint(-8, 8), rng.choice((1, 2))) for _ in range(2))
            for _ in range(2)
        )
        assert local_quotient_cone(s, v) == cone_of_vector(s, qf, v)


def test_local_quotient_cone_m1():
    s = build_setup(TRI, 1)
    assert local_quotient_cone(s, ((3, 4),)).dim() == 0


@settings(deadline=None, max_examples=15)
@given(
    st.lists(
        st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=2, max_size=2
    ),
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.integers(1, 4),
)
def test_cone_of_vector_shift_and_scale_invariant(vs, shift, scale):
    s = build_setup(TRI, 2)
    qf = build_quotient_fan(s)
    v = tuple(tuple(p) for p in vs)
    c0 = cone_of_vector(s, qf, v)
    shifted = tuple((a + shift[0], b + shift[1]) for a, b in v)
    assert cone_of_vector(s, qf, shifted) == c0
    scaled = tuple((a * scale, b * scale) for a, b in v)
    assert cone_of_vector(s, qf, scaled) == c0
