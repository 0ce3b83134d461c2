"""End-to-end acceptance: one test per numbered criterion, in order.

Every test measures its own runtime, drops a PASS/FAIL line into the
session criteria log (echoed in the terminal summary), and then asserts
the criterion's stated values exactly — no tolerances, no weakening.

Four criteria are recorded as honest failures.  Criteria 1 and 2 pin the
computed family fan of two triangle points against the 36-row reference
listing frozen in ``presets.TABLE1_ROWS``; ten of the printed rows are
not cones of the computed fan (each equals another printed row's ray set
plus one extra ray, so the printed rows contain nested pairs and cannot
all be maximal cones of one fan), which also shifts the shape summary
from the stated 24 simplicial + 12 five-ray to the computed 30 + 6.
Criteria 5 and 6 compare the two-point quotient fan of the tetrahedron
with the mirror-refinement shortcut and with the star-subdivision
blow-up fan: the directly refined fan has 24 maximal cones and strictly
refines both 12-cone fans, so equality fails in dimension 3 while every
planar and one-dimensional case agrees.  The assertion messages carry
the analysis; the constructions themselves are not touched.
"""

import random
import subprocess
import sys
import time
from math import factorial
from pathlib import Path

import pytest

from torquot.checks import (
    check_blowup_comparison,
    check_forgetful,
    check_hexagon_remark,
    check_losev_manin_iso,
    check_nonrecursion_contrast,
    check_r_cayley_structure,
    check_reduced_fibers,
    nonreduced_witness_from_vector,
    verify_generalized_cayley,
)
from torquot.fans import fan_report, realize_polytope
from torquot.kernel.cones import Cone, is_smooth_cone
from torquot.kernel.intlinalg import smith_normal_form_diagonal
from torquot.kernel.polyhedra import integer_point, map_polyhedron
from torquot.presets import (
    FIGURE5_FORGETFUL_WITNESS,
    NONREDUCED_WITNESS_TUPLE,
    TABLE1_ROWS,
    cayley_example,
    f2_polytope,
    f40_polytope,
    random_lattice_polygon,
    simplex,
)
from torquot.quotient import (
    build_polytopes,
    build_quotient_fan,
    build_r_fan,
    build_setup,
    build_subdivision,
    quotient_fan_via_m2_lemma,
)
from torquot.serialize import format_signed_digits

pytestmark = pytest.mark.acceptance

REPO_ROOT = Path(__file__).resolve().parents[1]


def _note(log, num, ok, text):
    log[num] = ("PASS" if ok else "FAIL", text)


def test_criterion_01_family_fan_rows(criteria_log):
    t0 = time.perf_counter()
    rfan = build_r_fan(build_setup(simplex(2), 2))
    dt = time.perf_counter() - t0
    computed = {
        frozenset(format_signed_digits(r) for r in c.rays)
        for c in rfan.maximal_cones
    }
    reference = {frozenset(row) for _, row in TABLE1_ROWS}
    missing = sorted(n for n, row in TABLE1_ROWS if frozenset(row) not in computed)
    extra = sorted(sorted(s) for s in computed - reference)
    ok = (len(rfan.maximal_cones) == 36 and len(computed) == 36
          and computed == reference and dt < 30)
    _note(criteria_log, 1, ok,
          f"family fan of 2 triangle points: {len(rfan.maximal_cones)} cones "
          f"in {dt:.1f}s; {36 - len(missing)}/36 reference rows realized")
    assert len(rfan.maximal_cones) == 36
    assert dt < 30, f"family fan build took {dt:.1f}s"
    assert computed == reference, (
        "the computed family fan realizes only "
        f"{36 - len(missing)} of the 36 reference rows.  Unrealized rows: "
        f"{missing}.  Each of those rows is another printed row's ray set "
        "plus one extra ray (nested pairs 14<20, 16<22, 17<23, 18<24, "
        "19<25, 32<1, 33<2, 34<5, 35<6, 36<7), so the printed collection "
        "contains cones strictly containing other listed cones and cannot "
        "be the maximal-cone list of any fan.  Computed maximal cones with "
        f"no printed row: {extra}"
    )


def test_criterion_02_family_fan_shape(criteria_log):
    rep = fan_report(build_r_fan(build_setup(simplex(2), 2)))
    hist = dict(rep.ray_count_histogram)
    ok = (rep.num_maximal == 36 and rep.num_simplicial == 24
          and hist.get(5, 0) == 12)
    _note(criteria_log, 2, ok,
          f"family-fan shape: computed {rep.num_simplicial} simplicial + "
          f"{hist.get(5, 0)} five-ray of {rep.num_maximal}; stated 24 + 12")
    assert rep.num_maximal == 36
    assert (rep.num_simplicial, hist.get(5, 0)) == (24, 12), (
        f"computed split is {rep.num_simplicial} simplicial (four-ray) + "
        f"{hist.get(5, 0)} five-ray maximal cones, f-vector {rep.f_vector}; "
        "the stated 24 + 12 matches the printed reference rows, ten of "
        "which are not cones of the computed fan (see criterion 1)"
    )


def test_criterion_03_quotient_fan_count(criteria_log):
    t0 = time.perf_counter()
    qfan = build_quotient_fan(build_setup(simplex(2), 3))
    dt = time.perf_counter() - t0
    n = len(qfan.maximal_cones)
    ok = n == 108 and dt < 600
    _note(criteria_log, 3, ok,
          f"quotient fan of 3 triangle points: {n} maximal cones in {dt:.1f}s")
    assert n == 108
    assert dt < 600, f"build took {dt:.1f}s"


def test_criterion_04_segment_tower(criteria_log):
    seg = simplex(1)
    t0 = time.perf_counter()
    counts = {}
    for m in (2, 3):
        rep = check_losev_manin_iso(m)
        assert rep.verdict == "pass", rep
        assert rep.details["quotient_maximal"] == rep.details["family_maximal"]
        counts[m] = rep.details["quotient_maximal"]
    vertex_counts = {}
    for m in range(1, 6):
        poly = realize_polytope(build_quotient_fan(build_setup(seg, m)))
        vertex_counts[m] = len(poly.vertices)
    dt = time.perf_counter() - t0
    ok = (counts == {2: 6, 3: 24}
          and vertex_counts == {m: factorial(m) for m in range(1, 6)}
          and dt < 60)
    _note(criteria_log, 4, ok,
          f"segment: drop-a-point iso m=2,3 ({counts[2]}, {counts[3]} cones); "
          f"realized polytopes have m! vertices up to m=5 ({dt:.1f}s)")
    assert counts == {2: 6, 3: 24}
    assert vertex_counts == {m: factorial(m) for m in range(1, 6)}
    assert dt < 60, f"criterion took {dt:.1f}s"


def test_criterion_05_two_point_shortcut(criteria_log):
    cases = [
        ("triangle", simplex(2)),
        ("tetrahedron", simplex(3)),
        ("f2", f2_polytope()),
        ("f40", f40_polytope()),
    ]
    cases += [(f"random-{s}", random_lattice_polygon(s)) for s in range(1, 21)]
    t0 = time.perf_counter()
    mismatches = []
    for name, P in cases:
        direct = build_quotient_fan(build_setup(P, 2))
        short = quotient_fan_via_m2_lemma(P)
        if direct != short:
            mismatches.append(
                (name, len(direct.maximal_cones), len(short.maximal_cones)))
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < 120
    _note(criteria_log, 5, ok,
          f"two-point shortcut: {len(cases) - len(mismatches)}/{len(cases)} "
          f"polytopes agree in {dt:.1f}s"
          + "".join(f"; {n} disagrees ({a} vs {b})" for n, a, b in mismatches))
    assert dt < 120, f"criterion took {dt:.1f}s"
    assert not mismatches, (
        f"direct vs shortcut disagree on {mismatches} "
        "(name, direct maximal, shortcut maximal).  The direct fan is the "
        "common refinement of the projections of ALL member cones of the "
        "squared fan; on the tetrahedron it has 24 maximal cones and "
        "strictly refines the 12-cone mirror refinement (every shortcut "
        "cone is a union of direct cones).  All one- and two-dimensional "
        "inputs agree, so the discrepancy is specific to dimension >= 3 "
        "where projected faces of product cones slice the mirror chambers."
    )


def test_criterion_06_blowup_comparison(criteria_log):
    reports = {d: check_blowup_comparison(d) for d in (1, 2, 3)}
    counts = {}
    for d, rep in reports.items():
        counts[d] = rep.details.get("maximal",
                                    rep.details.get("quotient_maximal"))
    all_pass = all(r.verdict == "pass" for r in reports.values())
    ok = all_pass and counts == {1: 2, 2: 6, 3: 12}
    _note(criteria_log, 6, ok,
          "simplex blow-up fans: "
          + "; ".join(
              f"d={d} {reports[d].verdict} ({counts[d]} cones)"
              for d in (1, 2, 3)))
    assert reports[1].verdict == "pass" and counts[1] == 2
    assert reports[2].verdict == "pass" and counts[2] == 6
    r3 = reports[3]
    assert r3.verdict == "pass" and counts[3] == 12, (
        f"d=3: quotient fan has {r3.details['quotient_maximal']} maximal "
        f"cones vs {r3.details['star_maximal']} in the star-subdivision "
        f"fan; quotient smooth={r3.details['quotient_smooth']}, "
        f"star smooth={r3.details['star_smooth']}, and the quotient fan "
        f"refines the star fan: {r3.details['quotient_refines_star']}.  "
        "Both fans are smooth with the same rays; the direct common "
        "refinement subdivides each star cone further (24 = 2 x 12), for "
        "the same reason as the shortcut mismatch in criterion 5."
    )


def test_criterion_07_singular_cone(criteria_log):
    qfan = build_quotient_fan(build_setup(f2_polytope(), 2))
    target = Cone.from_rays([(1, 0), (1, 2)], ambient_dim=2)
    member = any(c == target for c in qfan.all_cones())
    smooth = is_smooth_cone(target)
    index = 1
    for dgn in smith_normal_form_diagonal(target.rays):
        index *= dgn
    ok = member and not smooth and index == 2
    _note(criteria_log, 7, ok,
          f"cone <e1, e1+2e2> in the two-point fan: member={member}, "
          f"smooth={smooth}, lattice index {index}")
    assert member, "the cone is not a member of the quotient fan"
    assert not smooth
    assert index == 2


def test_criterion_08_nonreduced_witness(criteria_log):
    P = f40_polytope()
    v = NONREDUCED_WITNESS_TUPLE
    t0 = time.perf_counter()
    sub = build_subdivision(P, v)
    free2 = [
        c.polyhedron for c in sub.cells_of_dim(2)
        if c.polyhedron.is_bounded() and integer_point(c.polyhedron) is None
    ]
    wit = nonreduced_witness_from_vector(P, v)
    fib = check_reduced_fibers(build_setup(P, 4), mode="witness", vector=v)
    dt = time.perf_counter() - t0
    from fractions import Fraction
    expected = {
        (Fraction(5), Fraction(5, 4)),
        (Fraction(5), Fraction(3, 2)),
        (Fraction(6), Fraction(3, 2)),
        (Fraction(6), Fraction(7, 4)),
    }
    ok = (len(free2) == 1 and set(free2[0].vertices) == expected
          and wit.verdict == "witness" and fib.verdict == "witness"
          and dt < 10)
    _note(criteria_log, 8, ok,
          f"witness tuple: {len(free2)} integer-free bounded 2-cell, "
          f"reduced-fibers verdict {fib.verdict!r} ({dt:.1f}s)")
    assert len(free2) == 1, [p.vertices for p in free2]
    assert set(free2[0].vertices) == expected
    assert wit.verdict == "witness"
    assert fib.verdict == "witness"
    assert dt < 10, f"criterion took {dt:.1f}s"


def test_criterion_09_reduced_cases(criteria_log):
    t0 = time.perf_counter()
    for d, m in [(1, 2), (1, 3), (1, 4), (2, 2)]:
        rep = check_reduced_fibers(build_setup(simplex(d), m))
        assert rep.verdict == "pass", (d, m, rep)
    rng = random.Random(20260815)
    tri = simplex(2)
    bad = []
    for _ in range(500):
        v = tuple(tuple(rng.randint(-6, 6) for _ in range(2)) for _ in range(3))
        if nonreduced_witness_from_vector(tri, v).verdict != "pass":
            bad.append(v)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    _note(criteria_log, 9, ok,
          "reduced fibers: 4 cone-wise certificates pass, 500 random "
          f"3-point scans over the triangle find no integer-free cell "
          f"({dt:.1f}s)")
    assert not bad, bad[:5]
    assert dt < 600, f"criterion took {dt:.1f}s"


def test_criterion_10_hexagon(criteria_log):
    rep = check_hexagon_remark()
    signs = rep.details["image_signs"]
    ok = (rep.verdict == "pass"
          and signs == ("nonneg", "nonpos", "nonpos", "nonpos",
                        "nonneg", "nonneg")
          and rep.details["morphism_ok"] and rep.details["hull_is_hexagon"])
    _note(criteria_log, 10, ok,
          "hexagon cones map 3+3 onto the half-lines "
          f"({','.join(s[-3:] for s in signs)}); morphism "
          f"{rep.details['morphism_ok']}")
    assert rep.verdict == "pass", rep
    assert signs == ("nonneg", "nonpos", "nonpos", "nonpos",
                     "nonneg", "nonneg")
    assert rep.details["morphism_ok"] is True
    assert rep.details["hull_is_hexagon"] is True


def test_criterion_11_cayley_projections(criteria_log):
    r_list, pi = cayley_example()
    rep = verify_generalized_cayley(r_list, pi)
    ok = (rep.verdict == "pass"
          and rep.details["images"] == ((-3,), (0,), (3,))
          and rep.details["image_polytope_vertices"] == ((-3,), (3,)))
    _note(criteria_log, 11, ok,
          "weighted projections land at -3, 0, 3; image segment [-3, 3]")
    assert rep.verdict == "pass", rep
    assert rep.details["images"] == ((-3,), (0,), (3,))
    assert rep.details["image_polytope_vertices"] == ((-3,), (3,))


def test_criterion_12_cayley_structure(criteria_log):
    fibres = {}
    for d, m in [(1, 2), (1, 3), (2, 2)]:
        setup = build_setup(simplex(d), m)
        rep = check_r_cayley_structure(setup)
        assert rep.verdict == "pass", (d, m, rep)
        fibres[(d, m)] = rep.details["fibre_count"]
        # the sum map collapses the total-space polytope exactly onto
        # the m-fold dilation, asserted here independently of the check
        shadow = map_polyhedron(
            setup.smap, build_polytopes(setup).r_poly.to_polyhedron(),
            out_dim=setup.d)
        dil = setup.P.dilate(m).to_polyhedron()
        assert shadow.vertices == dil.vertices, (d, m)
        assert rep.details["dilation_vertices"] == dil.vertices
    ok = fibres == {(1, 2): 3, (1, 3): 4, (2, 2): 6}
    _note(criteria_log, 12, ok,
          "twisted Cayley structure holds; sum map hits the dilation "
          f"exactly (fibre points {sorted(fibres.values())})")
    assert fibres == {(1, 2): 3, (1, 3): 4, (2, 2): 6}


def test_criterion_13_nonrecursion(criteria_log):
    rep = check_nonrecursion_contrast()
    ok = (rep.verdict == "pass"
          and rep.details["family_maximal"] == 36
          and rep.details["quotient_maximal"] == 108
          and rep.details["isomorphic"] is False)
    _note(criteria_log, 13, ok,
          f"one report: {rep.details['family_maximal']} family vs "
          f"{rep.details['quotient_maximal']} quotient maximal cones")
    assert rep.verdict == "pass", rep
    assert rep.details["family_maximal"] == 36
    assert rep.details["quotient_maximal"] == 108
    assert rep.details["isomorphic"] is False


def test_criterion_14_forgetful(criteria_log):
    seg = simplex(1)
    t0 = time.perf_counter()
    for m in (1, 2, 3):
        for i in range(1, m + 2):
            rep = check_forgetful(seg, m, i, mode="image")
            assert rep.verdict == "pass", (m, i, rep)
    w = FIGURE5_FORGETFUL_WITNESS
    wrep = check_forgetful(simplex(2), 3, w["drop"], mode="witness",
                           v=w["v"], u=w["u"])
    dt = time.perf_counter() - t0
    ok = (wrep.verdict == "witness"
          and wrep.witnesses[0]["kind"] == "proper-subcone-image")
    _note(criteria_log, 14, ok,
          "forgetful images are member cones (segment, m<=3, every i); "
          f"triangle witness: {wrep.witnesses[0]['kind']} ({dt:.1f}s)")
    assert wrep.verdict == "witness", wrep
    assert wrep.witnesses[0]["kind"] == "proper-subcone-image"


def test_criterion_15_property_suite(criteria_log):
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "tests", "-m", "property",
         "-q", "-p", "no:cacheprovider"],
        cwd=REPO_ROOT, capture_output=True, text=True)
    dt = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else ""
    ok = proc.returncode == 0 and dt < 900
    _note(criteria_log, 15, ok,
          f"invariant & property suite: {tail} ({dt:.1f}s)")
    assert proc.returncode == 0, (
        f"property suite failed ({dt:.1f}s):\n"
        + proc.stdout[-3000:] + proc.stderr[-1500:])
    assert dt < 900, f"property suite took {dt:.1f}s"
