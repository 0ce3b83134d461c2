"""Planar pictures of translated-fan subdivisions.

:func:`render_svg_subdivision` draws a 2-dimensional :class:`Subdivision`
into a rational viewing window: cell boundaries clipped to the window,
the marked points ``-v_i`` labeled ``1..m``, cells without integer points
shaded, and (optionally) the integer grid.

Every emitted coordinate is exact.  When all denominators divide a power
of ten the numbers are written as plain decimals; otherwise the whole
drawing is scaled by the lcm of the denominators so that geometry becomes
integral, and the viewBox absorbs the scale.  Either way the output is a
pure function of the input bytes-for-bytes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import ceil, floor, gcd

from .kernel.polyhedra import Polyhedron, integer_point
from .quotient import Subdivision

# style scalars, in lattice units; each is a dyadic/pentadic rational so it
# stays decimal-exact after scaling by any integer
_STROKE_CELL = Fraction(1, 40)
_STROKE_FREE = Fraction(1, 25)
_R_GRID = Fraction(9, 200)
_R_FREE = Fraction(3, 40)
_R_CENTER = Fraction(9, 100)
_LABEL_SHIFT = Fraction(3, 25)
_FONT_SIZE = Fraction(8, 25)

_FILL_SHADED = "#c9c9df"
_COLOR_FREE = "#4444aa"
_COLOR_CELL = "#222222"
_COLOR_GRID = "#9b9b9b"


def _coerce_window(window):
    try:
        (x0, x1), (y0, y1) = window
    except (TypeError, ValueError):
        raise ValueError(
            "window must be ((xmin, xmax), (ymin, ymax))"
        ) from None
    x0, x1, y0, y1 = (Fraction(t) for t in (x0, x1, y0, y1))
    if not (x0 < x1 and y0 < y1):
        raise ValueError("window must have positive width and height")
    return x0, x1, y0, y1


def _clip(poly: Polyhedron, box_rows) -> Polyhedron:
    return Polyhedron.from_inequalities(
        tuple(poly.inequalities) + box_rows, poly.equalities, 2
    )


def _ccw(vertices):
    """Vertices of a convex polygon in counter-clockwise order."""
    n = len(vertices)
    cx = sum((v[0] for v in vertices), Fraction(0)) / n
    cy = sum((v[1] for v in vertices), Fraction(0)) / n

    def half(d):
        return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1

    def compare(u, v):
        du = (u[0] - cx, u[1] - cy)
        dv = (v[0] - cx, v[1] - cy)
        if half(du) != half(dv):
            return half(du) - half(dv)
        cross = du[0] * dv[1] - du[1] * dv[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(vertices, key=cmp_to_key(compare))


def _pow10_free(d: int) -> bool:
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    return d == 1


def _decimal(q: Fraction) -> str:
    """Exact decimal expansion; denominator must be of the form 2^a 5^b."""
    den = q.denominator
    k = 0
    while den % 2 == 0:
        den //= 2
        k += 1
    j = 0
    while den % 5 == 0:
        den //= 5
        j += 1
    assert den == 1, q
    k = max(k, j)
    n = int(q * 10**k)
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(k + 1, "0")
    if k == 0:
        return sign + digits
    whole, frac = digits[:-k], digits[-k:]
    frac = frac.rstrip("0")
    return sign + whole + ("." + frac if frac else "")


def render_svg_subdivision(s: Subdivision, window, grid: bool = True) -> str:
    """Render a planar subdivision as standalone SVG 1.1 text.

    ``window`` is ``((xmin, xmax), (ymin, ymax))`` with rational entries;
    everything outside it is cut away.  ``grid`` toggles the lattice dots.
    """
    if not isinstance(s, Subdivision):
        raise ValueError("expected a Subdivision")
    if s.base_dim != 2:
        raise ValueError(f"can only draw base dimension 2, got {s.base_dim}")
    x0, x1, y0, y1 = _coerce_window(window)
    box_rows = (
        ((Fraction(1), Fraction(0)), x0),
        ((Fraction(-1), Fraction(0)), -x1),
        ((Fraction(0), Fraction(1)), y0),
        ((Fraction(0), Fraction(-1)), -y1),
    )

    # gather drawing primitives in mathematical coordinates first; the
    # number format is decided once all coordinates are known
    shaded = []       # vertex loops of integer-free 2-cells
    outlines = []     # (vertex list, free?) per clipped cell, dims 2 and 1
    free_points = []  # isolated integer-free 0-cells
    for cell in s.cells:
        dim = cell.polyhedron.dim()
        free = integer_point(cell.polyhedron) is None
        clipped = _clip(cell.polyhedron, box_rows)
        if clipped.is_empty():
            continue
        verts = _ccw(clipped.vertices) if len(clipped.vertices) > 2 else list(clipped.vertices)
        if dim == 0:
            if free:
                free_points.append(verts[0])
            continue
        if len(verts) == 1:
            continue  # higher cell reduced to a point by the window
        if dim == 2 and free and len(verts) > 2:
            shaded.append(verts)
        outlines.append((verts, dim == 1 and free))

    marks = [(-v[0], -v[1]) for v in s.centers]
    dots = []
    if grid:
        for gx in range(ceil(x0), floor(x1) + 1):
            for gy in range(ceil(y0), floor(y1) + 1):
                dots.append((Fraction(gx), Fraction(gy)))

    pool = [x0, x1, y0, y1]
    for loop in shaded:
        pool += [c for p in loop for c in p]
    for verts, _ in outlines:
        pool += [c for p in verts for c in p]
    for p in free_points + marks:
        pool += [p[0], p[1], p[0] + _LABEL_SHIFT, p[1] + _LABEL_SHIFT]
    scale = 1
    if not all(_pow10_free(q.denominator) for q in pool):
        # scaled-integer mode: absorb every denominator so the geometry
        # becomes integral, and let the viewBox carry the scale
        for q in pool:
            scale = scale * q.denominator // gcd(scale, q.denominator)

    def num(q) -> str:
        return _decimal(Fraction(q) * scale)

    def pt(p) -> str:
        # svg's y axis points down; flip so the picture is math-oriented
        return f"{num(p[0])} {num(-p[1])}"

    def path(verts, close: bool) -> str:
        d = "M " + " L ".join(pt(p) for p in verts)
        return d + " Z" if close else d

    view = " ".join(num(v) for v in (x0, -y1, x1 - x0, y1 - y0))
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{view}">',
    ]
    if dots:
        out.append('<g fill="%s">' % _COLOR_GRID)
        for p in sorted(dots):
            out.append(
                f'<circle cx="{num(p[0])}" cy="{num(-p[1])}" r="{num(_R_GRID)}"/>'
            )
        out.append("</g>")
    if shaded:
        out.append(f'<g fill="{_FILL_SHADED}" stroke="none">')
        for loop in shaded:
            out.append(f'<path d="{path(loop, True)}"/>')
        out.append("</g>")
    out.append(
        f'<g fill="none" stroke="{_COLOR_CELL}" stroke-width="{num(_STROKE_CELL)}">'
    )
    for verts, free in outlines:
        extra = (
            f' stroke="{_COLOR_FREE}" stroke-width="{num(_STROKE_FREE)}"'
            if free
            else ""
        )
        out.append(f'<path d="{path(verts, len(verts) > 2)}"{extra}/>')
    out.append("</g>")
    if free_points:
        out.append(f'<g fill="{_COLOR_FREE}">')
        for p in free_points:
            out.append(
                f'<circle cx="{num(p[0])}" cy="{num(-p[1])}" r="{num(_R_FREE)}"/>'
            )
        out.append("</g>")
    out.append('<g fill="#000000">')
    for p in marks:
        out.append(
            f'<circle cx="{num(p[0])}" cy="{num(-p[1])}" r="{num(_R_CENTER)}"/>'
        )
    out.append("</g>")
    out.append(
        f'<g font-family="monospace" font-size="{num(_FONT_SIZE)}" fill="#000000">'
    )
    for i, p in enumerate(marks):
        tx = num(p[0] + _LABEL_SHIFT)
        ty = num(-(p[1] + _LABEL_SHIFT))
        out.append(f'<text x="{tx}" y="{ty}">{i + 1}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
