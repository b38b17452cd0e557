"""Deterministic SVG rendering of rank-2 chamber decompositions.

Chambers meeting the window are filled with a color derived from the
hash of their class representative, hyperplane levels are drawn on top,
then the lattice points.  All geometry is computed exactly; numbers are
only rounded at the final formatting step, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from functools import cmp_to_key
from itertools import product

from .chambers import canonical_class, is_feasible
from .cone import ConeSpec
from .errors import InputError, UnsupportedOperationError
from .ratgeom import IntVec, dot


def _fmt(x) -> str:
    s = f"{float(x):.3f}"
    return "0.000" if s == "-0.000" else s


def _class_color(rep: IntVec) -> str:
    blob = json.dumps(list(rep)).encode("ascii")
    h = int.from_bytes(hashlib.sha256(blob).digest()[:4], "big") % 360
    return f"hsl({h},62%,72%)"


def _corners(window):
    x0, x1, y0, y1 = window
    return ((x0, y0), (x0, y1), (x1, y0), (x1, y1))


def _line_point(a, b, ka, kb):
    # Intersection of a.x = ka with b.x = kb, or None when parallel.
    den = a[0] * b[1] - a[1] * b[0]
    if den == 0:
        return None
    x = Fraction(ka * b[1] - kb * a[1], den)
    y = Fraction(a[0] * kb - b[0] * ka, den)
    return (x, y)


def _inside(spec: ConeSpec, c, window, pt) -> bool:
    x0, x1, y0, y1 = window
    if not (x0 <= pt[0] <= x1 and y0 <= pt[1] <= y1):
        return False
    for n, ci in zip(spec.normals, c):
        v = dot(pt, n)
        if v > ci or v < ci - 1:
            return False
    return True


def _ccw_sorted(points):
    n = len(points)
    cx = sum(p[0] for p in points) / n
    cy = sum(p[1] for p in points) / n

    def quad(dx, dy):
        if dx > 0 and dy >= 0:
            return 0
        if dx <= 0 and dy > 0:
            return 1
        if dx < 0 and dy <= 0:
            return 2
        return 3

    def cmp(a, b):
        da = (a[0] - cx, a[1] - cy)
        db = (b[0] - cx, b[1] - cy)
        qa, qb = quad(*da), quad(*db)
        if qa != qb:
            return -1 if qa < qb else 1
        cross = da[0] * db[1] - da[1] * db[0]
        if cross != 0:
            return -1 if cross > 0 else 1
        ra = da[0] * da[0] + da[1] * da[1]
        rb = db[0] * db[0] + db[1] * db[1]
        return -1 if ra < rb else (1 if ra > rb else 0)

    return sorted(points, key=cmp_to_key(cmp))


def _area2(points) -> Fraction:
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def drawn_chambers(spec: ConeSpec, window):
    """Chambers whose closure meets the window, with clipped polygons.

    Returns a lex-sorted list of (ceiling vector, vertex list); vertices
    are exact and counterclockwise.
    """
    x0, x1, y0, y1 = window
    ranges = []
    for n in spec.normals:
        vals = [dot(pt, n) for pt in _corners(window)]
        ranges.append(range(math.ceil(min(vals)), math.ceil(max(vals)) + 1))
    box_lines = (
        ((1, 0), x0), ((1, 0), x1), ((0, 1), y0), ((0, 1), y1))
    out = []
    for c in product(*ranges):
        if not is_feasible(spec, c):
            continue
        lines = list(box_lines)
        for n, ci in zip(spec.normals, c):
            lines.append((n, Fraction(ci)))
            lines.append((n, Fraction(ci - 1)))
        pts = set()
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                pt = _line_point(lines[i][0], lines[j][0],
                                 lines[i][1], lines[j][1])
                if pt is not None and _inside(spec, c, window, pt):
                    pts.add(pt)
        if len(pts) < 3:
            continue
        poly = _ccw_sorted(list(pts))
        if _area2(poly) == 0:
            continue
        out.append((c, poly))
    return sorted(out, key=lambda item: item[0])


def _level_segment(n, k, window):
    x0, x1, y0, y1 = window
    pts = set()
    a, b = n
    if b != 0:
        for xe in (x0, x1):
            y = Fraction(k - a * xe, b)
            if y0 <= y <= y1:
                pts.add((Fraction(xe), y))
    if a != 0:
        for ye in (y0, y1):
            x = Fraction(k - b * ye, a)
            if x0 <= x <= x1:
                pts.add((x, Fraction(ye)))
    if len(pts) < 2:
        return None
    pts = sorted(pts)
    return pts[0], pts[-1]


def render_svg_2d(spec: ConeSpec, window) -> str:
    """Render the chamber decomposition over a rational window.

    window is (x0, x1, y0, y1); output is a standalone SVG document,
    byte-identical across runs for equal inputs.
    """
    if spec.rank != 2:
        raise UnsupportedOperationError("SVG rendering needs a rank-2 cone")
    if len(window) != 4:
        raise InputError("window must be x0, x1, y0, y1")
    x0, x1, y0, y1 = (Fraction(w) for w in window)
    if x0 >= x1 or y0 >= y1:
        raise InputError("window must have positive width and height")
    window = (x0, x1, y0, y1)
    width = x1 - x0
    height = y1 - y0
    sw = width / 256
    parts = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="640" height="{int(640 * height / width)}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(width)} {_fmt(height)}">')
    parts.append(
        f'<rect x="{_fmt(x0)}" y="{_fmt(-y1)}" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="#ffffff"/>')
    for c, poly in drawn_chambers(spec, window):
        rep = canonical_class(spec, c)
        points = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in poly)
        parts.append(
            f'<polygon points="{points}" fill="{_class_color(rep)}" '
            f'stroke="none"/>')
    for n in spec.normals:
        vals = [dot(pt, n) for pt in _corners(window)]
        for k in range(math.ceil(min(vals)), math.floor(max(vals)) + 1):
            seg = _level_segment(n, k, window)
            if seg is None:
                continue
            (ax, ay), (bx, by) = seg
            parts.append(
                f'<line x1="{_fmt(ax)}" y1="{_fmt(-ay)}" x2="{_fmt(bx)}" '
                f'y2="{_fmt(-by)}" stroke="#333333" '
                f'stroke-width="{_fmt(sw)}"/>')
    r = width / 120
    for xi in range(math.ceil(x0), math.floor(x1) + 1):
        for yi in range(math.ceil(y0), math.floor(y1) + 1):
            parts.append(
                f'<circle cx="{_fmt(xi)}" cy="{_fmt(-yi)}" r="{_fmt(r)}" '
                f'fill="#111111"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
