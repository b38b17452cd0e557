import re
from fractions import Fraction

import pytest

from conic import render_svg_2d
from conic.chambers import canonical_class, chamber_of, chamber_witness
from conic.errors import InputError, UnsupportedOperationError
from conic.svg import _class_color, drawn_chambers

WINDOW = (Fraction(-2), Fraction(2), Fraction(-2), Fraction(2))


def fills(doc):
    return re.findall(r'<polygon points="[^"]*" fill="(hsl[^"]*)"', doc)


def test_byte_determinism(quadric):
    assert render_svg_2d(quadric, WINDOW) == render_svg_2d(quadric, WINDOW)


def test_two_alternating_colors(quadric):
    doc = render_svg_2d(quadric, WINDOW)
    assert len(set(fills(doc))) == 2


def test_orthant_single_color(orthant2):
    doc = render_svg_2d(orthant2, (-1, 1, -1, 1))
    assert len(set(fills(doc))) == 1


def test_cyclic_window_three_colors(cyclic):
    doc = render_svg_2d(cyclic, (-1, 0, -1, 0))
    assert len(set(fills(doc))) == 3


def test_drawn_chambers_classify_to_their_color(quadric, cyclic):
    for spec in (quadric, cyclic):
        for c, poly in drawn_chambers(spec, WINDOW):
            w = chamber_witness(spec, c)
            assert chamber_of(spec, w) == c
            rep = canonical_class(spec, c)
            assert _class_color(rep) == _class_color(
                canonical_class(spec, chamber_of(spec, w)))


def test_polygons_are_counterclockwise_and_inside(quadric):
    for c, poly in drawn_chambers(quadric, WINDOW):
        area2 = sum(poly[i][0] * poly[(i + 1) % len(poly)][1]
                    - poly[(i + 1) % len(poly)][0] * poly[i][1]
                    for i in range(len(poly)))
        assert area2 > 0
        for x, y in poly:
            assert -2 <= x <= 2
            assert -2 <= y <= 2


def test_lattice_dots_and_orientation(quadric):
    doc = render_svg_2d(quadric, WINDOW)
    assert doc.count("<circle") == 25  # 5 x 5 integer points
    assert 'viewBox="-2.000 -2.000 4.000 4.000"' in doc
    assert "-0.000" not in doc


def test_rank_requirement(square):
    with pytest.raises(UnsupportedOperationError):
        render_svg_2d(square, WINDOW)


def test_window_validation(quadric):
    with pytest.raises(InputError):
        render_svg_2d(quadric, (1, -1, 0, 2))
    with pytest.raises(InputError):
        render_svg_2d(quadric, (0, 1, 0))
