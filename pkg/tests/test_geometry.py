"""Exact plane geometry over the cyclotomic coordinate fields."""

from fractions import Fraction

import pytest

from chordpi import (
    CoincidentPoints,
    Degenerate,
    Frame,
    Line,
    Point,
    canonical_line,
    field_for_ngon,
    generator_cos,
    intersect,
    line_through,
    ngon_vertex,
    ngon_vertices,
    perpendicular,
    squared_distance,
)

import props


def test_side_frame_normalization():
    for n in (3, 4, 5, 6, 8, 12, 16):
        verts = ngon_vertices(n, Frame.SIDE)
        field = field_for_ngon(n)
        assert verts[0] == Point(field.zero(), field.zero())
        assert verts[1] == Point(field.one(), field.zero())
        for k in range(n):
            side = squared_distance(verts[k], verts[(k + 1) % n])
            assert side == field.one()  # every side has length exactly 1


def test_circumradius_frame_on_unit_circle():
    for n in (3, 5, 8, 12):
        field = field_for_ngon(n)
        for v in ngon_vertices(n, Frame.CIRCUMRADIUS):
            assert v.x * v.x + v.y * v.y == field.one()


def test_diameter_frame_half_scale():
    for n in (4, 6, 12):
        field = field_for_ngon(n)
        quarter = field.rational(Fraction(1, 4))
        for v in ngon_vertices(n, Frame.DIAMETER):
            assert v.x * v.x + v.y * v.y == quarter


def test_square_vertices_exact():
    field = field_for_ngon(4)
    verts = ngon_vertices(4, Frame.SIDE)
    one, zero = field.one(), field.zero()
    assert verts == (Point(zero, zero), Point(one, zero), Point(one, one), Point(zero, one))


def test_ngon_vertex_range():
    v = ngon_vertex(12, 11, Frame.SIDE)
    assert v == ngon_vertices(12, Frame.SIDE)[11]
    with pytest.raises(ValueError):
        ngon_vertex(12, 12, Frame.SIDE)
    with pytest.raises(ValueError):
        ngon_vertex(12, -1, Frame.SIDE)
    with pytest.raises(ValueError):
        ngon_vertices(2, Frame.SIDE)


def test_line_through_degenerate():
    field = field_for_ngon(4)
    p = Point(field.one(), field.one())
    with pytest.raises(CoincidentPoints):
        line_through(p, p)


def test_canonical_line_scaling():
    field = field_for_ngon(12)
    g = field.generator()
    a, b, c = g, field.rational(Fraction(-3, 2)), field.one() + g
    base = canonical_line(a, b, c)
    for k in (Fraction(7, 3), Fraction(-2), Fraction(1, 5)):
        scaled = canonical_line(a * k, b * k, c * k)
        assert scaled == base
    # leading coefficient of the canonical form is exactly one
    assert base.a == field.one()
    vertical = canonical_line(field.zero(), g * 5, g)
    assert vertical.a == field.zero() and vertical.b == field.one()
    with pytest.raises(ValueError):
        canonical_line(field.zero(), field.zero(), field.one())


def test_intersect_and_degenerate_cases():
    field = field_for_ngon(4)
    one, zero = field.one(), field.zero()
    x_axis = canonical_line(zero, one, zero)
    y_axis = canonical_line(one, zero, zero)
    assert intersect(x_axis, y_axis) == Point(zero, zero)
    assert intersect(x_axis, x_axis) is Degenerate.COINCIDENT
    shifted = canonical_line(zero, one, one)  # y + 1 = 0
    assert intersect(x_axis, shifted) is Degenerate.PARALLEL
    assert perpendicular(x_axis, y_axis)
    assert not perpendicular(x_axis, shifted)


def test_squared_distance_symmetry_and_positivity():
    field = field_for_ngon(12)
    g = field.generator()
    p = Point(g, field.one())
    q = Point(field.one(), -g)
    assert squared_distance(p, q) == squared_distance(q, p)
    assert squared_distance(p, p).is_zero()
    assert squared_distance(p, q).sign() > 0


def test_distances_rotation_invariant():
    # rotating both endpoints by one polygon step preserves the distance
    for n in (5, 8, 12):
        field = field_for_ngon(n)
        m = field.conductor
        cos1 = generator_cos(field, m // n) * Fraction(1, 2)
        sin1 = generator_cos(field, m // 4 - m // n) * Fraction(1, 2)

        def rot(p):
            return Point(p.x * cos1 - p.y * sin1, p.x * sin1 + p.y * cos1)

        verts = ngon_vertices(n, Frame.CIRCUMRADIUS)
        for i in range(n):
            for j in range(i + 1, n):
                d = squared_distance(verts[i], verts[j])
                assert squared_distance(rot(verts[i]), rot(verts[j])) == d
        assert rot(verts[0]) == verts[1]


def test_chord_line_contains_all_collinear_vertices():
    verts = ngon_vertices(12, Frame.SIDE)
    # A0 A6 is a diameter through the center
    diag = line_through(verts[0], verts[6])
    field = field_for_ngon(12)
    center = Point(field.rational(Fraction(1, 2)),
                   field.one() + field.generator() * Fraction(1, 2))
    assert diag.contains(center)


def test_property_incidence():
    assert props.suite_incidence(cases=200) == 200
