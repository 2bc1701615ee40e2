"""Exact planar geometry over field elements: points, lines, intersections.

Two coordinate frames are supported for the regular n-gon.  The side frame
puts vertex 0 at the origin and vertex 1 at (1, 0), so the unit of length is
the polygon side; vertices are partial sums of unit direction vectors, which
keeps every coordinate inside K_M without dividing by a side length.  The
circumradius frame puts vertex k at (cos(2*pi*k/n), sin(2*pi*k/n)); the
diameter frame halves that.

Lines are infinite (a chord line extends beyond its defining vertices) and
carry a canonical scaling so equality of lines is coefficient equality.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .numberfield import FieldElement, field_for_ngon, generator_cos


class CoincidentPoints(ValueError):
    """A line was requested through two exactly-equal points."""


class Frame(enum.Enum):
    """Unit of length for n-gon coordinates."""

    SIDE = "side"
    CIRCUMRADIUS = "circumradius"
    DIAMETER = "diameter"


@dataclass(frozen=True)
class Point:
    x: FieldElement
    y: FieldElement


@dataclass(frozen=True)
class Line:
    """a*x + b*y + c = 0 with the first nonzero of (a, b) scaled to 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement

    def evaluate(self, p: Point) -> FieldElement:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        return self.evaluate(p).is_zero()


class Degenerate(enum.Enum):
    """Non-point outcomes of intersecting two lines."""

    PARALLEL = "parallel"
    COINCIDENT = "coincident"


Parallel = Degenerate.PARALLEL
Coincident = Degenerate.COINCIDENT


def canonical_line(a: FieldElement, b: FieldElement, c: FieldElement) -> Line:
    """Scale so the first nonzero coefficient among (a, b) equals 1."""
    if a.is_zero() and b.is_zero():
        raise ValueError("degenerate line: a = b = 0")
    pivot = b if a.is_zero() else a
    inv = pivot.inverse()
    return Line(a * inv, b * inv, c * inv)


def line_through(p: Point, q: Point) -> Line:
    if p == q:
        raise CoincidentPoints(f"both points equal {p}")
    a = p.y - q.y
    b = q.x - p.x
    c = -(a * p.x + b * p.y)
    line = canonical_line(a, b, c)
    assert line.contains(p) and line.contains(q)
    return line


def intersect(l1: Line, l2: Line) -> Union[Point, Degenerate]:
    """Exact Cramer's rule; a zero determinant distinguishes parallel from
    coincident via canonical-form equality."""
    det = l1.a * l2.b - l2.a * l1.b
    if det.is_zero():
        return Coincident if l1 == l2 else Parallel
    inv = det.inverse()
    x = (l1.b * l2.c - l2.b * l1.c) * inv
    y = (l1.c * l2.a - l2.c * l1.a) * inv
    return Point(x, y)


def squared_distance(p: Point, q: Point) -> FieldElement:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def perpendicular(l1: Line, l2: Line) -> bool:
    return (l1.a * l2.a + l1.b * l2.b).is_zero()


@functools.lru_cache(maxsize=None)
def ngon_vertices(n: int, frame: Frame) -> tuple:
    """All n vertices as exact Points in K_lcm(n,4)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    field = field_for_ngon(n)
    m = field.conductor
    step = m // n
    quarter = m // 4
    # unit direction of edge k->k+1 is (cos(2*pi*k/n), sin(2*pi*k/n));
    # sin(t) = cos(pi/2 - t) turns both into generator cosines
    cosines = [generator_cos(field, k * step) * Fraction(1, 2) for k in range(n)]
    sines = [generator_cos(field, quarter - k * step) * Fraction(1, 2) for k in range(n)]
    if frame is Frame.SIDE:
        vertices = []
        x = field.zero()
        y = field.zero()
        for k in range(n):
            vertices.append(Point(x, y))
            x = x + cosines[k]
            y = y + sines[k]
        return tuple(vertices)
    scale = Fraction(1, 2) if frame is Frame.DIAMETER else Fraction(1)
    return tuple(Point(cosines[k] * scale, sines[k] * scale) for k in range(n))


def ngon_vertex(n: int, k: int, frame: Frame) -> Point:
    """Exact coordinates of vertex k of the regular n-gon."""
    if not 0 <= k < n:
        raise ValueError(f"vertex index {k} out of range for n={n}")
    return ngon_vertices(n, frame)[k]


def compare_points(p: Point, q: Point) -> int:
    """Total order by exact numeric (x, y); used for deterministic ids."""
    if p == q:
        return 0
    s = (p.x - q.x).sign()
    if s:
        return s
    return (p.y - q.y).sign()


#: Sort key for deterministic point ordering.
point_sort_key = functools.cmp_to_key(compare_points)
