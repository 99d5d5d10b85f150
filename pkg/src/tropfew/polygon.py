"""Exact planar geometry on lattice and rational points.

Points are 2-tuples of ``int`` or ``Fraction``.  Nothing here uses floats.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Number = int | Fraction
Point = tuple[Number, Number]


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def scale(p: Point, s: Number) -> Point:
    return (p[0] * s, p[1] * s)


def dot(p: Point, q: Point) -> Number:
    return p[0] * q[0] + p[1] * q[1]


def cross(p: Point, q: Point) -> Number:
    return p[0] * q[1] - p[1] * q[0]


def orient(a: Point, b: Point, c: Point) -> Number:
    """Twice the signed area of the triangle abc (positive if counterclockwise)."""
    return cross(sub(b, a), sub(c, a))


def primitive(v: tuple[int, int]) -> tuple[int, int]:
    """Primitive integer vector in the direction of ``v`` (``v`` must be nonzero)."""
    a, b = int(v[0]), int(v[1])
    if v[0] != a or v[1] != b:
        raise ValueError(f"not an integer vector: {v}")
    g = gcd(a, b)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (a // g, b // g)


def primitive_rational(v: Point) -> tuple[int, int]:
    """Primitive integer vector positively proportional to a rational vector."""
    x, y = Fraction(v[0]), Fraction(v[1])
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return primitive((int(x * den), int(y * den)))


def lattice_length(p: tuple[int, int], q: tuple[int, int]) -> int:
    """Number of lattice points on the segment ``pq`` minus one."""
    return gcd(int(q[0] - p[0]), int(q[1] - p[1]))


def affine_dimension(points: Iterable[Point]) -> int:
    pts = list(dict.fromkeys(points))
    if not pts:
        return -1
    if len(pts) == 1:
        return 0
    p0 = pts[0]
    d = next(sub(p, p0) for p in pts[1:])
    if all(cross(d, sub(p, p0)) == 0 for p in pts):
        return 1
    return 2


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Vertices of the convex hull in counterclockwise order (Andrew's monotone chain).

    Collinear boundary points are dropped.  Degenerate inputs give one point or
    the two endpoints of a segment.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq: Sequence[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def area(polygon: Sequence[Point]) -> Fraction:
    """Euclidean area of a convex polygon given by its ordered vertices."""
    if len(polygon) < 3:
        return Fraction(0)
    twice = sum(cross(polygon[i], polygon[(i + 1) % len(polygon)]) for i in range(len(polygon)))
    return abs(Fraction(twice, 2))


def minkowski_sum(p: Iterable[Point], q: Iterable[Point]) -> list[Point]:
    """Vertices of conv(P + Q)."""
    return convex_hull(add(a, b) for a, b in product(list(p), list(q)))


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """Whether ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def on_boundary(p: Point, hull: Sequence[Point]) -> bool:
    """Whether ``p`` lies on the boundary of the convex polygon ``hull``."""
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return on_segment(p, hull[0], hull[1])
    return any(on_segment(p, hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))


def contains(hull: Sequence[Point], p: Point) -> bool:
    """Closed point-in-convex-polygon test for a counterclockwise hull."""
    if len(hull) <= 2:
        return on_boundary(p, hull)
    return all(orient(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


def segment_on_boundary(a: Point, b: Point, hull: Sequence[Point]) -> bool:
    """Whether the segment ``ab`` is contained in one edge of the polygon ``hull``."""
    if len(hull) <= 2:
        return True
    for i in range(len(hull)):
        u, v = hull[i], hull[(i + 1) % len(hull)]
        if on_segment(a, u, v) and on_segment(b, u, v):
            return True
    return False
