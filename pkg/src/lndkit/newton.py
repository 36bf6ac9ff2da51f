"""Newton polygons of a polynomial in two chosen variables."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .poly import Poly, support_points

Point = Tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> Tuple[Point, ...]:
    """Counterclockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return tuple(hull)


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[Point, ...]
    pair: Tuple[int, int]

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def triangle_legs(self):
        """``(m, n)`` when the hull is the triangle (0,0), (m,0), (0,n), possibly flat."""
        vs = set(self.vertices)
        m = max((v[0] for v in vs if v[1] == 0), default=0)
        n = max((v[1] for v in vs if v[0] == 0), default=0)
        expected = {(0, 0), (m, 0), (0, n)}
        return (m, n) if vs == expected else None


def newton_polygon(f: Poly, pair: Tuple[int, int]) -> NewtonPolygon:
    return NewtonPolygon(convex_hull(support_points(f, pair)), tuple(pair))


def _divides(a: int, b: int) -> bool:
    return b == 0 if a == 0 else b % a == 0


def np_check(poly: NewtonPolygon) -> bool:
    """Triangle (0,0), (m,0), (0,n) with m | n or n | m (flat triangles allowed)."""
    legs = poly.triangle_legs()
    if legs is None:
        return False
    m, n = legs
    return _divides(m, n) or _divides(n, m)
