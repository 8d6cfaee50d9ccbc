"""Lattice directions, exact convex polygons and convex lattice sets.

Coordinates are ints or Fractions; no floating point is used anywhere, and
point-in-polygon tests include the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Point = tuple


class DependentDirectionsError(ValueError):
    pass


class NonConvexError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Direction:
    """A lattice direction, normalised so that ``a > 0`` or ``a == 0 < b``.

    ``(a, b)`` and ``(-a, -b)`` describe the same lines and normalise to the
    same direction.  Non-primitive directions are only accepted with
    ``allow_nonprimitive=True``.
    """

    a: int
    b: int

    def __init__(self, a: int, b: int, allow_nonprimitive: bool = False):
        a, b = int(a), int(b)
        if a == 0 and b == 0:
            raise ValueError("the zero vector is not a direction")
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        if math.gcd(a, b) != 1 and not allow_nonprimitive:
            raise ValueError(f"direction ({a}, {b}) is not primitive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def __iter__(self):
        yield self.a
        yield self.b

    def __getitem__(self, k):
        return (self.a, self.b)[k]

    def __len__(self):
        return 2

    def __repr__(self):
        return f"Direction({self.a}, {self.b})"


def det(d: Sequence, e: Sequence):
    return d[0] * e[1] - d[1] * e[0]


def as_directions(dirs: Iterable, allow_nonprimitive: bool = False) -> tuple[Direction, ...]:
    """Normalise a direction list and check that it is pairwise independent."""
    out = tuple(d if isinstance(d, Direction) else Direction(*d, allow_nonprimitive)
                for d in dirs)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if det(out[i], out[j]) == 0:
                raise DependentDirectionsError(
                    f"directions {tuple(out[i])} and {tuple(out[j])} are dependent")
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Polygon:
    """A convex polygon given by its corners in counter-clockwise order.

    The corner list starts at the lexicographically smallest corner.  A
    segment has two corners and a point has one.
    """

    corners: tuple

    @property
    def dimension(self) -> int:
        return min(len(self.corners) - 1, 2)

    def bounding_box(self):
        xs = [c[0] for c in self.corners]
        ys = [c[1] for c in self.corners]
        return min(xs), max(xs), min(ys), max(ys)

    def contains_point(self, q) -> bool:
        cs = self.corners
        if len(cs) == 1:
            return tuple(q) == tuple(cs[0])
        if len(cs) == 2:
            a, b = cs
            if _cross(a, b, q) != 0:
                return False
            return (min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
                    and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]))
        n = len(cs)
        return all(_cross(cs[i], cs[(i + 1) % n], q) >= 0 for i in range(n))

    def contains(self, other: "Polygon") -> bool:
        return all(self.contains_point(c) for c in other.corners)

    def translate(self, v) -> "Polygon":
        return Polygon(tuple((c[0] + v[0], c[1] + v[1]) for c in self.corners))

    def __repr__(self):
        return f"Polygon({list(self.corners)})"


def convex_hull(points: Iterable) -> Polygon:
    """Minimal corner list of the convex hull (monotone chain, exact)."""
    pts = sorted({tuple(p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    if len(pts) <= 2:
        return Polygon(tuple(pts))

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear: the chains collapse to the two extremes
        hull = [pts[0], pts[-1]]
    return Polygon(tuple(hull))


def minkowski_sum(p: Polygon, q: Polygon) -> Polygon:
    return convex_hull((a[0] + b[0], a[1] + b[1]) for a in p.corners for b in q.corners)


def contains(p: Polygon, q: Polygon) -> bool:
    return p.contains(q)


def lattice_points_in(p: Polygon) -> frozenset:
    x0, x1, y0, y1 = p.bounding_box()
    return frozenset(
        (x, y)
        for x in range(math.ceil(x0), math.floor(x1) + 1)
        for y in range(math.ceil(y0), math.floor(y1) + 1)
        if p.contains_point((x, y)))


@dataclass(frozen=True)
class ConvexLatticeSet:
    """A finite ``A`` with ``A = H(A) ∩ Z^2``, stored with its hull."""

    points: frozenset
    hull: Polygon

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexLatticeSet":
        pts = frozenset(tuple(int(c) for c in p) for p in points)
        if not pts:
            raise ValueError("empty lattice set")
        hull = convex_hull(pts)
        if lattice_points_in(hull) != pts:
            raise NonConvexError("point set is not lattice-convex")
        return cls(pts, hull)

    @classmethod
    def from_hull(cls, corners: Iterable) -> "ConvexLatticeSet":
        """All lattice points of the convex hull of ``corners``."""
        pts = lattice_points_in(convex_hull(corners))
        if not pts:
            raise ValueError("hull contains no lattice points")
        return cls(pts, convex_hull(pts))

    @classmethod
    def rectangle(cls, w: int, h: int) -> "ConvexLatticeSet":
        """``{(i, j) : 0 <= i < w, 0 <= j < h}``."""
        if w < 1 or h < 1:
            raise ValueError("rectangle sides must be positive")
        return cls.from_points((i, j) for i in range(w) for j in range(h))

    def sorted_points(self) -> list:
        return sorted(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points


def is_convex(points: Iterable) -> bool:
    pts = frozenset(tuple(p) for p in points)
    return bool(pts) and lattice_points_in(convex_hull(pts)) == pts


def delta(directions: Iterable) -> Polygon:
    """Minkowski sum of the segments from the origin to each direction."""
    dirs = as_directions(directions, allow_nonprimitive=True)
    if not dirs:
        raise ValueError("need at least one direction")
    poly = Polygon(((0, 0),))
    for d in dirs:
        poly = minkowski_sum(poly, convex_hull([(0, 0), (d.a, d.b)]))
    return poly


def fitting_translates(hull: Polygon, shape: Polygon) -> list:
    """Lattice vectors ``x`` with ``x + shape`` inside ``hull``, sorted."""
    X0, X1, Y0, Y1 = hull.bounding_box()
    dx0, dx1, dy0, dy1 = shape.bounding_box()
    out = []
    for x in range(math.ceil(X0 - dx0), math.floor(X1 - dx1) + 1):
        for y in range(math.ceil(Y0 - dy0), math.floor(Y1 - dy1) + 1):
            if hull.contains(shape.translate((x, y))):
                out.append((x, y))
    return out


def _hull_of(A) -> Polygon:
    return A.hull if isinstance(A, ConvexLatticeSet) else convex_hull(A)


def rounded_points(A, directions) -> frozenset:
    """Lattice points covered by the translates of delta that fit in H(A)."""
    dl = delta(directions)
    covered = set()
    for x in fitting_translates(_hull_of(A), dl):
        covered |= lattice_points_in(dl.translate(x))
    return frozenset(covered)


def rounded_part(A, directions) -> ConvexLatticeSet | frozenset | None:
    """The rounded part of ``A``, or ``None`` when no translate of delta fits.

    The covered set need not be lattice-convex: when delta has no lattice
    points besides its corners, neighbouring translates can leave holes.
    Such a part comes back as a plain frozenset of points.
    """
    pts = rounded_points(A, directions)
    if not pts:
        return None
    return ConvexLatticeSet.from_points(pts) if is_convex(pts) else pts


def is_rounded(A, directions) -> bool:
    pts = A.points if isinstance(A, ConvexLatticeSet) else frozenset(A)
    return bool(pts) and rounded_points(A, directions) == pts
