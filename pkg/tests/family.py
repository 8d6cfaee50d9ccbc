"""The convex regions and direction sets shared by the acceptance sweeps."""

from tomoalg.geometry import ConvexLatticeSet

DIRECTION_SETS = {
    "axes": ((1, 0), (0, 1)),
    "four": ((1, 0), (0, 1), (1, 1), (1, -1)),
    "skew": ((1, 1), (1, 2)),
    "three": ((1, 0), (0, 1), (1, 1)),
}

RECTANGLES = {f"rect{k}x{k}": ConvexLatticeSet.rectangle(k, k) for k in range(2, 8)}

SHAPES = {
    "triangle_right": ConvexLatticeSet.from_hull([(0, 0), (7, 0), (0, 7)]),
    "triangle_slanted": ConvexLatticeSet.from_hull([(0, 0), (7, 2), (2, 7)]),
    "triangle_wide": ConvexLatticeSet.from_hull([(0, 0), (9, 0), (4, 6)]),
    "hexagon": ConvexLatticeSet.from_hull([(0, 0), (4, 0), (7, 3), (7, 6), (3, 6), (0, 3)]),
}

REGIONS = {**RECTANGLES, **SHAPES}

FAMILY = [(rname, dname) for rname in REGIONS for dname in DIRECTION_SETS]
