import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from family import DIRECTION_SETS, REGIONS
from tomoalg.geometry import (ConvexLatticeSet, DependentDirectionsError, Direction,
                              NonConvexError, Polygon, as_directions, contains, convex_hull,
                              delta, det, fitting_translates, is_convex, is_rounded,
                              lattice_points_in, minkowski_sum, rounded_part)
from tomoalg.laurent import kernel_polynomial, polygon_of
from tomoalg.rings import GF, QQ, ZZ

points = st.tuples(st.integers(-6, 6), st.integers(-6, 6))
point_sets = st.lists(points, min_size=1, max_size=12)

FOUR = DIRECTION_SETS["four"]


def brute_lattice_points(poly: Polygon):
    x0, x1, y0, y1 = poly.bounding_box()
    return {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)
            if poly.contains_point((x, y))}


# -- directions ------------------------------------------------------------

@pytest.mark.parametrize("raw,normal", [((1, 0), (1, 0)), ((-1, 0), (1, 0)), ((0, -1), (0, 1)),
                                        ((-1, 1), (1, -1)), ((-2, -3), (2, 3))])
def test_direction_normalization(raw, normal):
    assert tuple(Direction(*raw)) == normal


def test_direction_rejections():
    with pytest.raises(ValueError):
        Direction(0, 0)
    with pytest.raises(ValueError):
        Direction(2, 4)
    assert not Direction(2, 4, allow_nonprimitive=True).primitive


def test_dependent_directions_rejected():
    with pytest.raises(DependentDirectionsError):
        as_directions([(1, 1), (-1, -1)])


def test_det():
    assert det((1, 0), (0, 1)) == 1
    assert det((1, 1), (1, -1)) == -2


# -- hulls and sums ----------------------------------------------------------

def test_hull_examples():
    assert convex_hull([(0, 0)]).corners == ((0, 0),)
    assert convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)]).corners == ((0, 0), (2, 0), (0, 2))
    assert convex_hull([(0, 0), (1, 0), (3, 0)]).corners == ((0, 0), (3, 0))


def test_minkowski_examples():
    square = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert minkowski_sum(square, Polygon(((3, 3),))) == square.translate((3, 3))
    seg_x = convex_hull([(0, 0), (1, 0)])
    seg_y = convex_hull([(0, 0), (0, 1)])
    assert minkowski_sum(seg_x, seg_y) == square


def test_containment_is_boundary_inclusive():
    square = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)])
    assert all(square.contains_point(p) for p in [(0, 0), (1, 0), (2, 1), (1, 1)])
    assert not square.contains_point((3, 1))
    assert contains(square, square)


def test_triangle_lattice_count():
    assert len(lattice_points_in(convex_hull([(0, 0), (2, 0), (0, 2)]))) == 6


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_hull_idempotent_and_covering(pts):
    hull = convex_hull(pts)
    assert convex_hull(hull.corners) == hull
    assert all(hull.contains_point(p) for p in pts)
    assert set(hull.corners) <= set(pts)


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_lattice_points_match_brute_force(pts):
    hull = convex_hull(pts)
    assert lattice_points_in(hull) == brute_lattice_points(hull)


@settings(max_examples=60, deadline=None)
@given(point_sets, point_sets, point_sets)
def test_minkowski_commutative_associative(a, b, c):
    p, q, r = convex_hull(a), convex_hull(b), convex_hull(c)
    assert minkowski_sum(p, q) == minkowski_sum(q, p)
    assert minkowski_sum(minkowski_sum(p, q), r) == minkowski_sum(p, minkowski_sum(q, r))


@settings(max_examples=60, deadline=None)
@given(point_sets, point_sets)
def test_minkowski_contains_pairwise_sums(a, b):
    s = minkowski_sum(convex_hull(a), convex_hull(b))
    assert all(s.contains_point((p[0] + q[0], p[1] + q[1])) for p in a for q in b)


# -- convex lattice sets -------------------------------------------------------

def test_rectangle_and_non_convex():
    A = ConvexLatticeSet.rectangle(3, 2)
    assert len(A) == 6 and (2, 1) in A and (3, 0) not in A
    with pytest.raises(NonConvexError):
        ConvexLatticeSet.from_points([(0, 0), (2, 0)])
    assert not is_convex([(0, 0), (2, 0), (0, 2), (0, 1)])


# -- delta and rounded parts ------------------------------------------------------

def test_delta_examples():
    assert delta([(1, 0)]).corners == ((0, 0), (1, 0))
    assert delta([(1, 0), (0, 1)]).corners == ((0, 0), (1, 0), (1, 1), (0, 1))
    assert delta(FOUR).bounding_box() == (0, 3, -1, 2)


@pytest.mark.parametrize("dirs", list(DIRECTION_SETS.values()))
@pytest.mark.parametrize("ring", [ZZ, QQ, GF(2), GF(3), GF(5)])
def test_delta_is_polygon_of_kernel_polynomial(dirs, ring):
    assert delta(dirs) == polygon_of(kernel_polynomial(dirs, ring))


def test_rounded_part_too_small():
    assert rounded_part(ConvexLatticeSet.rectangle(3, 3), FOUR) is None
    assert fitting_translates(ConvexLatticeSet.rectangle(3, 3).hull, delta(FOUR)) == []


@pytest.mark.parametrize("k", range(2, 8))
def test_rectangles_rounded_for_axes(k):
    A = ConvexLatticeSet.rectangle(k, k + 1)
    assert rounded_part(A, [(1, 0), (0, 1)]) == A
    assert is_rounded(A, [(1, 0), (0, 1)])


@pytest.mark.parametrize("rname", sorted(REGIONS))
@pytest.mark.parametrize("dname", sorted(DIRECTION_SETS))
def test_rounded_part_idempotent_and_contained(rname, dname):
    A, dirs = REGIONS[rname], DIRECTION_SETS[dname]
    part = rounded_part(A, dirs)
    if part is None:
        return
    assert part.points <= A.points
    assert rounded_part(part, dirs) == part
    assert is_rounded(part, dirs)


@settings(max_examples=40, deadline=None)
@given(st.lists(points, min_size=3, max_size=8), st.sampled_from(sorted(DIRECTION_SETS)))
def test_rounded_part_idempotent_on_random_hulls(corners, dname):
    A = ConvexLatticeSet.from_hull(corners)
    dirs = DIRECTION_SETS[dname]
    part = rounded_part(A, dirs)
    if part is not None:
        pts = part.points if isinstance(part, ConvexLatticeSet) else part
        assert pts <= A.points
        assert rounded_part(part, dirs) == part
        assert is_rounded(part, dirs)


def test_rounded_part_can_have_holes():
    # delta of the skew pair is a parallelogram with no lattice points but its corners
    A = ConvexLatticeSet.from_hull([(0, 4), (3, -2), (-5, 0)])
    part = rounded_part(A, DIRECTION_SETS["skew"])
    assert isinstance(part, frozenset) and not is_convex(part)
    assert lattice_points_in(convex_hull(part)) - part == {(-1, 0), (0, 2)}
    assert rounded_part(part, DIRECTION_SETS["skew"]) == part
