from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from family import DIRECTION_SETS
from tomoalg.dependencies import global_dependency_count
from tomoalg.geometry import as_directions, minkowski_sum
from tomoalg.laurent import (LaurentPoly1, LaurentPoly2, RingMap, annihilator_product_formula,
                             apply_ring_map, collapse, has_strong_corners, kernel_polynomial,
                             partial_product, polygon_of, reduced_annihilator)
from tomoalg.rings import GF, QQ, ZZ

FOUR = DIRECTION_SETS["four"]
x, y, z = LaurentPoly2.x(), LaurentPoly2.y(), LaurentPoly1.z()

# The worked-example maps: rows, columns, diagonals, anti-diagonals.
R = RingMap(LaurentPoly1.constant(1), z)
C = RingMap(z, LaurentPoly1.constant(1))
T = RingMap(z, z ** -1)
U = RingMap(z, z)

terms2 = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                         st.integers(-4, 4), max_size=6)
terms1 = st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=6)
rings = st.sampled_from([ZZ, QQ, GF(2), GF(3), GF(5)])
directions = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(
    lambda d: d != (0, 0) and gcd(*d) == 1)


def unit_maps(ring):
    return st.builds(lambda nx, ny, sx, sy: RingMap.from_exponents(nx, ny, ring, sx, sy),
                     st.integers(-3, 3), st.integers(-3, 3),
                     st.sampled_from([1, -1]), st.sampled_from([1, -1]))


# -- arithmetic ------------------------------------------------------------

def test_multiplication_examples():
    f = (x - 1) * (y - 1)
    assert f == x * y - x - y + 1
    assert f * 1 == f
    assert str(f) == "1 - y - x + x*y"


def test_negative_powers():
    assert (x ** -1) * x == LaurentPoly2.constant(1)
    with pytest.raises(ValueError):
        (x + 1) ** -1


def test_coefficients_reduce_mod_p():
    f = LaurentPoly2({(0, 0): 3, (1, 0): 2}, GF(3))
    assert f == LaurentPoly2({(1, 0): 2}, GF(3))
    assert (f + f).coeff((1, 0)) == 1


def test_four_factor_corners_are_units():
    D = (x - 1) * (y - 1) * (x * y - 1) * (x * y ** -1 - 1)
    assert all(D.coeff(c) in (1, -1) for c in D.polygon().corners)


@settings(max_examples=80, deadline=None)
@given(terms2, terms2, terms2, rings)
def test_ring_axioms(a, b, c, ring):
    f, g, h = (LaurentPoly2(t, ring) for t in (a, b, c))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == LaurentPoly2({}, ring)


# -- ring maps -------------------------------------------------------------

def test_unit_images_required():
    with pytest.raises(ValueError):
        RingMap(z + 1, z)
    with pytest.raises(ValueError):
        RingMap(LaurentPoly1.monomial(1, 2), z)
    RingMap(LaurentPoly1.monomial(0, 4, GF(5)), z.change_ring(GF(5)))


def test_map_of_one_is_one():
    assert apply_ring_map(R, LaurentPoly2.constant(1)) == LaurentPoly1.constant(1)


@settings(max_examples=80, deadline=None)
@given(st.data(), terms2, terms2, rings)
def test_ring_map_is_homomorphism(data, a, b, ring):
    m = data.draw(unit_maps(ring))
    f, g = LaurentPoly2(a, ring), LaurentPoly2(b, ring)
    assert m(f * g) == m(f) * m(g)
    assert m(f + g) == m(f) + m(g)


def test_worked_example_images_verbatim():
    D = [partial_product(FOUR, i) for i in range(4)]
    assert D[0] == (y - 1) * (x * y - 1) * (x * y ** -1 - 1)
    assert R(D[0]) == -(z ** -1) * (z - 1) ** 3
    assert C(D[1]) == (z - 1) ** 3
    assert U(D[3]) == (z - 1) ** 3 * (z + 1)


def test_diagonal_image_up_to_unit():
    # the diagonal image carries an extra unit relative to (z-1)^3 (z+1)
    image = T(partial_product(FOUR, 2))
    assert image == -(z ** -1) * (z - 1) ** 3 * (z + 1)
    assert image.equal_up_to_unit((z - 1) ** 3 * (z + 1))


@pytest.mark.parametrize("i", range(4))
def test_line_sum_maps_kill_kernel_polynomial(i):
    D = kernel_polynomial(FOUR)
    assert [R, C, T, U][i](D).is_zero()
    assert collapse(D, as_directions(FOUR)[i]).is_zero()


@pytest.mark.parametrize("i", range(4))
def test_partial_products_vanish_on_other_directions(i):
    dirs = as_directions(FOUR)
    Di = partial_product(dirs, i)
    for j, d in enumerate(dirs):
        assert collapse(Di, d).is_zero() == (j != i)


def test_partial_product_single_direction():
    assert partial_product([(1, 0)], 0) == LaurentPoly2.constant(1)
    with pytest.raises(IndexError):
        partial_product([(1, 0)], 1)


# -- kernel generator and annihilators ----------------------------------------

def test_kernel_polynomial_examples():
    assert kernel_polynomial([(1, 0)]) == x - 1
    assert kernel_polynomial([(1, 0), (0, 1)]) == x * y - x - y + 1


def test_reduced_annihilator_examples():
    assert reduced_annihilator([(1, 0), (0, 1)], 0).equal_up_to_unit(z - 1)
    assert reduced_annihilator(FOUR, 0).equal_up_to_unit((z - 1) ** 3)
    assert reduced_annihilator(FOUR, 2).equal_up_to_unit((z - 1) ** 3 * (z + 1))


def test_reduced_annihilator_rejects_nonprimitive():
    with pytest.raises(ValueError):
        reduced_annihilator([(2, 0), (0, 1)], 0)


@pytest.mark.parametrize("dname", sorted(DIRECTION_SETS))
def test_annihilator_equals_product_formula(dname):
    dirs = DIRECTION_SETS[dname]
    for i in range(len(dirs)):
        ann = reduced_annihilator(dirs, i)
        assert ann == annihilator_product_formula(dirs, i)
        assert ann.leading in (1, -1) and ann.trailing in (1, -1)


@settings(max_examples=40, deadline=None)
@given(st.lists(directions, min_size=1, max_size=4, unique=True))
def test_annihilator_spans_sum_to_twice_global_count(raw):
    try:
        dirs = as_directions(raw)
    except ValueError:
        assume(False)
    spans = sum(reduced_annihilator(dirs, i).span for i in range(len(dirs)))
    assert spans == 2 * global_dependency_count(dirs)
    for i in range(len(dirs)):
        assert reduced_annihilator(dirs, i) == annihilator_product_formula(dirs, i)


@settings(max_examples=60, deadline=None)
@given(st.lists(directions, min_size=2, max_size=4, unique=True), terms1, rings)
def test_direction_factors_are_weakly_coprime(raw, g_terms, ring):
    try:
        dirs = as_directions(raw)
    except ValueError:
        assume(False)
    g = LaurentPoly1(g_terms, ring)
    assume(not g.is_zero())
    for i, di in enumerate(dirs):
        for j, dj in enumerate(dirs):
            if i == j:
                continue
            factor = collapse(LaurentPoly2.direction_minus_one(dj, ring), di)
            assert not factor.is_zero()
            assert factor.leading in (ring.one, ring.reduce(-ring.one))
            assert factor.trailing in (ring.one, ring.reduce(-ring.one))
            assert not (factor * g).is_zero()


# -- polygons ------------------------------------------------------------------

def test_strong_corners():
    assert has_strong_corners(x - 1)
    assert has_strong_corners(2 * x + y)
    with pytest.raises(ValueError):
        has_strong_corners(LaurentPoly2({}))


@pytest.mark.parametrize("dname", sorted(DIRECTION_SETS))
@pytest.mark.parametrize("ring", [ZZ, QQ, GF(2), GF(3), GF(5)])
def test_kernel_polynomial_strong_corners(dname, ring):
    D = kernel_polynomial(DIRECTION_SETS[dname], ring)
    assert has_strong_corners(D)


def test_polygon_of_product_example():
    assert polygon_of((x - 1) * (y - 1)) == minkowski_sum(polygon_of(x - 1), polygon_of(y - 1))


@settings(max_examples=80, deadline=None)
@given(terms2, terms2, rings)
def test_polygon_law_for_strong_corners(a, b, ring):
    f, g = LaurentPoly2(a, ring), LaurentPoly2(b, ring)
    assume(not f.is_zero() and not g.is_zero())
    # every nonzero element of Z, Q, F_p is a non-zerodivisor
    assert has_strong_corners(f) and has_strong_corners(g)
    assert polygon_of(f * g) == minkowski_sum(polygon_of(f), polygon_of(g))
    assert has_strong_corners(f * g)


@pytest.mark.parametrize("dname", sorted(DIRECTION_SETS))
def test_delta_ring_independent(dname):
    dirs = DIRECTION_SETS[dname]
    polys = {polygon_of(kernel_polynomial(dirs, r)) for r in [ZZ, QQ, GF(2), GF(3), GF(5)]}
    assert len(polys) == 1
