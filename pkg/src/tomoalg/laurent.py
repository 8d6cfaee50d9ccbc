"""Laurent polynomials in one and two variables with exact coefficients.

A table on Z^2 is the same thing as a Laurent polynomial in ``x, y`` (the
point ``(i, j)`` is the monomial ``x^i y^j``) and a vector of line sums in
one direction is a Laurent polynomial in ``z``.  A direction ``(a, b)``
corresponds to the monomial ``x^a y^b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .geometry import Polygon, as_directions, convex_hull, det
from .rings import ZZ, Ring


class _Laurent:
    __slots__ = ("terms", "ring")

    def __init__(self, terms: Mapping | Iterable = (), ring: Ring = ZZ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = {}
        for e, c in items:
            e = self._key(e)
            acc[e] = ring.reduce(acc.get(e, ring.zero) + ring(c))
        self.terms = {e: c for e, c in sorted(acc.items()) if c}
        self.ring = ring

    @staticmethod
    def _key(e):
        raise NotImplementedError

    @staticmethod
    def _add_exp(e, f):
        raise NotImplementedError

    def _new(self, terms):
        return type(self)(terms, self.ring)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return type(self).constant(other, self.ring)

    @classmethod
    def constant(cls, c, ring: Ring = ZZ):
        return cls({cls._zero_exp(): c}, ring)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e):
        return self.terms.get(self._key(e), self.ring.zero)

    def support(self) -> list:
        return list(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        return self._new(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        red = self.ring.reduce
        acc = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                k = self._add_exp(e, f)
                acc[k] = red(acc.get(k, self.ring.zero) + c * d)
        return self._new(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self.terms.items()
            inv = self.ring.inv(c)
            return self._new({self._scale_exp(e, n): self.ring.reduce(inv ** (-n))})
        out = self.constant(1, self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, _Laurent):
            return NotImplemented
        try:
            return self == self.constant(other, self.ring)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.ring, tuple(self.terms.items())))

    def change_ring(self, ring: Ring):
        return type(self)({e: ring(c) for e, c in self.terms.items()}, ring)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = self._render_monomial(e)
            neg = c < 0 if self.ring.kind != "Fp" else False
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)


def _power(var, n):
    if n == 0:
        return ""
    return var if n == 1 else f"{var}^{n}"


class LaurentPoly2(_Laurent):
    """Element of ``k[x, 1/x, y, 1/y]``; ``terms`` maps ``(i, j)`` to coefficients."""

    __slots__ = ()

    @staticmethod
    def _key(e):
        i, j = e
        return (int(i), int(j))

    @staticmethod
    def _zero_exp():
        return (0, 0)

    @staticmethod
    def _add_exp(e, f):
        return (e[0] + f[0], e[1] + f[1])

    @staticmethod
    def _scale_exp(e, n):
        return (e[0] * n, e[1] * n)

    @staticmethod
    def _render_monomial(e):
        return "*".join(p for p in (_power("x", e[0]), _power("y", e[1])) if p)

    @classmethod
    def monomial(cls, i: int, j: int, c=1, ring: Ring = ZZ):
        return cls({(i, j): c}, ring)

    @classmethod
    def x(cls, ring: Ring = ZZ):
        return cls.monomial(1, 0, ring=ring)

    @classmethod
    def y(cls, ring: Ring = ZZ):
        return cls.monomial(0, 1, ring=ring)

    @classmethod
    def direction_minus_one(cls, d, ring: Ring = ZZ):
        """``x^a y^b - 1`` for the direction ``d = (a, b)``."""
        a, b = d
        return cls({(a, b): 1, (0, 0): -1}, ring)

    def polygon(self) -> Polygon:
        if self.is_zero():
            raise ValueError("the zero polynomial has no polygon")
        return convex_hull(self.terms)

    def translate(self, v):
        return self._new({(e[0] + v[0], e[1] + v[1]): c for e, c in self.terms.items()})


class LaurentPoly1(_Laurent):
    """Element of ``k[z, 1/z]``; ``terms`` maps exponents to coefficients."""

    __slots__ = ()

    @staticmethod
    def _key(e):
        return int(e)

    @staticmethod
    def _zero_exp():
        return 0

    @staticmethod
    def _add_exp(e, f):
        return e + f

    @staticmethod
    def _scale_exp(e, n):
        return e * n

    @staticmethod
    def _render_monomial(e):
        return _power("z", e)

    @classmethod
    def monomial(cls, n: int, c=1, ring: Ring = ZZ):
        return cls({n: c}, ring)

    @classmethod
    def z(cls, ring: Ring = ZZ):
        return cls.monomial(1, ring=ring)

    @property
    def min_exp(self) -> int:
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        return max(self.terms)

    @property
    def span(self) -> int:
        """Distance between the highest and lowest exponent."""
        return self.max_exp - self.min_exp

    @property
    def leading(self):
        return self.terms[self.max_exp]

    @property
    def trailing(self):
        return self.terms[self.min_exp]

    def shift(self, n: int) -> "LaurentPoly1":
        return self._new({e + n: c for e, c in self.terms.items()})

    def coefficients(self) -> list:
        """Dense coefficient list from the lowest to the highest exponent."""
        return [self.coeff(e) for e in range(self.min_exp, self.max_exp + 1)]

    def equal_up_to_unit(self, other: "LaurentPoly1") -> bool:
        """Whether ``self == s * z^n * other`` for some ``n`` and ``s = +-1``."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        n = self.min_exp - other.min_exp
        moved = other.shift(n)
        return self == moved or self == -moved


@dataclass(frozen=True)
class RingMap:
    """The ring map ``k[x^±, y^±] -> k[z^±]`` with ``x, y`` sent to given units."""

    x_image: LaurentPoly1
    y_image: LaurentPoly1

    def __post_init__(self):
        for img in (self.x_image, self.y_image):
            ring = img.ring
            units = (ring.one, ring.reduce(-ring.one))
            if len(img.terms) != 1 or next(iter(img.terms.values())) not in units:
                raise ValueError(f"{img} is not of the form ±z^n")

    @classmethod
    def from_exponents(cls, nx: int, ny: int, ring: Ring = ZZ, sx: int = 1, sy: int = 1):
        return cls(LaurentPoly1.monomial(nx, sx, ring), LaurentPoly1.monomial(ny, sy, ring))

    def __call__(self, f: LaurentPoly2) -> LaurentPoly1:
        return apply_ring_map(self, f)


def apply_ring_map(m: RingMap, f: LaurentPoly2) -> LaurentPoly1:
    (nx, sx), = m.x_image.terms.items()
    (ny, sy), = m.y_image.terms.items()
    ring = f.ring
    sx, sy = ring(sx), ring(sy)
    out = {}
    for (i, j), c in f.terms.items():
        # (±1)^i is its own inverse, so negative powers need no special case
        sign = (sx if i % 2 else ring.one) * (sy if j % 2 else ring.one)
        e = nx * i + ny * j
        out[e] = ring.reduce(out.get(e, ring.zero) + sign * c)
    return LaurentPoly1(out, ring)


def collapse(f: LaurentPoly2, d) -> LaurentPoly1:
    """Line sums of ``f`` in direction ``d = (a, b)`` as a polynomial in ``z``.

    The point ``(i, j)`` goes to ``z^(a*j - b*i)``, the canonical line index.
    """
    a, b = d
    return apply_ring_map(RingMap.from_exponents(-b, a, f.ring), f)


def kernel_polynomial(directions, ring: Ring = ZZ) -> LaurentPoly2:
    """``D = prod (d_i - 1)``, generator of all global switching components."""
    dirs = as_directions(directions)
    out = LaurentPoly2.constant(1, ring)
    for d in dirs:
        out = out * LaurentPoly2.direction_minus_one(d, ring)
    return out


def partial_product(directions, i: int, ring: Ring = ZZ) -> LaurentPoly2:
    """``D_i``: the product of ``d_j - 1`` over ``j != i`` (0-based ``i``)."""
    dirs = as_directions(directions)
    if not 0 <= i < len(dirs):
        raise IndexError(f"direction index {i} out of range for {len(dirs)} directions")
    out = LaurentPoly2.constant(1, ring)
    for j, d in enumerate(dirs):
        if j != i:
            out = out * LaurentPoly2.direction_minus_one(d, ring)
    return out


def reduced_annihilator(directions, i: int, ring: Ring = ZZ) -> LaurentPoly1:
    """Image of ``D_i`` among the line sums of direction ``i``.

    Its coefficients give the linear recurrence satisfied by the weights of
    every global dependency along direction ``i``.
    """
    dirs = as_directions(directions)
    if not all(d.primitive for d in dirs):
        raise ValueError("reduced annihilators need primitive directions")
    return collapse(partial_product(dirs, i, ring), dirs[i])


def annihilator_product_formula(directions, i: int, ring: Ring = ZZ) -> LaurentPoly1:
    """``prod_{j != i} (z^det(d_i, d_j) - 1)`` computed directly."""
    dirs = as_directions(directions)
    out = LaurentPoly1.constant(1, ring)
    for j, d in enumerate(dirs):
        if j != i:
            out = out * (LaurentPoly1.monomial(det(dirs[i], d), 1, ring) - 1)
    return out


def polygon_of(f: LaurentPoly2) -> Polygon:
    return f.polygon()


def has_strong_corners(f: LaurentPoly2) -> bool:
    if f.is_zero():
        raise ValueError("the zero polynomial has no corners")
    return all(not f.ring.is_zero_divisor(f.coeff(c)) for c in f.polygon().corners)
