"""Tables, lattice lines and the line-sum map.

Lines in a primitive direction ``d = (a, b)`` are numbered by
``line_index(p, d) = a*p[1] - b*p[0]``: constant along each line, zero on
the line through the origin, and onto Z.  Matrices of the line-sum map use
sorted ``LineId`` rows and lexicographically sorted point columns, so their
layout is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Mapping, NamedTuple

from .geometry import ConvexLatticeSet, as_directions
from .laurent import LaurentPoly2
from .linalg import LinearSolver, Matrix, rank, right_nullspace
from .rings import Ring


class LineId(NamedTuple):
    dir_index: int
    index: int


def _points_of(A) -> list:
    if isinstance(A, ConvexLatticeSet):
        return A.sorted_points()
    pts = sorted({tuple(int(c) for c in p) for p in A})
    if not pts:
        raise ValueError("empty point set")
    return pts


@dataclass(frozen=True)
class Table:
    """Finitely supported function from lattice points to ring elements."""

    values: Mapping
    ring: Ring

    def __post_init__(self):
        ring = self.ring
        clean = {}
        for p, v in self.values.items():
            v = ring(v)
            if v:
                clean[(int(p[0]), int(p[1]))] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, ring: Ring) -> "Table":
        return cls({}, ring)

    @classmethod
    def from_poly(cls, f: LaurentPoly2) -> "Table":
        return cls(f.terms, f.ring)

    def to_poly(self) -> LaurentPoly2:
        return LaurentPoly2(self.values, self.ring)

    @classmethod
    def from_vector(cls, points, vec, ring: Ring) -> "Table":
        return cls(dict(zip(points, vec)), ring)

    def vector(self, points) -> tuple:
        return tuple(self.values.get(tuple(p), self.ring.zero) for p in points)

    def support(self) -> list:
        return list(self.values)

    def __getitem__(self, p):
        return self.values.get(tuple(p), self.ring.zero)

    def __add__(self, other: "Table") -> "Table":
        out = dict(self.values)
        for p, v in other.values.items():
            out[p] = self.ring.reduce(out.get(p, self.ring.zero) + v)
        return Table(out, self.ring)

    def __neg__(self) -> "Table":
        return Table({p: -v for p, v in self.values.items()}, self.ring)

    def __sub__(self, other: "Table") -> "Table":
        return self + (-other)

    def scale(self, c) -> "Table":
        c = self.ring(c)
        return Table({p: c * v for p, v in self.values.items()}, self.ring)

    def __eq__(self, other):
        return (isinstance(other, Table) and self.ring == other.ring
                and self.values == other.values)

    def __hash__(self):
        return hash((self.ring, tuple(self.values.items())))


@dataclass(frozen=True)
class LineSumVector:
    """Finitely supported function from ``LineId`` to ring elements."""

    entries: Mapping
    ring: Ring

    def __post_init__(self):
        ring = self.ring
        clean = {}
        for line, v in self.entries.items():
            v = ring(v)
            if v:
                clean[LineId(*line)] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_vector(cls, lines, vec, ring: Ring) -> "LineSumVector":
        return cls(dict(zip(lines, vec)), ring)

    def vector(self, lines) -> tuple:
        return tuple(self.entries.get(line, self.ring.zero) for line in lines)

    def __getitem__(self, line):
        return self.entries.get(LineId(*line), self.ring.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, LineSumVector) and self.ring == other.ring
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, tuple(self.entries.items())))


def line_index(p, d) -> int:
    a, b = d
    if gcd(a, b) != 1:
        raise ValueError(f"direction ({a}, {b}) is not primitive")
    return a * p[1] - b * p[0]


def enumerate_lines(A, directions) -> list:
    """All lines through ``A`` in the given directions, sorted."""
    dirs = as_directions(directions)
    pts = _points_of(A)
    return sorted({LineId(i, line_index(p, d)) for i, d in enumerate(dirs) for p in pts})


def project(f: Table, directions) -> LineSumVector:
    dirs = as_directions(directions)
    ring = f.ring
    out = {}
    for p, v in f.values.items():
        for i, d in enumerate(dirs):
            line = LineId(i, line_index(p, d))
            out[line] = ring.reduce(out.get(line, ring.zero) + v)
    return LineSumVector(out, ring)


@dataclass(frozen=True)
class LineSumSystem:
    """The line-sum map of a finite point set with its row and column labels."""

    points: tuple
    lines: tuple
    directions: tuple
    ring: Ring
    matrix: Matrix = field(repr=False)

    @cached_property
    def point_position(self) -> dict:
        return {p: k for k, p in enumerate(self.points)}

    @cached_property
    def line_position(self) -> dict:
        return {line: k for k, line in enumerate(self.lines)}

    @cached_property
    def solver(self) -> LinearSolver:
        return LinearSolver(self.matrix)

    def table_vector(self, f: Table) -> tuple:
        outside = set(f.values) - set(self.point_position)
        if outside:
            raise ValueError(f"table has support outside the region: {sorted(outside)[:3]}")
        return f.vector(self.points)

    def linesum_vector(self, p: LineSumVector) -> tuple:
        outside = set(p.entries) - set(self.line_position)
        if outside:
            raise ValueError(
                f"line sums given on lines that miss the region: {sorted(outside)[:3]}")
        return p.vector(self.lines)

    def table(self, vec) -> Table:
        return Table.from_vector(self.points, vec, self.ring)

    def linesums(self, vec) -> LineSumVector:
        return LineSumVector.from_vector(self.lines, vec, self.ring)


def line_sum_system(A, directions, ring: Ring) -> LineSumSystem:
    dirs = as_directions(directions)
    pts = tuple(_points_of(A))
    lines = tuple(enumerate_lines(pts, dirs))
    pos = {line: k for k, line in enumerate(lines)}
    rows = [[0] * len(pts) for _ in lines]
    for c, p in enumerate(pts):
        for i, d in enumerate(dirs):
            rows[pos[LineId(i, line_index(p, d))]][c] = 1
    return LineSumSystem(pts, lines, dirs, ring, Matrix.from_rows(rows, ring, len(pts)))


def linesum_matrix(A, directions, ring: Ring) -> Matrix:
    return line_sum_system(A, directions, ring).matrix


def _submatrix(m: Matrix, rows, cols) -> Matrix:
    return Matrix(len(rows), len(cols), tuple(m[i, j] for i in rows for j in cols), m.ring)


@dataclass(frozen=True)
class RelativeSplit:
    """Block form of the line-sum map of ``B`` relative to a subset ``A``.

    Columns are ``A`` then ``B \\ A``; rows are the lines of ``A`` then the
    lines of ``B`` missing ``A``.  The block (new lines) x (points of A) is
    zero by construction and is not stored.
    """

    a_points: tuple
    rel_points: tuple
    a_lines: tuple
    rel_lines: tuple
    sigma_A: Matrix
    sigma_rel: Matrix
    delta_rel: Matrix

    def assemble(self) -> Matrix:
        ring = self.sigma_A.ring
        rows = []
        for i in range(len(self.a_lines)):
            rows.append(list(self.sigma_A.row(i)) + list(self.delta_rel.row(i)))
        for i in range(len(self.rel_lines)):
            rows.append([ring.zero] * len(self.a_points) + list(self.sigma_rel.row(i)))
        return Matrix.from_rows(rows, ring, len(self.a_points) + len(self.rel_points))


def relative_split(B, A, directions, ring: Ring) -> RelativeSplit:
    b_pts = set(_points_of(B))
    a_pts = _points_of(A)
    if not set(a_pts) <= b_pts:
        raise ValueError("A is not a subset of B")
    sysB = line_sum_system(b_pts, directions, ring)
    rel_pts = tuple(sorted(b_pts - set(a_pts)))
    a_lines = tuple(enumerate_lines(a_pts, directions))
    rel_lines = tuple(sorted(set(sysB.lines) - set(a_lines)))
    rA = [sysB.line_position[line] for line in a_lines]
    rR = [sysB.line_position[line] for line in rel_lines]
    cA = [sysB.point_position[p] for p in a_pts]
    cR = [sysB.point_position[p] for p in rel_pts]
    M = sysB.matrix
    return RelativeSplit(
        a_points=tuple(a_pts), rel_points=rel_pts, a_lines=a_lines, rel_lines=rel_lines,
        sigma_A=_submatrix(M, rA, cA),
        sigma_rel=_submatrix(M, rR, cR),
        delta_rel=_submatrix(M, rA, cR),
    )


class InterferenceConditions(NamedTuple):
    """The three non-interference conditions, each decided independently."""

    connecting_map_zero: bool
    kernel_surjective: bool
    cokernel_injective: bool


def interference_conditions(B, A, directions, ring: Ring) -> InterferenceConditions:
    if not ring.is_field:
        raise ValueError("interference tests are implemented over fields only")
    split = relative_split(B, A, directions, ring)
    sA, sR, dR = split.sigma_A, split.sigma_rel, split.delta_rel

    # 1: the interference map sends relative switching components into im(sigma_A)
    rel_kernel = right_nullspace(sR)
    solver = LinearSolver(sA)
    cond1 = all(solver.solve(dR.apply(k)) is not None for k in rel_kernel)

    # 2: switching components of B restrict onto all relative switching components
    full = split.assemble()
    nA = len(split.a_points)
    restricted = [k[nA:] for k in right_nullspace(full)]
    if split.rel_points:
        reached = rank(Matrix.from_rows(restricted, ring, len(split.rel_points))) if restricted else 0
    else:
        reached = 0
    cond2 = reached == len(rel_kernel)

    # 3: cok(sigma_A) -> cok(sigma_B) injective, by rank bookkeeping
    cond3 = rank(full) == rank(sA) + rank(sR)
    return InterferenceConditions(cond1, cond2, cond3)


def interference_test(B, A, directions, ring: Ring) -> bool:
    """True when ``B / A`` is non-interfering (the connecting map vanishes)."""
    return interference_conditions(B, A, directions, ring).connecting_map_zero
