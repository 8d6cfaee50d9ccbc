"""Dense exact linear algebra over Z, Q and F_p.

Everything here works on small dense matrices (a few hundred columns at
most) with arbitrary-precision entries.  Pivoting is deterministic: the
first nonzero entry in column order over fields, and the smallest nonzero
entry (ties broken column-major) for the Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .rings import GF, QQ, ZZ, Ring, is_prime


@dataclass(frozen=True)
class Matrix:
    nrows: int
    ncols: int
    entries: tuple
    ring: Ring

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.nrows}x{self.ncols} matrix")

    @classmethod
    def from_rows(cls, rows, ring: Ring, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        entries = tuple(ring(v) for r in rows for v in r)
        return cls(len(rows), ncols, entries, ring)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, ring: Ring) -> "Matrix":
        return cls(nrows, ncols, (ring.zero,) * (nrows * ncols), ring)

    @classmethod
    def identity(cls, n: int, ring: Ring) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], ring)

    @classmethod
    def diagonal(cls, values, ring: Ring) -> "Matrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.ncols] if self.ncols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def transpose(self) -> "Matrix":
        entries = tuple(self.entries[i * self.ncols + j]
                        for j in range(self.ncols) for i in range(self.nrows))
        return Matrix(self.ncols, self.nrows, entries, self.ring)

    def change_ring(self, ring: Ring) -> "Matrix":
        return Matrix(self.nrows, self.ncols, tuple(ring(v) for v in self.entries), ring)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.ncols} columns")
        red = self.ring.reduce
        vec = [self.ring(v) for v in vec]
        out = []
        for i in range(self.nrows):
            row = self.row(i)
            out.append(red(sum((a * b for a, b in zip(row, vec) if a), self.ring.zero)))
        return tuple(out)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        red = self.ring.reduce
        cols = [other.column(j) for j in range(other.ncols)]
        entries = []
        for i in range(self.nrows):
            row = self.row(i)
            for c in cols:
                entries.append(red(sum((a * b for a, b in zip(row, c) if a), self.ring.zero)))
        return Matrix(self.nrows, other.ncols, tuple(entries), self.ring)

    def is_zero(self) -> bool:
        return not any(self.entries)


def _require_field(ring: Ring, what: str):
    if not ring.is_field:
        raise ValueError(f"{what} needs a field; use the integer routines for Z")


def _rref(rows: list[list], ring: Ring, ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Only the first ``ncols`` columns are used for pivoting; any columns past
    that (an augmented block) are carried along.  Returns the pivot columns.
    """
    red = ring.reduce
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        prow = [red(v * inv) for v in rows[r]]
        rows[r] = prow
        support = [k for k, v in enumerate(prow) if v]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                row = rows[i]
                for k in support:
                    row[k] = red(row[k] - f * prow[k])
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over a field and its pivot columns."""
    _require_field(m.ring, "rref")
    rows = m.to_rows()
    pivots = _rref(rows, m.ring, m.ncols)
    return Matrix.from_rows(rows, m.ring, m.ncols), pivots


def rank(m: Matrix) -> int:
    """Rank over the matrix ring's fraction field."""
    if m.ring.is_field:
        rows = m.to_rows()
    else:
        rows = [[Fraction(v) for v in r] for r in m.to_rows()]
    return len(_rref(rows, m.ring if m.ring.is_field else QQ, m.ncols))


def rank_mod_p(m: Matrix, p: int) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m.ring.kind == "Fp" and m.ring.p != p:
        raise ValueError("cannot reduce an F_q matrix modulo a different prime")
    return rank(m.change_ring(GF(p)))


def canonical_basis(vectors: Sequence[Sequence], ring: Ring, length: int) -> list[tuple]:
    """The reduced row echelon basis of the span of ``vectors``."""
    rows = [[ring(v) for v in vec] for vec in vectors]
    piv = _rref(rows, ring, length)
    return [tuple(rows[i]) for i in range(len(piv))]


def right_nullspace(m: Matrix) -> list[tuple]:
    """Basis of ``{x : m x = 0}`` over a field, in reduced row echelon form."""
    _require_field(m.ring, "right_nullspace")
    ring = m.ring
    rows = m.to_rows()
    pivots = _rref(rows, ring, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [ring.zero] * m.ncols
        v[f] = ring.one
        for k, c in enumerate(pivots):
            if rows[k][f]:
                v[c] = ring.reduce(-rows[k][f])
        basis.append(v)
    return canonical_basis(basis, ring, m.ncols)


def left_nullspace(m: Matrix) -> list[tuple]:
    """Basis of ``{y : y m = 0}``; see :func:`right_nullspace`."""
    return right_nullspace(m.transpose())


def nullity(m: Matrix) -> int:
    return m.ncols - rank(m)


def left_nullity(m: Matrix) -> int:
    return m.nrows - rank(m)


def determinant(m: Matrix):
    """Exact determinant (fraction-field elimination); for checks and tests."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = m.ring if m.ring.is_field else QQ
    rows = [[ring(v) for v in r] for r in m.to_rows()]
    n = m.nrows
    det = ring.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return m.ring.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = ring.reduce(-det)
        det = ring.reduce(det * rows[c][c])
        inv = ring.inv(rows[c][c])
        for i in range(c + 1, n):
            f = ring.reduce(rows[i][c] * inv)
            if f:
                rows[i] = [ring.reduce(a - f * b) for a, b in zip(rows[i], rows[c])]
    return m.ring(det)


class SmithForm(NamedTuple):
    """``U @ m @ V`` is diagonal with ``invariant_factors`` leading the diagonal."""

    invariant_factors: tuple
    U: Matrix
    V: Matrix


def smith_normal_form(m: Matrix) -> SmithForm:
    """Smith normal form of an integer matrix with unimodular transforms.

    Returns the nonzero invariant factors ``d_1 | d_2 | ... | d_r`` (all
    positive, ``r`` the rank) together with ``U`` and ``V`` of determinant
    +-1 such that ``U m V`` is the diagonal matrix carrying them.
    """
    if m.ring != ZZ:
        raise ValueError("smith_normal_form works over Z")
    nr, nc = m.nrows, m.ncols
    S = m.to_rows()
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    factors = []
    for t in range(min(nr, nc)):
        best = None
        for j in range(t, nc):
            for i in range(t, nr):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            moved = False
            for i in range(t + 1, nr):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, nc):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            # a nonzero remainder is smaller than the pivot: move it in
            small = None
            for i in range(t + 1, nr):
                if S[i][t] and (small is None or abs(S[i][t]) < small[0]):
                    small = (abs(S[i][t]), "r", i)
            for j in range(t + 1, nc):
                if S[t][j] and (small is None or abs(S[t][j]) < small[0]):
                    small = (abs(S[t][j]), "c", j)
            if small is not None:
                if small[1] == "r":
                    swap_rows(t, small[2])
                else:
                    swap_cols(t, small[2])
                continue
            for i in range(t + 1, nr):
                bad = next((j for j in range(t + 1, nc) if S[i][j] % p), None)
                if bad is not None:
                    add_row(t, i, 1)
                    moved = True
                    break
            if not moved:
                break
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        factors.append(S[t][t])
    return SmithForm(tuple(factors), Matrix.from_rows(U, ZZ, nr),
                     Matrix.from_rows(V, ZZ, nc))


class LinearSolver:
    """Factor ``m`` once and solve ``m x = b`` for many right-hand sides.

    Over a field the particular solution sets every free variable of the
    reduced echelon form to zero.  Over Z the system is solved through the
    Smith normal form and the free Smith coordinates are set to zero; ``None``
    means there is no integral solution.
    """

    def __init__(self, m: Matrix):
        self.matrix = m
        self.ring = m.ring
        if m.ring.is_field:
            ring = m.ring
            n = m.nrows
            rows = [list(m.row(i)) + [ring.one if j == i else ring.zero for j in range(n)]
                    for i in range(n)]
            self.pivots = _rref(rows, ring, m.ncols)
            self.rank = len(self.pivots)
            # transform rows: E m = rref(m)
            self._transform = [[(j, v) for j, v in enumerate(r[m.ncols:]) if v]
                               for r in rows]
        else:
            self.smith = smith_normal_form(m)
            self.rank = len(self.smith.invariant_factors)

    def _dot(self, sparse_row, rhs):
        return self.ring.reduce(sum((v * rhs[j] for j, v in sparse_row), self.ring.zero))

    def solve(self, rhs: Sequence):
        if len(rhs) != self.matrix.nrows:
            raise ValueError(
                f"right-hand side of length {len(rhs)} for {self.matrix.nrows} rows")
        ring = self.ring
        rhs = [ring(v) for v in rhs]
        if ring.is_field:
            for k in range(self.rank, self.matrix.nrows):
                if self._dot(self._transform[k], rhs):
                    return None
            x = [ring.zero] * self.matrix.ncols
            for k, c in enumerate(self.pivots):
                x[c] = self._dot(self._transform[k], rhs)
            return tuple(x)
        d, U, V = self.smith
        y = U.apply(rhs)
        if any(y[self.rank:]):
            return None
        coords = []
        for di, yi in zip(d, y):
            if yi % di:
                return None
            coords.append(yi // di)
        coords += [0] * (self.matrix.ncols - self.rank)
        return V.apply(coords)

    def is_consistent(self, rhs: Sequence) -> bool:
        return self.solve(rhs) is not None


def solve_exact(m: Matrix, rhs: Sequence):
    """Some ``x`` with ``m x = rhs``, or ``None`` when there is none."""
    return LinearSolver(m).solve(rhs)
