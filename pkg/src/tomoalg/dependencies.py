"""Switching components, dependencies and their global/local structure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

from .geometry import (ConvexLatticeSet, as_directions, delta, det,
                       fitting_translates, rounded_part)
from .laurent import kernel_polynomial, reduced_annihilator
from .linalg import Matrix, left_nullspace, nullity, left_nullity, rank, smith_normal_form
from .rings import GF, QQ, ZZ, Ring, is_prime
from .rng import SplitMix64
from .tomography import (LineId, LineSumVector, Table, line_index,
                         line_sum_system, project, relative_split)


class InconclusiveError(ValueError):
    """The region is too narrow to test a recurrence in some direction."""


class DecompositionUnavailable(ValueError):
    """The rounded part is empty, so there is no global/local split."""


def as_convex(A) -> ConvexLatticeSet:
    if isinstance(A, ConvexLatticeSet):
        return A
    return ConvexLatticeSet.from_points(A)


@dataclass(frozen=True)
class Dependency:
    """Weights on lines whose pairing with every projection vanishes."""

    weights: Mapping
    region: frozenset
    directions: tuple
    ring: Ring

    def __post_init__(self):
        clean = {LineId(*k): self.ring(v) for k, v in self.weights.items() if v}
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    def __call__(self, p: LineSumVector):
        ring = self.ring
        return ring.reduce(sum((w * ring(p[line]) for line, w in self.weights.items()),
                               ring.zero))

    def weight(self, line):
        return self.weights.get(LineId(*line), self.ring.zero)

    def sequence(self, i: int) -> dict:
        """Weights on the lines of direction ``i``, keyed by line index."""
        return {line.index: w for line, w in self.weights.items() if line.dir_index == i}

    def is_valid(self) -> bool:
        """Whether the weights through every point of the region sum to zero."""
        ring = self.ring
        for p in self.region:
            s = sum((self.weight((i, line_index(p, d))) for i, d in enumerate(self.directions)),
                    ring.zero)
            if ring.reduce(s):
                return False
        return True

    def integer_weights(self) -> dict:
        """Weights scaled to a primitive integer vector (residues for F_p)."""
        if self.ring.kind == "Fp":
            return {k: int(v) for k, v in self.weights.items()}
        vals = [Fraction(v) for v in self.weights.values()]
        if not vals:
            return {}
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = gcd(*ints)
        first = ints[0]
        sign = -1 if first < 0 else 1
        return {k: sign * v // g for k, v in zip(self.weights, ints)}


@dataclass(frozen=True)
class DependencyDecomposition:
    total_dim: int
    global_dim: int
    local_dim: int
    rounded_part: ConvexLatticeSet | frozenset | None


def global_dependency_count(directions) -> int:
    """Sum of ``|det(d_i, d_j)|`` over pairs: the rank of the global cokernel."""
    dirs = as_directions(directions)
    return sum(abs(det(dirs[i], dirs[j]))
               for i in range(len(dirs)) for j in range(i + 1, len(dirs)))


def kernel_basis(A, directions, ring: Ring) -> list[Table]:
    """Translates ``x * D`` of the kernel generator that fit inside H(A).

    Ordered by the translation vector ``x``.  Over any ring these form a
    basis of the switching components supported in the convex set ``A``.
    """
    A = as_convex(A)
    dirs = as_directions(directions)
    D = kernel_polynomial(dirs, ring)
    return [Table.from_poly(D.translate(x)) for x in fitting_translates(A.hull, delta(dirs))]


def dependency_basis(A, directions, ring: Ring) -> list[Dependency]:
    """Reduced echelon basis of all dependencies on ``A`` over a field."""
    if not ring.is_field:
        raise ValueError("dependency_basis needs a field")
    system = line_sum_system(A, directions, ring)
    region = frozenset(system.points)
    return [Dependency(dict(zip(system.lines, vec)), region, system.directions, ring)
            for vec in left_nullspace(system.matrix)]


def split_dependencies(A, directions, ring: Ring) -> DependencyDecomposition:
    A = as_convex(A)
    dirs = as_directions(directions)
    if not ring.is_field:
        raise ValueError("split_dependencies needs a field")
    rp = rounded_part(A, dirs)
    if rp is None:
        raise DecompositionUnavailable("no translate of delta fits: decomposition unavailable")
    total = left_nullity(line_sum_system(A, dirs, ring).matrix)
    split = relative_split(A, rp, dirs, ring)
    local = len(split.rel_lines) - (rank(split.sigma_rel) if split.rel_lines else 0)
    glob = global_dependency_count(dirs)
    if total != glob + local:
        raise ArithmeticError(
            f"dependency dimension {total} != {glob} global + {local} local")
    return DependencyDecomposition(total, glob, local, rp)


def recurrence_check(dep: Dependency, directions, i: int) -> bool:
    """Check the weight sequence of direction ``i`` against the reduced annihilator.

    Every window of consecutive line indices covering the annihilator's
    exponent range, and lying entirely within the lines of the region, is
    tested.  Raises :class:`InconclusiveError` when no such window exists.
    """
    dirs = as_directions(directions)
    ann = reduced_annihilator(dirs, i)
    coeffs = [(n, dep.ring(a)) for n, a in ann.terms.items()]
    lo, hi = ann.min_exp, ann.max_exp
    present = {line_index(p, dirs[i]) for p in dep.region}
    seq = dep.sequence(i)
    windows = [m for m in range(min(present) - lo, max(present) - lo + 1)
               if all(m + n in present for n in range(lo, hi + 1))]
    if not windows:
        raise InconclusiveError(
            f"direction {i}: no {hi - lo + 1} consecutive lines inside the region")
    ring = dep.ring
    zero = ring.zero
    return all(
        not ring.reduce(sum((a * seq.get(m + n, zero) for n, a in coeffs), zero))
        for m in windows)


# -- worked example: rows, columns, diagonals and anti-diagonals ------------

HAJDU_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1))

# The relation families, written against row sums r_j, column sums s_i,
# diagonal sums t_h and anti-diagonal sums u_h of an m x n rectangle.
# Each entry gives per-family coefficient functions of the label.
_FAMILIES = {
    "equal_totals": [
        {"r": lambda j: 1, "s": lambda i: -1},
        {"s": lambda i: 1, "t": lambda h: -1},
        {"t": lambda h: 1, "u": lambda h: -1},
    ],
    "odd_diagonals": [
        {"t": lambda h: h % 2, "u": lambda h: -(h % 2)},
    ],
    "first_moment_diagonal": [
        {"r": lambda j: -j, "s": lambda i: i, "t": lambda h: -h},
    ],
    "first_moment_antidiagonal": [
        {"r": lambda j: j, "s": lambda i: i, "u": lambda h: -h},
    ],
    "second_moment": [
        {"r": lambda j: 2 * j * j, "s": lambda i: 2 * i * i,
         "t": lambda h: -h * h, "u": lambda h: -h * h},
    ],
}


def _hajdu_labels(m: int, n: int) -> dict:
    """Label -> LineId translation for each family of line sums.

    Row ``r_j`` is the (1,0)-line ``j``; column ``s_i`` the (0,1)-line
    ``-i``; the diagonal ``t_h`` holds the points with ``i - j = h``, which
    is the (1,1)-line ``-h``; the anti-diagonal ``u_h`` holds ``i + j = h``,
    the (1,-1)-line ``h``.
    """
    return {
        "r": [(j, LineId(0, j)) for j in range(n)],
        "s": [(i, LineId(1, -i)) for i in range(m)],
        "t": [(h, LineId(2, -h)) for h in range(-(n - 1), m)],
        "u": [(h, LineId(3, h)) for h in range(m + n - 1)],
    }


def hajdu_relations(m: int, n: int) -> dict[str, list[Dependency]]:
    """The displayed relation families on the ``m x n`` rectangle, over Q."""
    labels = _hajdu_labels(m, n)
    region = frozenset((i, j) for i in range(m) for j in range(n))
    dirs = as_directions(HAJDU_DIRECTIONS)
    out = {}
    for name, specs in _FAMILIES.items():
        deps = []
        for spec in specs:
            w = {}
            for fam, coef in spec.items():
                for label, line in labels[fam]:
                    w[line] = w.get(line, 0) + coef(label)
            deps.append(Dependency(w, region, dirs, QQ))
        out[name] = deps
    return out


@dataclass(frozen=True)
class HajduReport:
    m: int
    n: int
    trials: int
    seed: int
    failures: Mapping
    functional_rank: int
    dependency_dim: int
    annihilate_matrix: bool
    spans: bool
    smallest_spanning_size: int | None

    @property
    def all_hold(self) -> bool:
        return not any(self.failures.values())

    @property
    def passed(self) -> bool:
        return self.all_hold and self.annihilate_matrix and self.spans

    def to_json(self) -> dict:
        return {
            "m": self.m, "n": self.n, "trials": self.trials, "seed": self.seed,
            "families": {k: {"failures": v, "holds": v == 0}
                         for k, v in self.failures.items()},
            "all_relations_hold": self.all_hold,
            "annihilate_line_sum_matrix": self.annihilate_matrix,
            "functional_rank": self.functional_rank,
            "dependency_dim": self.dependency_dim,
            "spans_dependency_space": self.spans,
            "smallest_spanning_square": self.smallest_spanning_size,
            "passed": self.passed,
        }


def _span_check(m: int, n: int):
    rels = [d for deps in hajdu_relations(m, n).values() for d in deps]
    system = line_sum_system(rels[0].region, HAJDU_DIRECTIONS, QQ)
    W = Matrix.from_rows([[d.weight(line) for line in system.lines] for d in rels],
                         QQ, len(system.lines))
    annihilate = (W @ system.matrix).is_zero()
    frank = rank(W)
    dim = left_nullity(system.matrix)
    return annihilate, frank, dim, annihilate and frank == dim == len(rels)


def verify_hajdu_example(m: int, n: int, trials: int, seed: int,
                         value_range: int = 9) -> HajduReport:
    """Check the displayed relations on random integer tables and their span.

    ``spans`` means the seven functionals are independent and fill the whole
    dependency space; ``smallest_spanning_size`` is the least square side in
    ``2..max(m, n)`` for which that holds.
    """
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    rels = hajdu_relations(m, n)
    rng = SplitMix64(seed)
    pts = [(i, j) for i in range(m) for j in range(n)]
    failures = {name: 0 for name in rels}
    for _ in range(trials):
        f = Table({p: rng.randint(-value_range, value_range) for p in pts}, QQ)
        proj = project(f, HAJDU_DIRECTIONS)
        for name, deps in rels.items():
            if any(dep(proj) for dep in deps):
                failures[name] += 1
    annihilate, frank, dim, spans = _span_check(m, n)
    smallest = next((s for s in range(2, max(m, n) + 1) if _span_check(s, s)[3]), None)
    return HajduReport(m, n, trials, seed, failures, frank, dim, annihilate, spans, smallest)


# -- ring independence --------------------------------------------------------

@dataclass(frozen=True)
class RankReport:
    nullity: Mapping
    left_nullity: Mapping
    invariant_factors: tuple

    @property
    def ranks_agree(self) -> bool:
        return len(set(self.nullity.values())) == 1 and len(set(self.left_nullity.values())) == 1

    @property
    def torsion_free(self) -> bool:
        return all(d == 1 for d in self.invariant_factors)

    @property
    def passed(self) -> bool:
        return self.ranks_agree and self.torsion_free

    def to_json(self) -> dict:
        return {
            "nullity": dict(self.nullity),
            "left_nullity": dict(self.left_nullity),
            "invariant_factors_all_one": self.torsion_free,
            "nontrivial_invariant_factors": [d for d in self.invariant_factors if d != 1],
            "ranks_agree": self.ranks_agree,
            "passed": self.passed,
        }


def rank_invariance_report(A, directions, primes=(2, 3, 5)) -> RankReport:
    """Kernel and cokernel dimensions over Q and each F_p, plus the Z torsion check."""
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    base = line_sum_system(A, directions, ZZ).matrix
    nul, lnul = {}, {}
    for ring in [QQ] + [GF(p) for p in primes]:
        m = base.change_ring(ring)
        nul[str(ring)] = nullity(m)
        lnul[str(ring)] = left_nullity(m)
    return RankReport(nul, lnul, smith_normal_form(base).invariant_factors)
