"""Deciding whether line sums come from a table, with witnesses.

On a finite convex region a vector of line sums is the projection of a
table exactly when every dependency vanishes on it, over Z as well as over
fields.  The checker evaluates a cached dependency basis and then produces
a witness table by a direct solve.  Outside convex regions the equivalence
over Z is not guaranteed, so those verdicts are labelled ``solve-based``.
"""

from __future__ import annotations

import hashlib
import json
import threading
import warnings
from dataclasses import dataclass
from typing import Callable

from .dependencies import Dependency, dependency_basis
from .geometry import as_directions, is_convex
from .rings import QQ, Ring
from .rng import SplitMix64
from .tomography import (LineSumSystem, LineSumVector, Table, _points_of, enumerate_lines,
                         line_sum_system, project)


class SolveOnlyWarning(UserWarning):
    pass


class GeometryCache:
    """Thread-safe get-or-compute map keyed by a content hash."""

    def __init__(self):
        self._lock = threading.Lock()
        self._key_locks: dict[str, threading.Lock] = {}
        self._values: dict[str, object] = {}

    @staticmethod
    def key(points, directions, ring: Ring) -> str:
        blob = json.dumps([sorted(map(list, points)), [list(d) for d in directions],
                           ring.label], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def get_or_compute(self, key: str, compute: Callable):
        with self._lock:
            if key in self._values:
                return self._values[key]
            lock = self._key_locks.setdefault(key, threading.Lock())
        with lock:
            with self._lock:
                if key in self._values:
                    return self._values[key]
            value = compute()
            with self._lock:
                self._values[key] = value
                self._key_locks.pop(key, None)
            return value

    def clear(self):
        with self._lock:
            self._values.clear()

    def __len__(self):
        return len(self._values)


_cache = GeometryCache()


@dataclass(frozen=True)
class _Prepared:
    system: LineSumSystem
    basis: list  # dependencies over the ring, or over Q (as integer vectors) for Z
    convex: bool


def _prepare(points, dirs, ring: Ring) -> _Prepared:
    def compute():
        system = line_sum_system(points, dirs, ring)
        if ring.is_field:
            basis = dependency_basis(points, dirs, ring)
        else:
            basis = [Dependency(d.integer_weights(), d.region, d.directions, ring)
                     for d in dependency_basis(points, dirs, QQ)]
        system.solver  # factor now, inside the lock
        return _Prepared(system, basis, is_convex(points))
    return _cache.get_or_compute(GeometryCache.key(points, dirs, ring), compute)


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    witness: Table | None
    violated: Dependency | None
    violation_value: object
    mode: str  # "dependency" or "solve-based"

    @property
    def status(self) -> str:
        return "Consistent" if self.consistent else "Inconsistent"


def check_consistency(A, directions, p: LineSumVector, ring: Ring) -> ConsistencyVerdict:
    """Decide whether ``p`` is the projection of a table on ``A``.

    Lines of ``A`` missing from ``p`` count as zero; entries on lines that
    miss ``A`` are an error.
    """
    dirs = as_directions(directions)
    points = tuple(_points_of(A))
    if p.ring != ring:
        p = LineSumVector(p.entries, ring)
    prep = _prepare(points, dirs, ring)
    vec = prep.system.linesum_vector(p)
    if not prep.convex:
        warnings.warn("region is not convex: falling back to a direct solve",
                      SolveOnlyWarning, stacklevel=2)
        return _solve_based(prep, p, vec, ring)
    for dep in prep.basis:
        value = dep(p)
        if value:
            return ConsistencyVerdict(False, None, dep, value, "dependency")
    x = prep.system.solver.solve(vec)
    if x is None:
        raise ArithmeticError("all dependencies vanish but the system has no solution")
    return ConsistencyVerdict(True, prep.system.table(x), None, None, "dependency")


def _solve_based(prep: _Prepared, p, vec, ring: Ring) -> ConsistencyVerdict:
    x = prep.system.solver.solve(vec)
    if x is not None:
        return ConsistencyVerdict(True, prep.system.table(x), None, None, "solve-based")
    for dep in prep.basis:
        value = dep(p)
        if value:
            return ConsistencyVerdict(False, None, dep, value, "solve-based")
    return ConsistencyVerdict(False, None, None, None, "solve-based")


def reconstruct(A, directions, p: LineSumVector, ring: Ring) -> Table | None:
    """A table on ``A`` with line sums ``p`` (free variables zero), or None."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SolveOnlyWarning)
        return check_consistency(A, directions, p, ring).witness


def direct_solve_consistent(A, directions, p: LineSumVector, ring: Ring) -> bool:
    """Consistency by solving the linear system alone, ignoring dependencies."""
    prep = _prepare(tuple(_points_of(A)), as_directions(directions), ring)
    return prep.system.solver.solve(prep.system.linesum_vector(p)) is not None


MODES = ("image", "perturbed", "uniform")


def random_instance(seed: int, region, directions, mode: str, ring: Ring = QQ,
                    value_range: int = 3):
    """A seeded pair ``(A, p)`` of a region and a vector of line sums.

    ``region`` is a region spec dict (see :mod:`tomoalg.instance`) or a point
    set.  ``image`` projects a random table, ``perturbed`` adds +-1 to one
    line of such a projection, ``uniform`` draws every line sum
    independently from ``[-value_range, value_range]``.
    """
    A, p, _ = random_case(seed, region, directions, mode, ring, value_range)
    return A, p


def random_case(seed: int, region, directions, mode: str, ring: Ring = QQ,
                value_range: int = 3):
    """Like :func:`random_instance`, also returning the table behind ``p``.

    The table is None in ``uniform`` mode.
    """
    from .instance import region_from_spec

    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    dirs = as_directions(directions)
    A = region_from_spec(region) if isinstance(region, dict) else region
    points = _points_of(A)
    lines = enumerate_lines(points, dirs)
    rng = SplitMix64(seed)
    if mode == "uniform":
        return A, LineSumVector(
            {line: rng.randint(-value_range, value_range) for line in lines}, ring), None
    f = Table({q: rng.randint(-value_range, value_range) for q in points}, ring)
    p = project(f, dirs)
    if mode == "perturbed":
        line = rng.choice(lines)
        bump = rng.choice((-1, 1))
        entries = dict(p.entries)
        entries[line] = ring.reduce(entries.get(line, ring.zero) + ring(bump))
        p = LineSumVector(entries, ring)
    return A, p, f


def clear_cache():
    _cache.clear()

