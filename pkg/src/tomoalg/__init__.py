"""Exact algebraic tools for discrete tomography on the integer lattice.

Tables on finite lattice sets, their line sums in chosen directions, the
switching components and dependencies of the line-sum map over Z, Q and
F_p, and a consistency checker built on them.
"""

from .consistency import ConsistencyVerdict, check_consistency, random_instance, reconstruct
from .dependencies import (Dependency, DependencyDecomposition, dependency_basis,
                           global_dependency_count, kernel_basis, rank_invariance_report,
                           recurrence_check, split_dependencies, verify_hajdu_example)
from .geometry import ConvexLatticeSet, Direction, delta, rounded_part
from .laurent import LaurentPoly1, LaurentPoly2, apply_ring_map, reduced_annihilator
from .rings import GF, QQ, ZZ, Ring
from .tomography import LineId, LineSumVector, Table, line_sum_system, project

__version__ = "0.1.0"

__all__ = [
    "ConsistencyVerdict", "ConvexLatticeSet", "Dependency", "DependencyDecomposition",
    "Direction", "GF", "LaurentPoly1", "LaurentPoly2", "LineId", "LineSumVector", "QQ", "Ring",
    "Table", "ZZ", "apply_ring_map", "check_consistency", "delta", "dependency_basis",
    "global_dependency_count", "kernel_basis", "line_sum_system", "project",
    "random_instance", "rank_invariance_report", "reconstruct", "recurrence_check",
    "reduced_annihilator", "rounded_part", "split_dependencies", "verify_hajdu_example",
]
