"""Command-line front end: ``tomoalg <command> ...``.

Every command prints one canonical JSON document (sorted keys, exact
values, rationals as ``"num/den"``) in a single write.  Exit codes: 0 for
success or a consistent instance, 1 for an inconsistent instance or a
failed verification report, 2 for any input or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .consistency import MODES, SolveOnlyWarning, check_consistency, random_case
from .dependencies import (DecompositionUnavailable, dependency_basis, global_dependency_count,
                           kernel_basis, rank_invariance_report, split_dependencies,
                           verify_hajdu_example)
from .geometry import (ConvexLatticeSet, NonConvexError, as_directions, convex_hull, delta,
                       fitting_translates, is_rounded, rounded_part)
from .instance import (SCHEMA_NAMES, InstanceError, Instance, dumps, linesums_to_json,
                       load_schema, loads_instance, table_to_json, validate, weights_to_json)
from .linalg import rank, right_nullspace
from .rings import QQ, ring_from_json
from .tomography import line_sum_system


class UsageError(Exception):
    pass


def _header(command: str, inst: Instance) -> dict:
    return {"command": command, "ring": inst.ring.label,
            "directions": [list(d) for d in inst.directions]}


def _field(inst: Instance):
    """The field used for basis computations: Q stands in for Z."""
    return inst.ring if inst.ring.is_field else QQ


def _require_convex(inst: Instance, command: str) -> ConvexLatticeSet:
    if not isinstance(inst.region, ConvexLatticeSet):
        raise UsageError(f"{command} needs a lattice-convex region")
    return inst.region


def cmd_deps(inst: Instance, args) -> tuple[dict, int]:
    field = _field(inst)
    system = line_sum_system(inst.region, inst.directions, field)
    basis = dependency_basis(inst.region, inst.directions, field)
    local_dim = rounded_size = None
    if isinstance(inst.region, ConvexLatticeSet):
        try:
            split = split_dependencies(inst.region, inst.directions, field)
        except DecompositionUnavailable:
            pass
        else:
            local_dim = split.local_dim
            rounded_size = len(split.rounded_part)
    out = _header("deps", inst)
    out.update({
        "num_points": len(system.points),
        "num_lines": len(system.lines),
        "rank": rank(system.matrix),
        "dimension": len(basis),
        "global_dim": global_dependency_count(inst.directions),
        "local_dim": local_dim,
        "rounded_part_size": rounded_size,
        "basis_ring": field.label,
        "dependencies": [{"weights": weights_to_json(d.integer_weights(), field)} for d in basis],
    })
    return out, 0


def cmd_check(inst: Instance, args) -> tuple[dict, int]:
    if inst.line_sums is None:
        raise UsageError("field line_sums: required by check")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SolveOnlyWarning)
        verdict = check_consistency(inst.region, inst.directions, inst.line_sums, inst.ring)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    out = _header("check", inst)
    violated = None
    if verdict.violated is not None:
        dep = verdict.violated
        violated = {"weights": weights_to_json(dep.weights, dep.ring),
                    "value": dep.ring.to_json(verdict.violation_value)}
    out.update({
        "status": verdict.status,
        "mode": verdict.mode,
        "witness": table_to_json(verdict.witness) if verdict.witness is not None else None,
        "violated": violated,
    })
    return out, 0 if verdict.consistent else 1


def _corners(poly) -> list:
    return [list(c) for c in poly.corners]


def cmd_kernel(inst: Instance, args) -> tuple[dict, int]:
    A = _require_convex(inst, "kernel")
    field = _field(inst)
    shape = delta(inst.directions)
    translates = fitting_translates(A.hull, shape)
    basis = kernel_basis(A, inst.directions, inst.ring)
    out = _header("kernel", inst)
    out.update({
        "delta": _corners(shape),
        "dimension": len(basis),
        "nullity": len(right_nullspace(line_sum_system(A, inst.directions, field).matrix)),
        "basis": [{"translate": list(x), "table": table_to_json(t)}
                  for x, t in zip(translates, basis)],
    })
    return out, 0


def _point_set(region) -> frozenset:
    return region.points if isinstance(region, ConvexLatticeSet) else frozenset(region)


def cmd_rounded(inst: Instance, args) -> tuple[dict, int]:
    A = _require_convex(inst, "rounded")
    part = rounded_part(A, inst.directions)
    out = _header("rounded", inst)
    out.update({
        "delta": _corners(delta(inst.directions)),
        "is_rounded": is_rounded(A, inst.directions),
        "rounded_part": None if part is None else {
            "points": [list(p) for p in sorted(_point_set(part))],
            "hull": _corners(convex_hull(_point_set(part))),
            "convex": isinstance(part, ConvexLatticeSet)},
    })
    return out, 0


def cmd_ranks(inst: Instance, args) -> tuple[dict, int]:
    primes = tuple(args.primes)
    report = rank_invariance_report(inst.region, inst.directions, primes)
    out = _header("ranks", inst)
    out["primes"] = list(primes)
    out.update(report.to_json())
    return out, 0 if report.passed else 1


def cmd_verify_example(args) -> tuple[dict, int]:
    if args.m < 2 or args.n < 2:
        raise UsageError("--m and --n must be at least 2")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    report = verify_hajdu_example(args.m, args.n, args.trials, args.seed)
    out = {"command": "verify-example"}
    out.update(report.to_json())
    return out, 0 if report.passed else 1


def cmd_gen(args) -> tuple[dict, int]:
    try:
        region = json.loads(args.region)
        ring = ring_from_json(json.loads(args.ring) if args.ring.startswith("{") else args.ring)
        dirs = json.loads(args.directions)
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    skeleton = {"ring": ring.label, "directions": dirs, "region": region}
    validate(skeleton, "instance")
    directions = as_directions(dirs)
    _, p, f = random_case(args.seed, region, directions, args.mode, ring, args.range)
    out = dict(skeleton)
    out["line_sums"] = linesums_to_json(p)
    if args.mode == "image":
        out["table"] = table_to_json(f)
    return out, 0


INSTANCE_COMMANDS = {"deps": cmd_deps, "check": cmd_check, "kernel": cmd_kernel,
                     "rounded": cmd_rounded, "ranks": cmd_ranks}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomoalg", description="Exact line-sum dependencies and consistency checks.")
    parser.add_argument("--schema", nargs="?", const="all", metavar="NAME",
                        help="print the JSON schema NAME (or all schemas) and exit")
    sub = parser.add_subparsers(dest="command")
    for name, text in [("deps", "dependency basis with global/local counts"),
                       ("check", "decide consistency of the instance's line_sums"),
                       ("kernel", "switching-component basis from translates of D"),
                       ("rounded", "rounded part of a convex region"),
                       ("ranks", "ring independence and torsion report")]:
        p = sub.add_parser(name, help=text)
        p.add_argument("instance", help="instance JSON file, or - for stdin")
        if name == "ranks":
            p.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    v = sub.add_parser("verify-example", help="check the seven relations on an m x n grid")
    v.add_argument("--m", type=int, default=6)
    v.add_argument("--n", type=int, default=6)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=1)
    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--region", default='{"type": "rect", "w": 4, "h": 4}',
                   help="region spec as JSON")
    g.add_argument("--directions", default="[[1, 0], [0, 1]]", help="directions as JSON")
    g.add_argument("--ring", default="Q", help='Z, Q or {"Fp": p}')
    g.add_argument("--mode", choices=MODES, default="image")
    g.add_argument("--range", type=int, default=3, help="bound on random values")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv=None) -> tuple[str, int]:
    """Parse ``argv`` and return ``(stdout_text, exit_code)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema is not None:
        if args.schema == "all":
            return dumps({name: load_schema(name) for name in SCHEMA_NAMES}), 0
        if args.schema not in SCHEMA_NAMES:
            raise UsageError(f"unknown schema {args.schema!r}; choose from {SCHEMA_NAMES}")
        return dumps(load_schema(args.schema)), 0
    if args.command is None:
        raise UsageError("no command given")
    if args.command in INSTANCE_COMMANDS:
        try:
            text = _read(args.instance)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        inst = loads_instance(text)
        out, code = INSTANCE_COMMANDS[args.command](inst, args)
    elif args.command == "verify-example":
        out, code = cmd_verify_example(args)
    else:
        out, code = cmd_gen(args)
    validate(out, "instance" if args.command == "gen" else args.command)
    return dumps(out), code


def main(argv=None) -> int:
    try:
        text, code = run(argv)
    except SystemExit as exc:  # argparse errors
        return 2 if exc.code else 0
    except (UsageError, InstanceError, NonConvexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
