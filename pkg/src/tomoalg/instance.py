"""The JSON instance format: parsing, validation and canonical serialization.

An instance names a ring, a list of directions and a region, and may carry
a table and/or a vector of line sums::

    {"ring": "Q", "directions": [[1, 0], [0, 1]],
     "region": {"type": "rect", "w": 3, "h": 2},
     "table": [[0, 0, 1], [2, 1, "1/2"]],
     "line_sums": [{"dir": 0, "line": 0, "value": 3}]}

Values are JSON integers or ``"num/den"`` strings.  Rejections raise
:class:`InstanceError` with a message naming the offending field or line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema

from .geometry import ConvexLatticeSet, as_directions, is_convex
from .rings import Ring, ring_from_json
from .tomography import LineId, LineSumVector, Table, _points_of

SCHEMA_NAMES = ("instance", "deps", "check", "kernel", "rounded", "ranks", "verify-example")


class InstanceError(ValueError):
    pass


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(name)
    text = resources.files("tomoalg").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(obj, name: str):
    """Raise InstanceError if ``obj`` does not match the named schema."""
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        where = "/".join(map(str, err.absolute_path)) or "<root>"
        raise InstanceError(f"field {where}: {err.message}")


def region_from_spec(spec: dict):
    """A ConvexLatticeSet, or a frozenset of points for non-convex explicit sets."""
    kind = spec.get("type")
    if kind == "rect":
        w, h = spec["w"], spec["h"]
        if w < 1 or h < 1:
            raise InstanceError("field region: rectangle sides must be positive")
        return ConvexLatticeSet.rectangle(w, h)
    if kind == "hull":
        return ConvexLatticeSet.from_hull([tuple(p) for p in spec["points"]])
    if kind == "explicit":
        pts = frozenset(tuple(p) for p in spec["points"])
        if not pts:
            raise InstanceError("field region/points: empty point set")
        return ConvexLatticeSet.from_points(pts) if is_convex(pts) else pts
    raise InstanceError(f"field region/type: unknown region type {kind!r}")


def parse_value(v, ring: Ring):
    if isinstance(v, str):
        return ring(Fraction(v))
    return ring(v)


@dataclass(frozen=True)
class Instance:
    ring: Ring
    directions: tuple
    region: object
    region_spec: dict
    table: Table | None = None
    line_sums: LineSumVector | None = None

    @property
    def points(self) -> list:
        return _points_of(self.region)

    def to_json(self) -> dict:
        out = {"ring": self.ring.label,
               "directions": [list(d) for d in self.directions],
               "region": self.region_spec}
        if self.table is not None:
            out["table"] = table_to_json(self.table)
        if self.line_sums is not None:
            out["line_sums"] = linesums_to_json(self.line_sums)
        return out


def parse_instance(obj) -> Instance:
    validate(obj, "instance")
    try:
        ring = ring_from_json(obj["ring"])
    except ValueError as exc:
        raise InstanceError(f"field ring: {exc}") from None
    try:
        dirs = as_directions(obj["directions"])
    except ValueError as exc:
        raise InstanceError(f"field directions: {exc}") from None
    try:
        region = region_from_spec(obj["region"])
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(f"field region: {exc}") from None
    points = set(_points_of(region))

    table = None
    if "table" in obj:
        values = {}
        for k, (x, y, v) in enumerate(obj["table"]):
            if (x, y) not in points:
                raise InstanceError(f"field table/{k}: point ({x}, {y}) is outside the region")
            if (x, y) in values:
                raise InstanceError(f"field table/{k}: duplicate point ({x}, {y})")
            values[(x, y)] = _value(v, ring, f"table/{k}/2")
        table = Table(values, ring)

    line_sums = None
    if "line_sums" in obj:
        entries = {}
        for k, item in enumerate(obj["line_sums"]):
            if item["dir"] >= len(dirs):
                raise InstanceError(f"field line_sums/{k}/dir: no direction {item['dir']}")
            line = LineId(item["dir"], item["line"])
            if line in entries:
                raise InstanceError(f"field line_sums/{k}: duplicate line {tuple(line)}")
            entries[line] = _value(item["value"], ring, f"line_sums/{k}/value")
        line_sums = LineSumVector(entries, ring)

    return Instance(ring, dirs, region, obj["region"], table, line_sums)


def _value(v, ring: Ring, where: str):
    try:
        return parse_value(v, ring)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        raise InstanceError(f"field {where}: {exc}") from None


def loads_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(obj)


def table_to_json(f: Table) -> list:
    return [[x, y, f.ring.to_json(v)] for (x, y), v in f.values.items()]


def linesums_to_json(p: LineSumVector) -> list:
    return [{"dir": line.dir_index, "line": line.index, "value": p.ring.to_json(v)}
            for line, v in p.entries.items()]


def weights_to_json(weights: dict, ring: Ring) -> list:
    return [{"dir": line.dir_index, "line": line.index, "value": ring.to_json(v)}
            for line, v in sorted(weights.items())]


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
