"""JSON instance files.

Rationals are written as integer strings or ``"p/q"`` strings (plain JSON
integers are accepted too); floats are rejected everywhere. Example::

    {
      "version": 1,
      "family": {"type": "clustering", "points": [["0"], ["1"], ["4"], ["5"]], "p": 2, "m": 2},
      "objective": {"type": "squared_l2"},
      "options": {"jobs": 1}
    }

Family types: ``powerset`` {n}; ``matroid`` {variant: uniform {n, rank} |
graphic {vertices, edges} | linear {matrix (rows)}, mode: bases |
independent_sets}; ``shaped_partition`` {points, p, lower, upper};
``clustering`` {points, p, m}. Power set and matroid instances need an
explicit ``weighting`` (n rows of d rationals); partition families derive
theirs from the points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Callable

from .families.matroid import MatroidSpec, matroid_family
from .families.partition import (
    ShapedPartitionInstance,
    clustering_to_instance,
    decode,
    partition_family,
    partition_weighting,
)
from .families.powerset import powerset_family
from .numeric import format_rational, rational
from .oracles import EdgeGuaranteedFamily, Subset
from .reduce import ConvexObjective, VectorWeighting

FORMAT_VERSION = 1


class InstanceError(ValueError):
    """Malformed instance file; ``location`` points at the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class Options:
    unrestricted: bool = False
    jobs: int = 1
    max_n: int = 14
    max_members: int = 2**20


@dataclass(frozen=True)
class PowersetBlock:
    n: int


@dataclass(frozen=True)
class MatroidBlock:
    spec: MatroidSpec


@dataclass(frozen=True)
class PartitionBlock:
    instance: ShapedPartitionInstance


@dataclass(frozen=True)
class ClusteringBlock:
    points: tuple
    p: int
    m: int


@dataclass(frozen=True)
class Instance:
    family: Any
    objective: ConvexObjective
    weighting: VectorWeighting | None = None
    options: Options = field(default_factory=Options)
    version: int = FORMAT_VERSION


@dataclass
class Problem:
    """Everything needed to run a solve."""

    family: EdgeGuaranteedFamily
    weighting: VectorWeighting
    objective: ConvexObjective
    describe: Callable[[Subset], dict]


# -- parsing -----------------------------------------------------------------


def _get(obj: dict, key: str, loc: str, kind=None, required=True, default=None):
    if not isinstance(obj, dict):
        raise InstanceError(loc, "expected an object")
    if key not in obj:
        if required:
            raise InstanceError(f"{loc}.{key}", "missing field")
        return default
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InstanceError(f"{loc}.{key}", f"expected an integer, got {value!r}")
    if kind is bool and not isinstance(value, bool):
        raise InstanceError(f"{loc}.{key}", f"expected true/false, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise InstanceError(f"{loc}.{key}", "expected a list")
    return value


def _rat(value, loc: str):
    if isinstance(value, float):
        raise InstanceError(loc, f"float {value!r} not allowed; write rationals as strings like \"1/2\"")
    try:
        return rational(value)
    except (ValueError, TypeError) as exc:
        raise InstanceError(loc, str(exc)) from None


def _rat_rows(rows, loc: str) -> tuple:
    if not isinstance(rows, list) or not rows:
        raise InstanceError(loc, "expected a nonempty list of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise InstanceError(f"{loc}[{i}]", "expected a nonempty list of rationals")
        out.append(tuple(_rat(v, f"{loc}[{i}][{j}]") for j, v in enumerate(row)))
    if len({len(r) for r in out}) != 1:
        raise InstanceError(loc, "rows have different lengths")
    return tuple(out)


def _int_list(values, loc: str) -> tuple:
    if not isinstance(values, list):
        raise InstanceError(loc, "expected a list of integers")
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceError(f"{loc}[{i}]", f"expected an integer, got {v!r}")
    return tuple(values)


def _parse_family(block, loc: str):
    kind = _get(block, "type", loc)
    try:
        if kind == "powerset":
            n = _get(block, "n", loc, int)
            if n < 1:
                raise InstanceError(f"{loc}.n", "must be positive")
            return PowersetBlock(n)
        if kind == "matroid":
            variant = _get(block, "variant", loc)
            mode = _get(block, "mode", loc, default="bases", required=False)
            if variant == "uniform":
                spec = MatroidSpec.uniform(_get(block, "n", loc, int), _get(block, "rank", loc, int), mode)
            elif variant == "graphic":
                edges = _get(block, "edges", loc, list)
                pairs = []
                for i, e in enumerate(edges):
                    e = _int_list(e, f"{loc}.edges[{i}]")
                    if len(e) != 2:
                        raise InstanceError(f"{loc}.edges[{i}]", "an edge is a pair of vertices")
                    pairs.append(e)
                spec = MatroidSpec.graphic(_get(block, "vertices", loc, int), pairs, mode)
            elif variant == "linear":
                rows = _rat_rows(_get(block, "matrix", loc), f"{loc}.matrix")
                spec = MatroidSpec.linear(list(zip(*rows)), mode)
            else:
                raise InstanceError(f"{loc}.variant", f"unknown matroid variant {variant!r}")
            return MatroidBlock(spec)
        if kind == "shaped_partition":
            pts = _rat_rows(_get(block, "points", loc), f"{loc}.points")
            p = _get(block, "p", loc, int)
            lower = _int_list(_get(block, "lower", loc, required=False, default=[0] * p), f"{loc}.lower")
            upper = _int_list(_get(block, "upper", loc, required=False, default=[len(pts)] * p), f"{loc}.upper")
            return PartitionBlock(ShapedPartitionInstance(pts, p, lower, upper))
        if kind == "clustering":
            pts = _rat_rows(_get(block, "points", loc), f"{loc}.points")
            p, m = _get(block, "p", loc, int), _get(block, "m", loc, int)
            if p < 1 or m < 1 or len(pts) != p * m:
                raise InstanceError(loc, f"clustering needs p*m = number of points ({len(pts)})")
            return ClusteringBlock(pts, p, m)
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(loc, str(exc)) from None
    raise InstanceError(f"{loc}.type", f"unknown family type {kind!r}")


def _parse_objective(block, loc: str) -> ConvexObjective:
    kind = _get(block, "type", loc)
    if kind == "squared_l2":
        return ConvexObjective.squared_l2()
    if kind == "max_coordinate":
        return ConvexObjective.max_coordinate()
    if kind == "linear":
        a = _get(block, "a", loc, list)
        if not a:
            raise InstanceError(f"{loc}.a", "empty coefficient vector")
        return ConvexObjective.linear([_rat(v, f"{loc}.a[{i}]") for i, v in enumerate(a)])
    raise InstanceError(f"{loc}.type", f"unknown objective {kind!r}")


def _ground_size(family) -> tuple[int, int | None]:
    """(n, implied d) for a family block; d is None when a weighting must be given."""
    if isinstance(family, PowersetBlock):
        return family.n, None
    if isinstance(family, MatroidBlock):
        return family.spec.n, None
    if isinstance(family, PartitionBlock):
        inst = family.instance
        return inst.n * inst.p, inst.d * inst.p
    return len(family.points) * family.p, len(family.points[0]) * family.p


def parse_instance(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("$", "instance must be a JSON object")
    version = _get(data, "version", "$", int, required=False, default=FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InstanceError("$.version", f"unsupported version {version}")
    family = _parse_family(_get(data, "family", "$"), "$.family")
    objective = _parse_objective(_get(data, "objective", "$"), "$.objective")
    n, implied_d = _ground_size(family)

    weighting = None
    if "weighting" in data:
        if implied_d is not None:
            raise InstanceError("$.weighting", "this family derives its weighting from the points; omit it")
        weighting = VectorWeighting(_rat_rows(data["weighting"], "$.weighting"))
        if weighting.n != n:
            raise InstanceError("$.weighting", f"expected {n} rows (one per element), got {weighting.n}")
        d = weighting.d
    elif implied_d is None:
        raise InstanceError("$.weighting", "missing field")
    else:
        d = implied_d
    if objective.kind == "linear" and len(objective.a) != d:
        raise InstanceError("$.objective.a", f"expected {d} coefficients, got {len(objective.a)}")

    opts = _get(data, "options", "$", required=False, default={})
    budget = _get(opts, "budget", "$.options", required=False, default={})
    options = Options(
        unrestricted=_get(opts, "unrestricted", "$.options", bool, required=False, default=False),
        jobs=_get(opts, "jobs", "$.options", int, required=False, default=1),
        max_n=_get(budget, "max_n", "$.options.budget", int, required=False, default=14),
        max_members=_get(budget, "max_members", "$.options.budget", int, required=False, default=2**20),
    )
    if options.jobs < 1 or options.max_n < 1 or options.max_members < 1:
        raise InstanceError("$.options", "jobs and budget caps must be positive")
    return Instance(family, objective, weighting, options, version)


def load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InstanceError(path, "file not found") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_instance(data)


# -- serialization -----------------------------------------------------------


def _rows_out(rows) -> list:
    return [[format_rational(v) for v in r] for r in rows]


def dump_instance(inst: Instance) -> dict:
    fam = inst.family
    if isinstance(fam, PowersetBlock):
        fblock = {"type": "powerset", "n": fam.n}
    elif isinstance(fam, MatroidBlock):
        s = fam.spec
        fblock = {"type": "matroid", "variant": s.variant, "mode": s.mode}
        if s.variant == "uniform":
            fblock.update(n=s.n, rank=s.rank)
        elif s.variant == "graphic":
            fblock.update(vertices=s.vertex_count, edges=[list(e) for e in s.edges])
        else:
            fblock.update(matrix=_rows_out(zip(*s.columns)))
    elif isinstance(fam, PartitionBlock):
        p = fam.instance
        fblock = {"type": "shaped_partition", "points": _rows_out(p.points), "p": p.p,
                  "lower": list(p.lower), "upper": list(p.upper)}
    else:
        fblock = {"type": "clustering", "points": _rows_out(fam.points), "p": fam.p, "m": fam.m}
    obj = {"type": inst.objective.kind}
    if inst.objective.kind == "linear":
        obj["a"] = [format_rational(v) for v in inst.objective.a]
    out = {"version": inst.version, "family": fblock}
    if inst.weighting is not None:
        out["weighting"] = _rows_out(inst.weighting.rows)
    o = inst.options
    out["objective"] = obj
    out["options"] = {"unrestricted": o.unrestricted, "jobs": o.jobs,
                      "budget": {"max_n": o.max_n, "max_members": o.max_members}}
    return out


# -- building ----------------------------------------------------------------


def build_problem(inst: Instance) -> Problem:
    """Turn a parsed instance into a family, weighting and objective.

    Raises :class:`~convexcomb.errors.InfeasibleError` for empty families.
    """
    fam = inst.family
    objective = inst.objective
    if isinstance(fam, (PowersetBlock, MatroidBlock)):
        family = powerset_family(fam.n) if isinstance(fam, PowersetBlock) else matroid_family(fam.spec)
        return Problem(family, inst.weighting, objective, lambda F: {})

    if isinstance(fam, ClusteringBlock):
        shaped, _ = clustering_to_instance(fam.points, fam.p, fam.m)
    else:
        shaped = fam.instance
    if inst.options.unrestricted:
        shaped = replace(shaped, lower=(0,) * shaped.p, upper=(shaped.n,) * shaped.p)
    family = partition_family(shaped)

    def describe(F: Subset) -> dict:
        part = decode(F, shaped.n, shaped.p)
        return {"partition": list(part.assignment)} if part else {}

    return Problem(family, partition_weighting(shaped), objective, describe)
