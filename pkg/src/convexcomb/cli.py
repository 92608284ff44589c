"""Command line front end.

Exit codes: 0 success, 1 check mismatch, 2 malformed input, 3 infeasible
family, 4 brute-force budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import replace
from typing import Sequence

from .bruteforce import EnumerationBudget, brute_convex_max
from .errors import BudgetExceeded, InfeasibleError
from .instance import InstanceError, Problem, build_problem, load_instance
from .numeric import format_rational, rational
from .oracles import linear_optimize
from .reduce import SolveReport, convex_maximize, evaluate_objective
from .zonotope import GeneratorSet, brute_force_vertices, enumerate_vertices

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3, 4

log = logging.getLogger("convexcomb")


def _vec(v) -> list[str]:
    return [format_rational(x) for x in v]


def report_to_dict(report: SolveReport, problem: Problem) -> dict:
    out = {
        "optimum": list(report.optimum.members),
        **problem.describe(report.optimum),
        "value": format_rational(report.value),
        "k": report.zonotope_vertices,
        "oracle_queries": report.oracle_queries,
        "evaluation_queries": report.evaluation_queries,
        "degenerate": report.degenerate,
        "candidates": [
            {
                "vertex": _vec(c.vertex),
                "witness": _vec(c.witness),
                "member": list(c.member.members),
                "point": _vec(c.point),
                "value": format_rational(c.value),
            }
            for c in report.candidates
        ],
    }
    return out


def _load(path: str, args) -> tuple:
    inst = load_instance(path)
    opts = inst.options
    if getattr(args, "unrestricted", False):
        opts = replace(opts, unrestricted=True)
    if getattr(args, "jobs", None):
        opts = replace(opts, jobs=args.jobs)
    if getattr(args, "budget", None):
        opts = replace(opts, max_members=args.budget)
    inst = replace(inst, options=opts)
    return inst, build_problem(inst)


def _print_summary(d: dict) -> None:
    print("optimum: {" + ",".join(map(str, d["optimum"])) + "}")
    if "partition" in d:
        print("partition: [" + ",".join(map(str, d["partition"])) + "]")
    print(f"value: {d['value']}")
    print(f"zonotope vertices (k): {d['k']}")
    print(f"oracle queries: {d['oracle_queries']}")
    print(f"evaluation queries: {d['evaluation_queries']}")
    if d.get("degenerate"):
        print("degenerate: projected edge directions all vanish")


def cmd_solve(args) -> int:
    inst, problem = _load(args.instance, args)
    fam, w, c = problem.family, problem.weighting, problem.objective
    if args.linear:
        if w.d != 1:
            raise InstanceError("$.weighting", "--linear needs a one-dimensional weighting")
        b = tuple(r[0] for r in w.rows)
        F = linear_optimize(fam, b)
        out = {"optimum": list(F.members), **problem.describe(F), "value": format_rational(F.weight(b)),
               "k": 0, "oracle_queries": 1, "evaluation_queries": 0, "degenerate": False, "candidates": []}
    elif args.brute:
        budget = EnumerationBudget(inst.options.max_n, inst.options.max_members)
        F, value = brute_convex_max(fam, w, c, budget)
        out = {"optimum": list(F.members), **problem.describe(F), "value": format_rational(value),
               "k": 0, "oracle_queries": 0, "evaluation_queries": 0, "degenerate": False, "candidates": []}
    else:
        report = convex_maximize(fam, w, c, jobs=inst.options.jobs)
        out = report_to_dict(report, problem)
    text = json.dumps(out, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        _print_summary(out)
    return EXIT_OK


def _read_generators(args) -> GeneratorSet:
    gens = []
    if args.instance:
        try:
            with open(args.instance) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise InstanceError(args.instance, "file not found") from None
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{args.instance}:{exc.lineno}:{exc.colno}", exc.msg) from None
        rows = data.get("generators") if isinstance(data, dict) else None
        if not isinstance(rows, list) or not rows:
            raise InstanceError("$.generators", "expected a nonempty list of vectors")
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise InstanceError(f"$.generators[{i}]", "expected a list of rationals")
            gens.append(row)
    for g in args.gen or []:
        gens.append(g.split(","))
    if not gens:
        raise InstanceError("generators", "give a file or at least one --gen")
    try:
        vecs = []
        for i, g in enumerate(gens):
            if any(isinstance(v, float) for v in g):
                raise ValueError("floats are not allowed; write rationals like \"1/2\"")
            vecs.append(tuple(rational(v.strip() if isinstance(v, str) else v) for v in g))
        return GeneratorSet.of(vecs)
    except (ValueError, TypeError) as exc:
        raise InstanceError("generators", str(exc)) from None


def cmd_zonotope(args) -> int:
    G = _read_generators(args)
    if all(all(v == 0 for v in g) for g in G):
        raise InstanceError("generators", "all generators are zero: the zonotope is a point")
    if args.brute:
        try:
            points = brute_force_vertices(G)
        except ValueError as exc:
            raise InstanceError("generators", str(exc)) from None
        out = {"method": "brute", "count": len(points), "vertices": [{"point": _vec(p)} for p in points]}
    else:
        V = enumerate_vertices(G)
        out = {
            "method": "arrangement",
            "count": len(V),
            "vertices": [
                {"point": _vec(v.point), "witness": _vec(v.witness), "signs": list(v.sign_vector)} for v in V
            ],
        }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"{out['count']} vertices")
        for v in out["vertices"]:
            line = "(" + ", ".join(v["point"]) + ")"
            if "witness" in v:
                signs = "".join("+" if s > 0 else "-" for s in v["signs"])
                line += "  witness (" + ", ".join(v["witness"]) + ")  signs " + signs
            print(line)
    return EXIT_OK


def run_check(problem: Problem, budget: EnumerationBudget, corrupt: bool = False, jobs: int = 1) -> dict:
    """Compare the reduction with exhaustive search; returns a JSON-ready dict."""
    fam, w, c = problem.family, problem.weighting, problem.objective
    brute_member, brute_value = brute_convex_max(fam, w, c, budget)
    oracle = (lambda b: fam.initial_member) if corrupt else None
    report = convex_maximize(fam, w, c, jobs=jobs, oracle=oracle)
    match = report.value == brute_value
    out = {"match": match, "value": format_rational(report.value), "brute_value": format_rational(brute_value),
           "member": list(report.optimum.members), "brute_member": list(brute_member.members)}
    if not match:
        out["witness_value"] = format_rational(evaluate_objective(c, w.of_subset(brute_member)))
    return out


def cmd_check(args) -> int:
    inst, problem = _load(args.instance, args)
    budget = EnumerationBudget(inst.options.max_n, inst.options.max_members)
    out = run_check(problem, budget, corrupt=args.corrupt_oracle, jobs=inst.options.jobs)
    if args.json:
        print(json.dumps(out, indent=2))
    elif out["match"]:
        print(f"MATCH value={out['value']}")
    else:
        print(f"MISMATCH reduce={out['value']} brute={out['brute_value']} "
              f"member={{{','.join(map(str, out['brute_member']))}}} beats {{{','.join(map(str, out['member']))}}}")
    return EXIT_OK if out["match"] else EXIT_MISMATCH


def cmd_bench(args) -> int:
    rows = []
    for path in args.instances:
        inst, problem = _load(path, args)
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            report = convex_maximize(problem.family, problem.weighting, problem.objective, jobs=inst.options.jobs)
            times.append(time.perf_counter() - t0)
        rows.append({"instance": path, "n": problem.family.n, "m": report.generator_count,
                     "k": report.zonotope_vertices, "value": format_rational(report.value),
                     "best_seconds": round(min(times), 6)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['instance']}: n={r['n']} m={r['m']} k={r['k']} value={r['value']} "
                  f"time={r['best_seconds']:.4f}s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convexcomb", description="Exact convex combinatorial optimization.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jobs=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--unrestricted", action="store_true",
                       help="drop the shape bounds of a partition family (l = 0, u = n)")
        p.add_argument("--budget", type=int, help="cap on members enumerated by brute force")
        if jobs:
            p.add_argument("--jobs", type=int, help="worker threads for the oracle queries")

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    common(p)
    p.add_argument("--brute", action="store_true", help="use exhaustive search instead of the reduction")
    p.add_argument("--linear", action="store_true", help="d=1 shortcut: maximize b(j) = w(j) directly")
    p.add_argument("-o", "--output", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("zonotope", help="list zonotope vertices with witnesses")
    p.add_argument("instance", nargs="?", help='JSON file {"generators": [[...], ...]}')
    p.add_argument("--gen", action="append", help="inline generator, e.g. --gen 1,0 --gen 1/2,3")
    p.add_argument("--brute", action="store_true", help="use the exhaustive hull oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_zonotope)

    p = sub.add_parser("check", help="compare the reduction against brute force")
    p.add_argument("instance")
    common(p)
    p.add_argument("--corrupt-oracle", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="time solves")
    p.add_argument("instances", nargs="+")
    common(p)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceeded as exc:
        print(f"over budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
