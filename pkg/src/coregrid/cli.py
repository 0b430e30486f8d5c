"""Command-line front end.

Subcommands:
  solve   run a shifted approximation solver on an instance file
  oracle  run the exact solver on a (small) instance file
  verify  empirical approximation-ratio harness over random instances
  gen     generate random instance files
  bench   runtime-scaling benchmark, CSV output

Exit codes: 0 success, 2 infeasible / parse / usage errors, 3 budget or
cap errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import statistics
import sys
import time

from .baselines import greedy_ds_udg, greedy_wis_udg
from .checks import solution_feasible
from .ds_udg import PdsInstance, ds_shifted, pds_select_k, pds_shifted
from .errors import BudgetExceeded, CapExceeded, CoregridError, FileFormatError, Infeasible
from .exactsolve import (
    DEFAULT_CAP,
    DEFAULT_NODE_BUDGET,
    exact_min_pds,
    exact_min_vc_udg,
    exact_mwis_rect,
    exact_mwis_udg,
)
from .geom import PointSet, RectSet
from .instances import (
    InstanceFile,
    gen_uniform_points,
    gen_uniform_rects,
    read_instance,
    write_instance,
)
from .vc_udg import vc_select_k, vc_shifted
from .wis_rect import rect_select_k, wis_rect_shifted
from .wis_udg import wis_select_k, wis_shifted

PROBLEMS = ("wis-udg", "ds-udg", "pds-udg", "vc-udg", "wis-rect")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3

_BENCH_NOTE = (
    "Benchmark instances hold point density constant (box side scales with "
    "sqrt(n)) so grid parameter k and per-cell work stay bounded; otherwise "
    "linear scaling would be confounded by density."
)


class _UsageError(Exception):
    pass


def _load(path: str, problem: str, lam: float | None):
    """Parse an instance file and check it matches the problem."""
    inst = read_instance(path)
    if problem == "wis-rect":
        if inst.kind != "rects":
            raise _UsageError(f"{path}: {problem} needs a rectangle instance")
        if lam is None:
            raise _UsageError("--lambda is required for wis-rect")
        return inst
    if inst.kind != "points":
        raise _UsageError(f"{path}: {problem} needs a point instance")
    return inst


def _report(problem: str, eps, sol, n: int, feasible: bool) -> dict:
    meta = sol.meta
    return {
        "problem": problem,
        "eps": eps,
        "n": n,
        "k": meta.get("k"),
        "objective": sol.objective,
        "size": sol.size,
        "indices": list(sol.indices),
        "best_shift": list(meta.get("best_shift", (0, 0))),
        "shifts_evaluated": meta.get("shifts_evaluated", 0),
        "elapsed_ms": meta.get("elapsed_s", 0.0) * 1000.0,
        "feasible": feasible,
    }


def _emit_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _run_solver(problem: str, inst: InstanceFile, eps: float, lam: float | None,
                cap: int):
    if problem == "wis-udg":
        ps = inst.points
        return wis_shifted(ps, eps, cap=cap), ps, len(ps)
    if problem == "ds-udg":
        ps = inst.points
        return ds_shifted(ps, eps, cap=cap), ps, len(ps)
    if problem == "pds-udg":
        ps = inst.points
        pdi = PdsInstance(ps, inst.targets)
        return pds_shifted(pdi, eps, cap=cap), ps, len(ps)
    if problem == "vc-udg":
        ps = inst.points
        return vc_shifted(ps, eps, cap=cap), ps, len(ps)
    rs = inst.rects
    return wis_rect_shifted(rs, eps, lam, cap=cap), rs, len(rs)


def cmd_solve(args) -> int:
    inst = _load(args.input, args.problem, args.lam)
    cap = args.max_coreset if args.max_coreset else DEFAULT_CAP
    sol, data, n = _run_solver(args.problem, inst, args.eps, args.lam, cap)
    targets = inst.targets if args.problem == "pds-udg" else None
    feasible = solution_feasible(args.problem, data, sol.indices, targets=targets)
    report = _report(args.problem, args.eps, sol, n, feasible)
    _emit_json(report, args.json)
    return EXIT_OK if feasible else EXIT_INPUT


def cmd_oracle(args) -> int:
    inst = _load(args.input, args.problem, args.lam)
    t0 = time.perf_counter()
    if args.problem == "wis-udg":
        data = inst.points
        sol = exact_mwis_udg(data)
    elif args.problem == "ds-udg":
        data = inst.points
        sol = exact_min_pds(data, data)
    elif args.problem == "pds-udg":
        data = inst.points
        tgt = PointSet(data.xs[inst.targets], data.ys[inst.targets],
                       data.ws[inst.targets])
        sol = exact_min_pds(data, tgt)
    elif args.problem == "vc-udg":
        data = inst.points
        sol = exact_min_vc_udg(data)
    else:
        data = inst.rects
        sol = exact_mwis_rect(data)
    elapsed = time.perf_counter() - t0
    targets = inst.targets if args.problem == "pds-udg" else None
    feasible = solution_feasible(args.problem, data, sol.indices, targets=targets)
    report = {
        "problem": args.problem,
        "eps": None,
        "n": len(data),
        "k": None,
        "objective": sol.objective,
        "size": sol.size,
        "indices": list(sol.indices),
        "best_shift": [0, 0],
        "shifts_evaluated": 0,
        "elapsed_ms": elapsed * 1000.0,
        "feasible": feasible,
        "exact": True,
    }
    _emit_json(report, args.json)
    return EXIT_OK if feasible else EXIT_INPUT


def _verify_trial(problem: str, eps: float, n: int, lam: float, seed: int):
    """Run solver and oracle on one random instance; return (ratio, bound)."""
    if problem == "wis-rect":
        rs = gen_uniform_rects(n, max(4.0, math.sqrt(n)) * 3.0, lam, seed=seed)
        sol = wis_rect_shifted(rs, eps, lam)
        opt = exact_mwis_rect(rs)
        assert solution_feasible(problem, rs, sol.indices)
        return opt.objective / sol.objective if sol.objective else 1.0, 6.0 + eps
    side = max(4.0, math.sqrt(n) * 2.5)
    ps = gen_uniform_points(n, side, seed=seed)
    if problem == "wis-udg":
        sol = wis_shifted(ps, eps)
        opt = exact_mwis_udg(ps)
        assert solution_feasible(problem, ps, sol.indices)
        return opt.objective / sol.objective if sol.objective else 1.0, 4.0 + eps
    if problem == "ds-udg":
        sol = ds_shifted(ps, eps)
        opt = exact_min_pds(ps, ps)
        assert solution_feasible(problem, ps, sol.indices)
        return sol.objective / opt.objective if opt.objective else 1.0, 4.0 + eps
    if problem == "pds-udg":
        targets = [i for i in range(len(ps)) if i % 2 == 0]
        pdi = PdsInstance(ps, targets)
        sol = pds_shifted(pdi, eps)
        tgt = PointSet(ps.xs[targets], ps.ys[targets], ps.ws[targets])
        opt = exact_min_pds(ps, tgt)
        assert solution_feasible(problem, ps, sol.indices, targets=targets)
        return sol.objective / opt.objective if opt.objective else 1.0, 4.0 + eps
    sol = vc_shifted(ps, eps)
    opt = exact_min_vc_udg(ps)
    assert solution_feasible(problem, ps, sol.indices)
    return sol.objective / opt.objective if opt.objective else 1.0, 1.0 + eps


def cmd_verify(args) -> int:
    ratios = []
    violations = 0
    for t in range(args.trials):
        ratio, bound = _verify_trial(args.problem, args.eps, args.n, args.lam or 1.5,
                                     args.seed + t)
        ratios.append(ratio)
        if ratio > bound + 1e-9:
            violations += 1
    report = {
        "problem": args.problem,
        "eps": args.eps,
        "n": args.n,
        "trials": args.trials,
        "ratio_min": min(ratios) if ratios else None,
        "ratio_mean": statistics.fmean(ratios) if ratios else None,
        "ratio_max": max(ratios) if ratios else None,
        "bound": (4.0 + args.eps if args.problem in ("wis-udg", "ds-udg", "pds-udg")
                  else 1.0 + args.eps if args.problem == "vc-udg" else 6.0 + args.eps),
        "violations": violations,
    }
    _emit_json(report, args.json)
    return EXIT_OK if violations == 0 else 1


def cmd_gen(args) -> int:
    if args.kind == "points":
        ps = gen_uniform_points(args.n, args.box, seed=args.seed)
        inst = InstanceFile("points", points=ps, targets=list(range(len(ps))))
    else:
        if args.lam is None:
            raise _UsageError("--lambda is required for rect instances")
        rs = gen_uniform_rects(args.n, args.box, args.lam, seed=args.seed)
        inst = InstanceFile("rects", rects=rs, lam=args.lam)
    write_instance(args.output, inst)
    return EXIT_OK


def _bench_k(problem: str, eps: float, lam: float) -> int:
    if problem == "wis-udg":
        return wis_select_k(eps)
    if problem in ("ds-udg", "pds-udg"):
        return pds_select_k(eps)
    if problem == "vc-udg":
        return vc_select_k(eps)
    return rect_select_k(eps, lam)[1]


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    lam = args.lam or 1.5
    rows = []
    for n in sizes:
        side = math.sqrt(n / args.density)
        if args.problem == "wis-rect":
            data = gen_uniform_rects(n, side, lam, seed=args.seed)
        else:
            data = gen_uniform_points(n, side, seed=args.seed)
        elapsed = []
        sol = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            sol, _, _ = _run_solver(
                args.problem,
                InstanceFile(
                    "rects" if args.problem == "wis-rect" else "points",
                    points=None if args.problem == "wis-rect" else data,
                    rects=data if args.problem == "wis-rect" else None,
                    targets=list(range(n)) if args.problem != "wis-rect" else [],
                    lam=lam,
                ),
                args.eps,
                lam,
                DEFAULT_CAP,
            )
            elapsed.append((time.perf_counter() - t0) * 1000.0)
        med = statistics.median(elapsed)
        if args.problem == "wis-udg":
            baseline = greedy_wis_udg(data).objective
        elif args.problem in ("ds-udg", "pds-udg", "vc-udg"):
            baseline = greedy_ds_udg(data).objective
        else:
            baseline = ""
        rows.append({
            "problem": args.problem,
            "n": n,
            "eps": args.eps,
            "k": _bench_k(args.problem, args.eps, lam),
            "elapsed_ms": f"{med:.3f}",
            "objective": sol.objective,
            "baseline_objective": baseline,
            "time_per_point_ns": f"{med * 1e6 / n:.1f}",
        })
    out = sys.stdout
    close = False
    if args.csv:
        out = open(args.csv, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()) if rows else
                                ["problem", "n", "eps", "k", "elapsed_ms",
                                 "objective", "baseline_objective",
                                 "time_per_point_ns"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coregrid",
        description="Shifted-grid coreset solvers for geometric WIS / DS / VC.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads (default 1 for reproducible runs; "
                             "execution is currently always single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, eps=True, inp=True):
        p.add_argument("--problem", required=True, choices=PROBLEMS)
        if eps:
            p.add_argument("--eps", type=float, required=True)
        if inp:
            p.add_argument("--input", required=True)
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--json", default=None, help="write the JSON report here")

    p = sub.add_parser("solve", help="run a shifted approximation solver")
    add_common(p)
    p.add_argument("--max-coreset", type=int, default=None,
                   help="per-cell exact-solver cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="run the exact solver (small instances)")
    add_common(p, eps=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="empirical ratio check vs the oracle")
    add_common(p, inp=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance file")
    p.add_argument("--kind", required=True, choices=("points", "rects"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--box", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="runtime-scaling benchmark. " + _BENCH_NOTE)
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--sizes", required=True, help="comma-separated instance sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--density", type=float, default=0.1,
                   help="points per unit area; box side = sqrt(n/density)")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others.
        return EXIT_INPUT if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (_UsageError, FileFormatError, Infeasible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CoregridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
