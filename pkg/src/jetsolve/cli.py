"""Benchmark harness: runs the four experiment families and writes tables.

Usage:
    jetsolve-bench scalar --orders 1 2 3 4 5 --format csv --out scalar.csv
    jetsolve-bench chandrasekhar --sizes 4 8 16 32 64 128
    jetsolve-bench brusselator --sizes 4 8 16 --dump-pattern pattern.txt
    jetsolve-bench ode-wp --sizes 8 --tols 1e-2 1e-3 1e-4 1e-5

A config file of `key=value` lines can preset any flag (--config FILE);
explicit flags win.  Exit status is 0 only if every run converged.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time

import numpy as np

from . import __name__ as _pkg  # noqa: F401  (kept for metadata)
from .mvsolve import MvSolveConfig, NAIVE_HALLEY_MAX_N, solve
from .ode import StepperConfig, integrate, relative_l2_error
from .problems import (
    BrusselatorConfig,
    ChandrasekharConfig,
    brusselator_rhs,
    brusselator_steady,
    chandrasekhar,
    univariate_suite,
)
from .scalar import ScalarSolveConfig, householder_solve
from .sparsity import color_columns, detect_pattern

WARMUPS = 3


def _median_time_ns(fn, reps: int) -> float:
    for _ in range(WARMUPS):
        fn()
    samples = []
    for _ in range(max(1, reps)):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return statistics.median(samples)


def run_scalar(orders, tol, reps):
    rows = []
    ok = True
    for case in univariate_suite():
        for p in orders:
            cfg = ScalarSolveConfig(order=p, tol=tol)
            report = householder_solve(case.residual, case.x0, cfg)
            total_ns = _median_time_ns(
                lambda: householder_solve(case.residual, case.x0, cfg), reps
            )
            iters = max(report.iterations, 1)
            rows.append(
                {
                    "function_id": case.id,
                    "order": p,
                    "iterations": report.iterations,
                    "time_per_iter_ns": total_ns / iters,
                    "total_time_ns": total_ns,
                    "converged": report.converged,
                    "root": report.root,
                }
            )
            ok = ok and report.converged
    return rows, ok


def run_chandrasekhar(sizes, methods, tol, reps, tols=()):
    rows = []
    ok = True
    for n in sizes:
        problem = chandrasekhar(ChandrasekharConfig(n=n))
        for method in methods:
            if method == "naive-halley" and n > NAIVE_HALLEY_MAX_N:
                continue
            cfg = MvSolveConfig(tol=tol, method=method)
            report = solve(problem, cfg)
            elapsed = _median_time_ns(lambda: solve(problem, cfg), reps)
            rows.append(
                {
                    "n": n,
                    "method": method,
                    "iterations": report.iterations,
                    "time_ns": elapsed,
                    "factorizations": report.counters.factorizations,
                    "back_solves": report.counters.back_solves,
                    "final_residual": report.residual_history[-1],
                    "converged": report.converged,
                }
            )
            ok = ok and report.converged
        for wp_tol in tols:
            for method in ("newton", "halley"):
                cfg = MvSolveConfig(tol=wp_tol, method=method)
                report = solve(problem, cfg)
                rows.append(
                    {
                        "n": n,
                        "method": f"wp-{method}",
                        "iterations": report.iterations,
                        "time_ns": _median_time_ns(lambda: solve(problem, cfg), reps),
                        "factorizations": report.counters.factorizations,
                        "back_solves": report.counters.back_solves,
                        "final_residual": report.residual_history[-1],
                        "converged": report.converged,
                        "tolerance": wp_tol,
                    }
                )
                ok = ok and report.converged
    return rows, ok


def run_brusselator(sizes, methods, strategies, tol, reps, dump_pattern=None):
    rows = []
    ok = True
    for K in sizes:
        problem = brusselator_steady(BrusselatorConfig(K=K))
        pattern = detect_pattern(problem)
        coloring = color_columns(pattern)
        if dump_pattern:
            pattern.dump(dump_pattern)
            dump_pattern = None  # first size only
        problem = type(problem)(
            n=problem.n,
            residual=problem.residual,
            initial_guess=problem.initial_guess,
            pattern=pattern,
        )
        for method in methods:
            for strategy in strategies:
                cfg = MvSolveConfig(tol=tol, method=method, jacobian_strategy=strategy)
                report = solve(problem, cfg)
                rows.append(
                    {
                        "K": K,
                        "n": problem.n,
                        "method": method,
                        "jacobian_strategy": strategy,
                        "num_colors": coloring.num_colors,
                        "iterations": report.iterations,
                        "time_ns": _median_time_ns(lambda: solve(problem, cfg), reps),
                        "final_residual": report.residual_history[-1],
                        "converged": report.converged,
                    }
                )
                ok = ok and report.converged
    return rows, ok


def run_ode_wp(sizes, schemes, inners, tols, reference_reltol=1e-8):
    from scipy.integrate import solve_ivp

    rows = []
    ok = True
    for K in sizes:
        problem = brusselator_rhs(BrusselatorConfig(K=K))
        # high-accuracy reference trajectory, split at the source switch-on
        ref = _reference_solution(problem, solve_ivp, reference_reltol)
        for scheme in schemes:
            for inner in inners:
                for reltol in tols:
                    cfg = StepperConfig(
                        scheme=scheme,
                        inner=inner,
                        reltol=reltol,
                        abstol=reltol * 1e-2,
                        h_init=1e-2,
                    )
                    try:
                        y_end, rec = integrate(problem, cfg)
                        err = relative_l2_error(y_end, ref)
                        completed = True
                    except Exception as exc:  # surfaced in the table
                        err = float("nan")
                        completed = False
                        rec = None
                        print(f"ode-wp cell failed: {scheme}/{inner}/{reltol}: {exc}",
                              file=sys.stderr)
                    row = {
                        "K": K,
                        "scheme": scheme,
                        "inner": inner,
                        "tolerance": reltol,
                        "error": err,
                        "completed": completed,
                    }
                    if rec is not None:
                        row.update(
                            {
                                "wall_time": rec.wall_time,
                                "total_steps": rec.total_steps,
                                "rejected_steps": rec.rejected_steps,
                                "total_nonlinear_iterations": rec.total_nonlinear_iterations,
                                "total_factorizations": rec.total_factorizations,
                                "total_back_solves": rec.total_back_solves,
                            }
                        )
                    rows.append(row)
                    ok = ok and completed
    return rows, ok


def _reference_solution(problem, solve_ivp, reltol):
    t_switch = 1.1

    def rhs(t, y):
        return np.asarray(problem.rhs(t, y), dtype=float)

    seg1 = solve_ivp(rhs, (problem.t0, t_switch), problem.y0, method="Radau",
                     rtol=reltol, atol=reltol * 1e-2)
    seg2 = solve_ivp(rhs, (t_switch, problem.t_end), seg1.y[:, -1], method="Radau",
                     rtol=reltol, atol=reltol * 1e-2)
    if seg1.status != 0 or seg2.status != 0:
        raise RuntimeError("reference integration failed")
    return seg2.y[:, -1]


def _write(rows, fmt, out, meta):
    if fmt == "json":
        payload = {"metadata": meta, "rows": rows}
        text = json.dumps(payload, indent=2, default=float)
    else:
        fieldnames = sorted({k for row in rows for k in row})
        import io

        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))


def _load_config(path):
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def build_parser():
    parser = argparse.ArgumentParser(prog="jetsolve-bench")
    parser.add_argument("experiment",
                        choices=["scalar", "chandrasekhar", "brusselator", "ode-wp"])
    parser.add_argument("--config", help="key=value preset file")
    parser.add_argument("--sizes", type=int, nargs="+")
    parser.add_argument("--orders", type=int, nargs="+")
    parser.add_argument("--methods", nargs="+",
                        choices=["newton", "halley", "naive-halley"])
    parser.add_argument("--strategies", nargs="+", choices=["dense", "sparse"])
    parser.add_argument("--schemes", nargs="+", choices=["trapezoid", "trbdf2"])
    parser.add_argument("--inners", nargs="+", choices=["newton", "halley"])
    parser.add_argument("--tol", type=float)
    parser.add_argument("--tols", type=float, nargs="+")
    parser.add_argument("--reps", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out")
    parser.add_argument("--dump-pattern")
    return parser


_DEFAULTS = {
    "scalar": dict(orders=[1, 2, 3, 4, 5], tol=1e-12),
    "chandrasekhar": dict(sizes=[4, 8, 16, 32, 64, 128],
                          methods=["newton", "halley", "naive-halley"], tol=1e-8),
    "brusselator": dict(sizes=[4, 8, 16], methods=["newton", "halley"],
                        strategies=["dense", "sparse"], tol=1e-8),
    "ode-wp": dict(sizes=[8], schemes=["trapezoid", "trbdf2"],
                   inners=["newton", "halley"], tols=[1e-2, 1e-3, 1e-4, 1e-5]),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        presets = _load_config(args.config)
        for key, raw in presets.items():
            if getattr(args, key, None) is None:
                default = _DEFAULTS.get(args.experiment, {}).get(key)
                action = {"sizes": int, "orders": int, "tol": float, "tols": float,
                          "reps": int, "seed": int}.get(key, str)
                if key in ("sizes", "orders", "tols", "methods", "strategies",
                           "schemes", "inners"):
                    setattr(args, key, [action(tok) for tok in raw.split()])
                elif key in ("tol",):
                    setattr(args, key, float(raw))
                elif key in ("reps", "seed"):
                    setattr(args, key, int(raw))
                else:
                    setattr(args, key, raw)
    defaults = _DEFAULTS[args.experiment]
    for key, val in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, val)

    if args.experiment == "scalar":
        rows, ok = run_scalar(args.orders, args.tol, args.reps)
    elif args.experiment == "chandrasekhar":
        rows, ok = run_chandrasekhar(args.sizes, args.methods, args.tol, args.reps,
                                     tols=args.tols or ())
    elif args.experiment == "brusselator":
        rows, ok = run_brusselator(args.sizes, args.methods, args.strategies,
                                   args.tol, args.reps,
                                   dump_pattern=args.dump_pattern)
    else:
        rows, ok = run_ode_wp(args.sizes, args.schemes, args.inners, args.tols)

    meta = {
        "experiment": args.experiment,
        "tolerance_default": 1e-8,
        "seed": args.seed,
        "reps": args.reps,
    }
    _write(rows, args.format, args.out, meta)
    if not ok:
        print("one or more cells did not converge", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
