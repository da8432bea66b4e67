"""Command-line front end: solve one instance, run sweeps, grid search, self-check."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, channel, ee, harness, solver
from .params import SystemParams

_DEFAULT_SWEEP_VALUES = {
    "region": (0.5, 1.0, 1.5, 2.0),
    "power": (0.1, 0.5, 1.0, 2.0, 5.0),
}


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maee",
        description="Energy-efficiency optimization for a single movable receive antenna.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value parameter file")
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--resolution", type=float, default=None,
                       help="grid resolution in meters for oracle/scheme searches")

    p_solve = sub.add_parser("solve", help="evaluate all schemes on one random instance")
    common(p_solve)
    p_solve.add_argument("--trace", action="store_true",
                         help="print the optimizer's per-iteration trace")

    p_sweep = sub.add_parser("sweep", help="run a Monte-Carlo parameter sweep")
    common(p_sweep)
    p_sweep.add_argument("--sweep", choices=harness.SWEEP_VARIABLES, required=True,
                         help="sweep variable: region (in wavelengths) or power (W)")
    p_sweep.add_argument("--values", help="comma-separated sweep values")
    p_sweep.add_argument("--trials", type=int, default=200)
    p_sweep.add_argument("--out", default="results",
                         help="output directory for raw.csv and aggregate.csv")
    p_sweep.add_argument("--workers", type=int, default=1)

    p_oracle = sub.add_parser("oracle", help="grid-search the true optimum on one instance")
    common(p_oracle)

    p_check = sub.add_parser("check", help="run the invariant suite on random instances")
    common(p_check)
    p_check.add_argument("--trials", type=int, default=3)
    return parser


def _load_params(args) -> SystemParams:
    if args.config:
        return harness.load_config(args.config)
    return SystemParams()


def _instance_for(params: SystemParams, seed: int):
    rng = np.random.default_rng(seed)
    instance = channel.sample_instance(params, rng)
    return channel.build_expansion(instance, params.wavelength)


def _print_result(result: bench.SchemeResult) -> None:
    print(f"scheme={result.scheme} x={_fmt(result.x)} ee={_fmt(result.ee)} "
          f"throughput={_fmt(result.throughput)} energy={_fmt(result.energy)} "
          f"feasible={int(result.feasible)}")


def _cmd_solve(args) -> int:
    params = _load_params(args)
    expansion = _instance_for(params, args.seed)
    print(f"seed={args.seed}")

    report = solver.optimize(expansion, params, restart_resolution=args.resolution)
    breakdown = ee.energy_efficiency(
        report.x, max(channel.gain_eval(expansion, report.x), 0.0), params)
    proposed = bench.SchemeResult(
        scheme="proposed", x=report.x, ee=breakdown.ee,
        throughput=breakdown.throughput, energy=breakdown.energy,
        feasible=breakdown.feasible and report.status != "infeasible")
    results = [
        proposed,
        bench.scheme_upper_bound(expansion, params),
        bench.scheme_max_throughput(expansion, params, args.resolution),
        bench.scheme_max_snr(expansion, params),
        bench.scheme_fpa(expansion, params),
    ]
    for result in results:
        _print_result(result)
    print(f"status={report.status} iterations={report.iterations}")
    if args.trace:
        print("trace: iteration,x,alpha,objective,ee")
        for iteration, x, alpha, objective, true_ee in report.trace:
            print(f"trace: {iteration},{_fmt(x)},{_fmt(alpha)},"
                  f"{_fmt(objective)},{_fmt(true_ee)}")
    return 0 if any(r.feasible for r in results) else 1


def _cmd_oracle(args) -> int:
    params = _load_params(args)
    expansion = _instance_for(params, args.seed)
    print(f"seed={args.seed}")
    result = bench.grid_global_ee(expansion, params, args.resolution)
    _print_result(result)
    return 0 if result.feasible else 1


def _cmd_sweep(args) -> int:
    params = _load_params(args)
    if args.values:
        values = tuple(float(v) for v in args.values.split(","))
    else:
        values = _DEFAULT_SWEEP_VALUES[args.sweep]
    cfg = harness.SweepConfig(
        base=params, sweep_variable=args.sweep, sweep_values=values,
        trials=args.trials, master_seed=args.seed,
        resolution=args.resolution, workers=args.workers)
    records, aggregates = harness.run_sweep(cfg)
    raw_path, agg_path = harness.emit_csv(records, aggregates, args.out)
    print(f"wrote {raw_path}")
    print(f"wrote {agg_path}")
    for row in aggregates:
        print(f"{args.sweep}={_fmt(row.sweep_value)} scheme={row.scheme} "
              f"mean_ee={_fmt(row.mean_ee)} feasible_frac={_fmt(row.feasible_frac)} "
              f"n={row.n}")
    any_feasible = any(r.feasible for rec in records for r in rec.results.values())
    return 0 if any_feasible else 1


def _check_instance(params: SystemParams, seed: int) -> list[tuple[str, bool]]:
    """Invariant battery on one random instance; returns (name, ok) pairs."""
    rng = np.random.default_rng(seed)
    instance = channel.sample_instance(params, rng)
    expansion = channel.build_expansion(instance, params.wavelength)
    xs = np.linspace(0.0, params.region_length, 1001)
    tx = params.max_tx_power

    phases = np.exp(2j * np.pi / params.wavelength
                    * np.outer(xs, instance.angles.virtual_aoa))
    direct = np.sum(np.abs(phases @ instance.entries.conj()) ** 2, axis=1)
    series = channel.gain_eval(expansion, xs)
    closed_form = bool(np.all(np.abs(series - direct) <= 1e-9 * (1.0 + direct)))

    step1, step2 = 1e-8, 1e-6
    sample = xs[::50]
    fd1 = (tx * channel.gain_eval(expansion, sample + step1)
           - tx * channel.gain_eval(expansion, sample - step1)) / (2 * step1)
    an1 = channel.gain_derivative(expansion, tx, sample)
    fd2 = (tx * channel.gain_eval(expansion, sample + step2)
           - 2 * tx * channel.gain_eval(expansion, sample)
           + tx * channel.gain_eval(expansion, sample - step2)) / step2**2
    an2 = channel.gain_second_derivative(expansion, tx, sample)
    scale1 = float(np.max(np.abs(an1))) + 1e-30
    scale2 = float(np.max(np.abs(an2))) + 1e-30
    derivatives = bool(np.all(np.abs(fd1 - an1) <= 1e-4 * scale1)
                       and np.all(np.abs(fd2 - an2) <= 1e-3 * scale2))

    eps = channel.curvature_bound(expansion, tx)
    curvature = bool(np.all(channel.gain_second_derivative(expansion, tx, xs) <= eps + 1e-12))

    bound, _ = ee.ee_upper_bound(expansion, params)
    ee_vals, _, _, _ = ee.efficiency_curve(expansion, params, xs)
    dominance = bool(np.all(ee_vals <= bound * (1.0 + 1e-9)))

    report = solver.optimize(expansion, params)
    oracle = bench.grid_global_ee(expansion, params)
    fpa = bench.scheme_fpa(expansion, params)
    alphas = [row[2] for row in report.trace]
    bracket = True
    if report.status != "infeasible":
        bracket = (report.ee <= oracle.ee + 1e-9
                   and (not fpa.feasible or report.ee >= fpa.ee - 1e-9)
                   and all(b >= a - 1e-9 for a, b in zip(alphas, alphas[1:])))

    return [
        ("closed-form equivalence", closed_form),
        ("derivative consistency", derivatives),
        ("curvature dominance", curvature),
        ("upper-bound dominance", dominance),
        ("solver bracketing", bracket),
    ]


def _cmd_check(args) -> int:
    params = _load_params(args)
    all_ok = True
    for trial in range(args.trials):
        for name, ok in _check_instance(params, args.seed + trial):
            all_ok = all_ok and ok
            print(f"{'ok' if ok else 'FAIL'} trial={trial} {name}")
    print("all checks passed" if all_ok else "CHECKS FAILED")
    return 0 if all_ok else 1


def cli_main(argv=None) -> int:
    """Entry point returning an exit code: 0 ok, 1 infeasible/failed, 2 usage."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "solve": _cmd_solve,
        "oracle": _cmd_oracle,
        "sweep": _cmd_sweep,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
