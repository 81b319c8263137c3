"""Command-line interface.

Subcommands
-----------
simulate       draw winding samples and write them as CSV
cf             evaluate characteristic functions (exact, Girsanov, or limit)
limit-density  tabulate the limiting hyperbolic winding density as CSV
verify         run the acceptance comparisons and write a JSON report
convergence    print long-horizon scaling diagnostics along a time ladder
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import laws, radial, stats, verify, winding
from .errors import ConfigError, DomainError

_GEOMS = ("flat", "hp1", "hh1")


def _parse_floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"could not parse float list {text!r}") from exc


def _write_json(payload, path):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_simulate(args):
    geom = winding.Geometry(args.geometry, args.r0)
    policy = radial.StepPolicy(h=args.step)
    if args.route == "timechange":
        samples = winding.simulate_timechange(geom, args.t, args.paths,
                                              args.seed, substream=0,
                                              policy=policy)
    else:
        samples = winding.simulate_direct(geom, args.t, args.step, args.paths,
                                          args.seed, substream=0)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w")
    try:
        out.write("path_index,t,zeta1,zeta2,zeta3,clock\n")
        for i in range(len(samples)):
            z = samples.zeta[i]
            clock = "" if samples.clock is None else f"{samples.clock[i]:.17g}"
            out.write(f"{i},{args.t:.17g},{z[0]:.17g},{z[1]:.17g},{z[2]:.17g},{clock}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_cf(args):
    lams = _parse_floats(args.lambda_grid)
    mode = args.mode
    rows = []
    policy = radial.StepPolicy(h=args.step)
    for i, lam in enumerate(lams):
        if mode == "exact":
            if args.geometry != "flat":
                raise ConfigError("--exact is only available for the flat geometry")
            est = laws.cf_flat_exact(lam, args.t, args.r0)
        elif mode == "limit":
            if args.geometry != "hh1":
                raise ConfigError("--limit is only available for the hh1 geometry")
            est = laws.cf_hh1_limit(lam, args.r0)
        else:
            if args.geometry == "flat":
                est = laws.cf_flat_girsanov(lam, args.t, args.r0, args.paths,
                                            args.seed, substream=i, policy=policy)
            elif args.geometry == "hp1":
                est = laws.cf_hp1_identity(lam, args.t, args.r0, args.paths,
                                           args.seed, substream=i, policy=policy)
            else:
                est = laws.cf_hh1_identity(lam, args.t, args.r0, args.paths,
                                           args.seed, substream=i, policy=policy)
        rows.append({
            "lambda": [float(v) for v in est.lam],
            "estimator": f"{args.geometry}:{mode}",
            "value_re": est.value.real,
            "value_im": est.value.imag,
            "stderr": est.stderr,
            "n_paths": est.n_samples,
        })
    _write_json({"rows": rows}, args.out)
    return 0


def _cmd_limit_density(args):
    grid = laws.hh1_limit_density_grid(args.r0, args.rmax, args.points)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w")
    try:
        out.write("radius,density\n")
        for r, v in zip(grid.radii, grid.values):
            out.write(f"{r:.17g},{v:.17g}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_verify(args):
    if args.config:
        with open(args.config) as fh:
            config = verify.RunConfig.from_dict(json.load(fh))
    else:
        config = verify.RunConfig()
    if args.workers is not None:
        config.workers = args.workers
    report = verify.run_verify(config)
    out_path = args.out or config.to_dict().get("output_path")
    if out_path:
        verify.write_report(report, out_path)
    for row in report.rows:
        flag = {True: "PASS", False: "FAIL", None: "SKIP"}[row["pass"]]
        print(f"[{flag}] criterion {row['criterion']:>2} {row['name']}: "
              f"value={row['value_re']:.6g} ref={row['reference_re']:.6g} "
              f"tol={row['tolerance']:.3g} ({row['wall_time']:.1f}s)")
    s = report.summary
    print(f"passed {s['passed']}, failed {s['failed']}, skipped {s['skipped']}")
    return 0 if report.all_passed else 1


def _cmd_convergence(args):
    ladder = _parse_floats(args.t_ladder)
    lam = args.lam
    rows = []
    for i, t in enumerate(ladder):
        if args.geometry == "flat":
            freq = 2.0 * lam / math.sqrt(math.log(t))
            value = laws.cf_flat_exact(freq, t, args.r0).value.real
            stderr = 0.0
            refs = {"exp(-|lam|^2)": math.exp(-lam * lam),
                    "exp(-|lam|^2/2)": math.exp(-0.5 * lam * lam)}
        elif args.geometry == "hp1":
            samples = winding.simulate_timechange(
                winding.Geometry("hp1", args.r0), t, args.paths, args.seed,
                substream=i, policy=radial.StepPolicy(h=args.step))
            est = stats.rao_blackwell_cf(samples, lam / math.sqrt(t))
            value, stderr = est.value.real, est.stderr
            refs = {"exp(-3|lam|^2)": math.exp(-3.0 * lam * lam),
                    "exp(-|lam|^2)": math.exp(-lam * lam)}
        else:
            samples = winding.simulate_timechange(
                winding.Geometry("hh1", args.r0), t, args.paths, args.seed,
                substream=i, policy=radial.StepPolicy(h=args.step))
            est = stats.rao_blackwell_cf(samples, lam)
            value, stderr = est.value.real, est.stderr
            refs = {"cf_hh1_limit": laws.cf_hh1_limit(lam, args.r0).value.real}
        row = {"t": t, "value": value, "stderr": stderr,
               "references": refs,
               "discrepancies": {k: abs(value - v) for k, v in refs.items()}}
        rows.append(row)
        ref_text = "  ".join(f"|v-{k}|={row['discrepancies'][k]:.5f}" for k in refs)
        print(f"t={t:g}: value={value:.6f}±{stderr:.6f}  {ref_text}")
    if args.out:
        _write_json({"geometry": args.geometry, "lambda": lam, "rows": rows}, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatwind",
        description="su(2)-valued winding of quaternionic Brownian motion: "
                    "simulation, closed forms, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw winding samples, write CSV")
    p.add_argument("--geometry", choices=_GEOMS, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--route", choices=("timechange", "direct"), default="timechange")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("cf", help="characteristic function values")
    p.add_argument("--geometry", choices=_GEOMS, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--lambda-grid", required=True,
                   help="comma-separated |lambda| values")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--girsanov", dest="mode", action="store_const", const="girsanov")
    mode.add_argument("--limit", dest="mode", action="store_const", const="limit")
    p.add_argument("--paths", type=int, default=10_000)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("limit-density", help="tabulate the limiting hyperbolic density")
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_limit_density)

    p = sub.add_parser("verify", help="run acceptance comparisons")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convergence", help="long-horizon scaling diagnostics")
    p.add_argument("--geometry", choices=_GEOMS, required=True)
    p.add_argument("--t-ladder", required=True, help="comma-separated horizons")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--r0", type=float, default=None)
    p.add_argument("--paths", type=int, default=5000)
    p.add_argument("--step", type=float, default=5e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_convergence)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "r0", None) is None and args.command == "convergence":
        args.r0 = {"flat": 1.0, "hp1": 0.25 * math.pi, "hh1": 1.0}[args.geometry]
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
