"""Command-line entry point.

Commands: simulate, exponents, verify-{combinatorics,potential,exponents,
gff,walk}, gff-sample, report.  Exit codes: 0 success, 1 verification
failure, 2 configuration error.
"""

import argparse
import json
import os
import sys

from . import exponents as expmod
from . import gff as gffmod
from . import harness, verify as verifymod


def _add_common(p):
    p.add_argument("--config", help="key = value config file ([experiment] section)")
    p.add_argument("--seed", type=int, help="master seed (u64)")
    p.add_argument("--workers", type=int, help="worker pool size")
    p.add_argument("--out", help="output directory")
    p.add_argument("--scales", help="comma-separated list of n")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--j", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--kind", choices=("favorite", "truncated", "late", "high"))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="favpoints",
        description="Random-walk favorite-point simulation and verification lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a pair-counting experiment")
    _add_common(sim)

    exp = sub.add_parser("exponents", help="print a CSV exponent table")
    exp.add_argument("--grid", type=int, default=10, help="grid resolution per axis")
    exp.add_argument("--alpha", type=float, help="single alpha instead of a grid")
    exp.add_argument("--beta", type=float, help="single beta instead of a grid")

    for suite in verifymod.SUITES:
        v = sub.add_parser(f"verify-{suite}", help=f"run the {suite} invariant battery")
        v.add_argument("--out", help="directory for verdict.json (default: print only)")

    gs = sub.add_parser("gff-sample", help="sample the Gaussian free field")
    gs.add_argument("--scales", required=True, help="box side(s), comma separated")
    gs.add_argument("--trials", type=int, default=1)
    gs.add_argument("--seed", type=int, default=0)
    gs.add_argument("--out", default=".")

    rep = sub.add_parser("report", help="summarize a prior output directory")
    rep.add_argument("--out", required=True)

    return parser


def _config_from_args(args):
    overrides = {
        "seed": args.seed,
        "workers": args.workers,
        "out": args.out,
        "alpha": args.alpha,
        "beta": args.beta,
        "j": args.j,
        "trials": args.trials,
        "kind": args.kind,
    }
    if args.scales is not None:
        overrides["scales"] = [int(v) for v in args.scales.replace(",", " ").split()]
    if args.config:
        return harness.load_config(args.config, overrides)
    if overrides.get("scales") is None:
        raise harness.ConfigError("scales: required (either --scales or --config)")
    kwargs = {k: v for k, v in overrides.items() if v is not None}
    return harness.ExperimentConfig(**kwargs).validate()


def _cmd_simulate(args):
    config = _config_from_args(args)
    manifest = harness.run_experiment(config)
    print(json.dumps({"out": config.out, "fit": manifest.fit, "complete": True}))
    return 0


def _cmd_exponents(args):
    print("alpha,beta,rho2,rho2_variational,diff,rho2_hat,rho2_hat_variational,diff_hat")
    if args.alpha is not None and args.beta is not None:
        grid = [(args.alpha, args.beta)]
    else:
        vals = [(i + 1) / (args.grid + 1) for i in range(args.grid)]
        grid = [(a, b) for a in vals for b in vals]
    for a, b in grid:
        r = expmod.rho2(a, b)
        rv = expmod.rho2_variational(a, b)
        h = expmod.rho2_hat(a, b)
        hv = expmod.rho2_hat_variational(a, b)
        print(
            f"{a:.6f},{b:.6f},{r:.9f},{rv:.9f},{abs(r - rv):.3e},"
            f"{h:.9f},{hv:.9f},{abs(h - hv):.3e}"
        )
    return 0


def _cmd_verify(suite, args):
    verdict = verifymod.verify(suite)
    out = getattr(args, "out", None)
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, "verdict.json"), "w") as fh:
            json.dump(verdict, fh, indent=2)
    for check in verdict["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] {suite}: {check['name']}  {check['detail']}")
    return 0 if verdict["passed"] else 1


def _cmd_gff_sample(args):
    os.makedirs(args.out, exist_ok=True)
    for n in (int(v) for v in args.scales.replace(",", " ").split()):
        factor = gffmod.build_covariance(n)
        for t in range(args.trials):
            s = gffmod.sample(factor, args.seed + t)
            base = os.path.join(args.out, f"gff_n{n}_trial{t}")
            gffmod.write_sample(s, base)
            print(f"{base}.bin")
    return 0


def _cmd_report(args):
    summary = harness.inspect_run(args.out)
    print(json.dumps(summary, indent=2))
    return 0 if summary["complete"] or not summary["has_results"] else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "exponents":
            return _cmd_exponents(args)
        if args.command.startswith("verify-"):
            return _cmd_verify(args.command.removeprefix("verify-"), args)
        if args.command == "gff-sample":
            return _cmd_gff_sample(args)
        if args.command == "report":
            return _cmd_report(args)
    except harness.ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
