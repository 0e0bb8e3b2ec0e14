"""Command-line front end: ``grho {test,km,chain,bounds,verify}``.

Exit status is 0 on success, 1 for invalid input (one ``error: Kind: message``
line on stderr) and 2 when a self-check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .bounds import bounds, read_interval_csv
from .chain import chain_from_dataset, format_arrangement
from .errors import GrhoError, InternalCheckError
from .survival import Group, Side, km_estimate, read_csv
from .weighted import DEFAULT_CONVENTION, GrhoConfig, components

ENV_CONVENTION = "GRHO_CONVENTION"


def _rho_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rho list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("rho list is empty")
    if any(not (v >= 0) for v in values):
        raise argparse.ArgumentTypeError("rho values must be >= 0")
    return values


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def _convention(text: str) -> Side:
    try:
        return Side.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rho", type=_rho_list, default=[0.0], help="comma-separated rho values")
    common.add_argument(
        "--convention",
        type=_convention,
        default=None,
        help=f"KM weight timing: left (S(t-)) or right (S(t)); env {ENV_CONVENTION}",
    )
    common.add_argument(
        "--format", choices=("table", "json", "csv"), default=None, help="default: json for bounds, else table"
    )

    p = sub.add_parser("test", parents=[common], help="weighted log-rank test")
    p.add_argument("input", help="CSV with header time,status,group")
    p = sub.add_parser("km", parents=[common], help="pooled Kaplan-Meier curve")
    p.add_argument("input")
    p = sub.add_parser("chain", parents=[common], help="z along the adjacent-swap chain")
    p.add_argument("input")
    p = sub.add_parser("bounds", parents=[common], help="z range for interval data")
    p.add_argument("input", help="CSV with header lower,upper,status,group")

    p = sub.add_parser("verify", help="randomised self-checks against brute force")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=6, help="largest group size for chain suites")
    p.add_argument("--cases", type=int, default=200, help="instances per suite")
    p.add_argument("--tolerance", type=_positive, default=1e-9, help="monotonicity slack")
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8-sig", newline="") as fh:
        return fh.read()


def _fmt4(x: float) -> str:
    return f"{x:.4f}"


def cmd_test(args, conv, out):
    ds = read_csv(_read(args.input))
    for rho in args.rho:
        res = components(ds, GrhoConfig(rho, conv))
        d = res.to_dict()
        if args.format == "json":
            out.write(json.dumps(d) + "\n")
        elif args.format == "csv":
            out.write("rho,tau,weight,o,e,v\n")
            for t in res.per_failure:
                out.write(f"{rho!r},{t.tau!r},{t.weight!r},{t.o!r},{t.e!r},{t.v!r}\n")
        else:
            out.write(f"rho={rho:g} convention={conv.value} n0={ds.n0} n1={ds.n1}\n")
            out.write(
                f"O={_fmt4(d['O'])} E={_fmt4(d['E'])} V={_fmt4(d['V'])} "
                f"Z={_fmt4(d['Z'])} chi2={_fmt4(d['chi2'])} p={_fmt4(d['p'])}\n"
            )
            out.write("tau\tweight\to\te\tv\n")
            for t in res.per_failure:
                out.write(f"{t.tau:g}\t{_fmt4(t.weight)}\t{_fmt4(t.o)}\t{_fmt4(t.e)}\t{_fmt4(t.v)}\n")


def cmd_km(args, conv, out):
    curve = km_estimate(read_csv(_read(args.input)))
    if args.format == "json":
        out.write(json.dumps([{"time": t, "survival": s} for t, s in curve.steps]) + "\n")
    elif args.format == "csv":
        out.write("time,survival\n")
        for t, s in curve.steps:
            out.write(f"{t!r},{s!r}\n")
    else:
        out.write("time\tsurvival\n")
        for t, s in curve.steps:
            out.write(f"{t:g}\t{_fmt4(s)}\n")


def cmd_chain(args, conv, out):
    ds = read_csv(_read(args.input))
    times = {g: [o.time for o in ds.group(g)] for g in Group}
    if args.format == "csv":
        out.write("rho,row,arrangement,z\n")
    for rho in args.rho:
        chain = chain_from_dataset(ds, GrhoConfig(rho, conv))
        if args.format == "json":
            for s in chain.steps:
                rec = {
                    "rho": rho,
                    "index": s.index,
                    "scenario": s.scenario,
                    "subcase": s.subcase,
                    "z_before": s.z_before,
                    "z_after": s.z_after,
                }
                out.write(json.dumps(rec, ensure_ascii=False) + "\n")
        elif args.format == "csv":
            for row, (arr, z) in enumerate(zip(chain.arrangements(), chain.z_values()), 1):
                out.write(f"{rho!r},{row},{format_arrangement(arr, times)},{z!r}\n")
        else:
            out.write(f"# rho={rho:g} convention={conv.value} swaps={len(chain.steps)}\n")
            out.write("row\tarrangement\tz\tswap\n")
            scenarios = [""] + [s.subcase for s in chain.steps]
            for row, (arr, z) in enumerate(zip(chain.arrangements(), chain.z_values()), 1):
                out.write(f"{row}\t{format_arrangement(arr, times)}\t{_fmt4(z)}\t{scenarios[row - 1]}\n")


def cmd_bounds(args, conv, out):
    g0, g1 = read_interval_csv(_read(args.input))
    if args.format == "csv":
        out.write("rho,z_min,z_max\n")
    for rho in args.rho:
        res = bounds(g0, g1, GrhoConfig(rho, conv))
        if args.format == "table":
            d = res.to_dict()
            out.write(f"rho={rho:g} z_min={_fmt4(res.z_min)} z_max={_fmt4(res.z_max)}\n")
            out.write(f"arg_min: {d['arg_min']}\narg_max: {d['arg_max']}\n")
        elif args.format == "csv":
            out.write(f"{rho!r},{res.z_min!r},{res.z_max!r}\n")
        else:
            out.write(json.dumps(res.to_dict(), ensure_ascii=False) + "\n")


def cmd_verify(args, conv, out) -> int:
    if args.max_n < 1 or args.cases < 1:
        raise GrhoError("--max-n and --cases must be positive")
    status = 0
    try:
        mono, agree = checks.run_chain_suites(args.seed, args.cases, args.max_n, tolerance=args.tolerance)
        out.write(
            f"monotonicity PASS instances={mono.instances} steps={mono.steps} "
            f"sandwich_checked={mono.sandwich} resampled={mono.resampled}\n"
        )
        out.write(
            f"oracle_agreement PASS instances={agree.instances} interleavings={agree.interleavings}\n"
        )
    except InternalCheckError as exc:
        out.write(f"chain_suites FAIL {type(exc).__name__}: {exc}\n")
        status = 2
    try:
        total = min(10, 2 * args.max_n)
        bnd = checks.run_bounds_suite(args.seed, args.cases, max(total, 2))
        out.write(f"bounds_sharpness PASS instances={bnd.instances} resampled={bnd.resampled}\n")
    except InternalCheckError as exc:
        out.write(f"bounds_sharpness FAIL {type(exc).__name__}: {exc}\n")
        status = 2
    return status


COMMANDS = {
    "test": cmd_test,
    "km": cmd_km,
    "chain": cmd_chain,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "format", "") is None:
        args.format = "json" if args.command == "bounds" else "table"
    conv = getattr(args, "convention", None)
    if conv is None:
        env = os.environ.get(ENV_CONVENTION)
        try:
            conv = Side.parse(env) if env else DEFAULT_CONVENTION
        except ValueError as exc:
            err.write(f"error: InvalidConvention: {exc}\n")
            return 1
    try:
        return COMMANDS[args.command](args, conv, out) or 0
    except GrhoError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except UnicodeDecodeError as exc:
        err.write(f"error: InputFormatError: input is not UTF-8 ({exc.reason})\n")
        return 1
    except OSError as exc:
        err.write(f"error: {type(exc).__name__}: {exc.strerror}: {exc.filename}\n")
        return 1
    except InternalCheckError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
