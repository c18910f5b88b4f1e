"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 hypothesis refusal, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import SUITES, bench
from .errors import BudgetExceeded, HypothesisRefusal, InputError
from .exact import log_partition_sum, p_taylor_oracle
from .generate import KINDS, gen_instance
from .interpolate import ZeroFreeDisk, ZeroFreeStrip, approx_log_p1
from .model import (check_complex_cubic, check_complex_quadratic, check_real_cubic,
                    check_real_quadratic, load_instance, save_instance, to_json)
from .pipeline import approximate_partition, approximate_partition_cubic, choose_derivative_source
from .scan import scan_field, scan_z
from .taylor import DerivativeTable, derivative_table, weights_from_instance

EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_BUDGET = 1, 2, 3


def _emit(obj, out=None):
    text = json.dumps(obj, indent=1, default=float) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _parse_value(v):
    for conv in (int, float):
        try:
            return conv(v)
        except ValueError:
            pass
    return {"true": True, "false": False}.get(v.lower(), v)


def _gen_spec(text):
    """'kind:key=val,key=val' -> instance."""
    kind, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise InputError(f"bad generator parameter {item!r}")
        params[key.strip()] = _parse_value(val.strip())
    return gen_instance(kind, **params)


def _instance(source):
    if Path(source).exists():
        return load_instance(source)
    if ":" in source:
        return _gen_spec(source)
    raise InputError(f"{source}: no such file (and not a kind:key=val generator spec)")


def _grid(text):
    try:
        re0, re1, im0, im1, steps = text.split(":")
        re0, re1, im0, im1, steps = float(re0), float(re1), float(im0), float(im1), int(steps)
    except ValueError as exc:
        raise InputError("grid must look like re0:re1:im0:im1:steps") from exc
    if steps < 1:
        raise InputError("grid needs at least one step")
    re = np.linspace(re0, re1, steps)
    im = np.linspace(im0, im1, steps)
    return (re[None, :] + 1j * im[:, None]).ravel()


# --------------------------------------------------------------- subcommands


def cmd_exact(args):
    f = load_instance(args.file)
    log_s = log_partition_sum(f, cap=args.cap)
    _emit({"n": f.n, "log_S": _pair(log_s)}, args.output)


def cmd_approx(args):
    f = load_instance(args.file)
    run = approximate_partition_cubic if (args.cubic or not f.is_quadratic) else approximate_partition
    res = run(f, args.delta, args.epsilon, method=args.method, region=args.region,
              derivatives=args.derivatives, cap=args.cap, full_output=True)
    _emit(res.as_dict(), args.output)


def cmd_derivs(args):
    f = load_instance(args.file)
    source = args.derivatives
    if source == "auto":
        source = choose_derivative_source(f, args.kmax, cap=args.cap)
    if source == "formula":
        table = derivative_table(weights_from_instance(f), f.b, args.kmax)
    else:
        table = p_taylor_oracle(f, args.kmax, cap=args.cap)
    text = table.to_csv()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_interp(args):
    table = DerivativeTable.from_csv(Path(args.csv).read_text())
    region = ZeroFreeDisk(args.radius) if args.radius else ZeroFreeStrip.from_delta(args.delta)
    _emit(approx_log_p1(table, region, args.epsilon).as_dict(), args.output)


def cmd_scan(args):
    f = _instance(args.source)
    grid = _grid(args.grid)
    res = scan_field(f, grid, cap=args.cap) if args.param == "b" else scan_z(f, grid, cap=args.cap)
    _emit(res.as_dict(), args.output)


def cmd_check(args):
    f = load_instance(args.file)
    if args.complex:
        check = check_complex_cubic if (args.cubic or not f.is_quadratic) else check_complex_quadratic
    else:
        check = check_real_cubic if (args.cubic or not f.is_quadratic) else check_real_quadratic
    rep = check(f, args.delta)
    _emit(rep.as_dict(), args.output)
    return 0 if rep.satisfied else EXIT_HYPOTHESIS


def cmd_gen(args):
    params = {"n": args.n}
    for key in ("delta", "density", "degree"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    for item in args.set or []:
        key, eq, val = item.partition("=")
        if not eq:
            raise InputError(f"--set expects key=value, got {item!r}")
        params[key.replace("-", "_")] = _parse_value(val)
    f = gen_instance(args.kind, seed=args.seed, **params)
    if args.output:
        save_instance(f, args.output)
    else:
        _emit(to_json(f))


def cmd_bench(args):
    for rec in bench(args.suite, seed=args.seed):
        sys.stdout.write(json.dumps(rec.as_dict()) + "\n")


class _Parser(argparse.ArgumentParser):
    # usage errors share the input-error code; 2 is reserved for hypothesis refusals
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ising-interp",
                                description="Partition sums over the Boolean cube.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = add("exact", cmd_exact, "exact ln S by enumeration")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int)

    sp = add("approx", cmd_approx, "estimate ln S")
    sp.add_argument("file")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--method", choices=["auto", "exact", "interpolate"], default="auto")
    sp.add_argument("--region", choices=["strip", "verified"], default="strip")
    sp.add_argument("--derivatives", choices=["auto", "formula", "enumeration"], default="auto")
    sp.add_argument("--cubic", action="store_true")
    sp.add_argument("--cap", type=int)

    sp = add("derivs", cmd_derivs, "derivatives of p at 0 as CSV")
    sp.add_argument("file")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--derivatives", choices=["auto", "formula", "enumeration"], default="auto")
    sp.add_argument("--cap", type=int)

    sp = add("interp", cmd_interp, "ln p(1) from a derivative CSV")
    sp.add_argument("csv")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--radius", type=float, help="use a zero-free disk of this radius instead")

    sp = add("scan-zeros", cmd_scan, "scan S over a grid of b or z")
    sp.add_argument("source", help="instance file or kind:key=val,... generator spec")
    sp.add_argument("--param", choices=["b", "z"], default="b")
    sp.add_argument("--grid", required=True, help="re0:re1:im0:im1:steps (write --grid=-1:1:... for negative starts)")
    sp.add_argument("--cap", type=int)

    sp = add("check", cmd_check, "row-sum hypothesis check")
    sp.add_argument("file")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--complex", action="store_true")
    sp.add_argument("--cubic", action="store_true")

    sp = add("gen", cmd_gen, "generate an instance")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-n", "--n", type=int, required=True)
    sp.add_argument("--delta", type=float)
    sp.add_argument("--density", type=float)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="extra generator parameter (repeatable)")

    sp = add("bench", cmd_bench, "time the pipeline")
    sp.add_argument("--suite", choices=list(SUITES), default="small")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except HypothesisRefusal as exc:
        print(f"hypothesis refusal: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
