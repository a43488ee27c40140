"""Command-line front end.

Exit status: 0 on success, 1 for invalid input or unwritable output,
2 when the requested quantity is numerically degenerate.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis, closed_form, oracle
from .mode_algebra import DriveParams
from .propagator import time_series
from .quadrature import KGrid
from .series import format_float, write_table

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _drive_flags(p, *, p_optional=True):
    p.add_argument("--gamma0", type=float, help="field amplitude (J = 1)")
    p.add_argument("--period", type=float, help="drive period T (hbar = 1)")
    if p_optional:
        p.add_argument("--p", type=float, dest="p_value", help="gamma0 T / pi, instead of --period or --gamma0")


def _output_flags(p, default_format="csv"):
    p.add_argument("--output", "-o", help="write the table here (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="floquet-ising", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file of flag defaults (keys use underscores)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dispersion", help="per-mode Floquet quasi-energies, k,omega_k")
    _drive_flags(p)
    p.add_argument("--modes", type=int, default=256)
    _output_flags(p)

    p = sub.add_parser("simulate", help="M_z(t) time series, t,mz")
    _drive_flags(p)
    p.add_argument("--cycles", type=int, default=100)
    p.add_argument("--samples-per-cycle", type=int, default=1)
    p.add_argument("--modes", type=int, default=4096)
    _output_flags(p)

    p = sub.add_parser("closed-form", help="Q, omega_Q and the long-time asymptote")
    _drive_flags(p)
    p.add_argument("--modes", type=int, default=4096)
    _output_flags(p, default_format="json")

    p = sub.add_parser("scan", help="metric over a p grid, e.g. p,q or p,t_q")
    p.add_argument("--metric", choices=analysis.METRICS, default="q")
    p.add_argument("--gamma0", type=float)
    p.add_argument("--period", type=float)
    p.add_argument("--over", choices=("p", "gamma0"), default="p")
    p.add_argument("--p-from", type=float)
    p.add_argument("--p-to", type=float)
    p.add_argument("--p-step", type=float)
    p.add_argument("--gamma0-from", type=float)
    p.add_argument("--gamma0-to", type=float)
    p.add_argument("--gamma0-step", type=float)
    p.add_argument("--modes", type=int, default=4096)
    p.add_argument("--cycles", type=int, default=1000, help="cycle index for --metric mz")
    _output_flags(p)

    p = sub.add_parser("spectrum", help="DFT of simulated M_z(t), frequency,magnitude")
    _drive_flags(p)
    p.add_argument("--cycles", type=int, default=4000)
    p.add_argument("--samples-per-cycle", type=int, default=20)
    p.add_argument("--modes", type=int, default=4096)
    p.add_argument("--window", choices=("hann", "rect"), default="hann")
    _output_flags(p)

    p = sub.add_parser("oracle-compare", help="dense 2^N evolution vs free fermions")
    _drive_flags(p)
    p.add_argument("--sites", type=int, default=8)
    p.add_argument("--cycles", type=int, default=100)
    p.add_argument("--samples-per-cycle", type=int, default=1)
    _output_flags(p, default_format="json")
    return parser


def _positive(name, value):
    if value is None or not (value > 0 and math.isfinite(value)):
        raise UsageError(f"--{name.replace('_', '-')} must be a positive number")
    return value


def _drive(args) -> DriveParams:
    given = [x is not None for x in (args.gamma0, args.period, getattr(args, "p_value", None))]
    if sum(given) != 2:
        raise UsageError("give exactly two of --gamma0, --period, --p")
    if getattr(args, "p_value", None) is None:
        return DriveParams(_positive("gamma0", args.gamma0), _positive("period", args.period))
    p = _positive("p", args.p_value)
    if args.gamma0 is not None:
        return DriveParams.from_p(p, gamma0=_positive("gamma0", args.gamma0))
    return DriveParams.from_p(p, period=_positive("period", args.period))


def _grid(args) -> KGrid:
    if args.modes < 8:
        raise UsageError("--modes must be at least 8")
    return KGrid(args.modes)


def _count(name, value, minimum=1):
    if value < minimum:
        raise UsageError(f"--{name} must be at least {minimum}")
    return value


def _arange(start, stop, step, name):
    if None in (start, stop, step):
        raise UsageError(f"--{name}-from, --{name}-to and --{name}-step are all required")
    if step <= 0 or stop <= start:
        raise UsageError(f"--{name} range must be increasing with a positive step")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _cmd_dispersion(args):
    params = _drive(args)
    spec = closed_form.quasienergy_spectrum(params, _grid(args))
    table = (("k", "omega_k"), (spec.k, spec.omega_k))
    summary = {"spread": spec.spread, "spread_times_gamma0": spec.spread * params.gamma0}
    return table, summary, f"quasi-energy spread {format_float(spec.spread)} per cycle"


def _cmd_simulate(args):
    params = _drive(args)
    ts = time_series(params, _count("cycles", args.cycles), _count("samples-per-cycle", args.samples_per_cycle), _grid(args))
    mean = analysis.long_time_average(ts)
    return (("t", "mz"), (ts.times, ts.values)), {"mean_mz": mean}, f"{len(ts)} samples, mean M_z {format_float(mean)}"


def _cmd_closed_form(args):
    params = _drive(args)
    grid = _grid(args)
    asym = closed_form.asymptote(params, grid)
    env = closed_form.mode_envelope(params, grid.k)
    summary = {
        "gamma0": params.gamma0,
        "period": params.period,
        "p": params.p,
        "q": asym.m0,
        "omega_q_cycle": asym.omega_q_cycle,
        "omega_q": asym.omega_q_angular,
        "t_q": 2.0 * math.pi / asym.omega_q_angular,
        "amplitude": asym.amp,
        "delta_half_pi": asym.delta_half_pi,
        "curvature": asym.c2,
    }
    table = (("k", "a_k", "r_k", "delta_k", "omega_k"), (grid.k, env.a_k, env.r_k, env.delta_k, env.omega_k))
    return table, summary, f"Q {format_float(asym.m0)}, omega_Q {format_float(asym.omega_q_angular)}"


def _cmd_scan(args):
    if args.over == "p":
        grid = _arange(args.p_from, args.p_to, args.p_step, "p")
        if (args.gamma0 is None) == (args.period is None):
            raise UsageError("a p scan needs exactly one of --gamma0 or --period held fixed")
        fixed = {"gamma0": args.gamma0} if args.gamma0 is not None else {"period": args.period}
    else:
        grid = _arange(args.gamma0_from, args.gamma0_to, args.gamma0_step, "gamma0")
        fixed = {"period": _positive("period", args.period)}
    if np.any(grid <= 0):
        raise UsageError("scan grid must be positive")
    for name, value in fixed.items():
        _positive(name, value)
    result = analysis.scan(args.metric, grid, over=args.over, quadrature=_grid(args), cycles=args.cycles, **fixed)
    table = ((args.over, args.metric), (result.grid, result.values))
    summary = {"failed_points": len(result.errors)}
    if args.metric == "q":
        v = result.values
        inner = np.nonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:]))[0] + 1
        summary["local_maxima"] = [float(x) for x in result.grid[inner]]
        line = "Q maxima at " + ", ".join(format(x, ".4g") for x in summary["local_maxima"])
    else:
        line = f"{grid.size} points, {len(result.errors)} failed"
    return table, summary, line


def _cmd_spectrum(args):
    params = _drive(args)
    ts = time_series(params, _count("cycles", args.cycles), _count("samples-per-cycle", args.samples_per_cycle), _grid(args))
    spec = analysis.dft_spectrum(ts, args.window)
    peaks = analysis.peak_frequencies(spec, 2)
    summary = {
        "slow_peak": analysis.slow_peak(spec, params.period)[0],
        "omega_q_closed_form": closed_form.omega_q(params)[1],
        "peaks": [f for f, _ in peaks],
    }
    line = "peaks at " + ", ".join(format_float(f) for f, _ in peaks)
    return (("frequency", "magnitude"), (spec.frequencies, spec.magnitudes)), summary, line


def _cmd_oracle(args):
    params = _drive(args)
    try:
        oracle._check_sites(args.sites)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = oracle.compare(params, args.sites, _count("cycles", args.cycles), _count("samples-per-cycle", args.samples_per_cycle))
    t = np.arange(report.dense.size) * (params.period / args.samples_per_cycle)
    table = (("t", "mz_dense", "mz_free_fermion"), (t, report.dense, report.free_fermion))
    summary = report.to_dict()
    line = f"max |dM_z| {format_float(report.max_abs_deviation)} ({'pass' if report.passed else 'FAIL'})"
    return table, summary, line


COMMANDS = {
    "dispersion": _cmd_dispersion,
    "simulate": _cmd_simulate,
    "closed-form": _cmd_closed_form,
    "scan": _cmd_scan,
    "spectrum": _cmd_spectrum,
    "oracle-compare": _cmd_oracle,
}


def _emit(stream, fmt, table, summary):
    if fmt == "csv":
        write_table(stream, *table)
    else:
        header, cols = table
        doc = dict(summary)
        if "pass" not in doc:
            doc["table"] = {h: [float(v) for v in c] for h, c in zip(header, cols)}
        json.dump(doc, stream, indent=2, sort_keys=True, allow_nan=False)
        stream.write("\n")


def _apply_config(parser, argv):
    if "--config" not in argv:
        return
    try:
        path = argv[argv.index("--config") + 1]
        with open(path) as fh:
            defaults = json.load(fh)
    except IndexError:
        raise UsageError("--config needs a path") from None
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    for action in parser._subparsers._group_actions[0].choices.values():
        action.set_defaults(**defaults)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command; choose from " + ", ".join(COMMANDS))
        table, summary, line = COMMANDS[args.command](args)
        if args.output:
            try:
                with open(args.output, "w", newline="") as fh:
                    _emit(fh, args.format, table, summary)
            except OSError as exc:
                raise UsageError(f"cannot write {args.output!r}: {exc.strerror}") from None
            print(line, file=stdout)
        else:
            _emit(stdout, args.format, table, summary)
            print(line, file=stderr)
    except UsageError as exc:
        print(f"floquet-ising: error: {exc}", file=stderr)
        return EXIT_INVALID
    except (closed_form.DegenerateCurvatureError, ArithmeticError) as exc:
        print(f"floquet-ising: degenerate: {exc}", file=stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"floquet-ising: error: {exc}", file=stderr)
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
