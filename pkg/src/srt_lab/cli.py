"""Command-line front-end.

Three subcommands share one flag set:

    point       evaluate a single SNR point
    sweep       outage/intercept vs SNR over a dB grid
    srt-curve   intercept-vs-outage locus parameterized by the grid,
                repeated for several relay counts

Results go to a CSV (stdout by default).  --plot-script writes a gnuplot
file next to the CSV; --figure renders a PNG directly.  SNR is taken in dB
on the command line and converted to linear units exactly once, here.
"""

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

from .channel import SystemParams
from .special import SUBSET_ENUMERATION_CAP
from .sweep import MethodChoice, SweepSpec, run_snr_sweep, run_srt_curve

CSV_HEADER = "scheme,n_relays,gamma_db,rate,method,op,ip,op_stderr,ip_stderr,trials,seed"

_DEFAULT_GRID = "0:30:2"


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    spec: SweepSpec
    output_path: str
    emit_plot_script: bool
    figure_path: Optional[str] = None
    n_values: Optional[Tuple[int, ...]] = None


def _parse_gamma_grid(text, flag="--gamma-db"):
    """A single dB value, or an inclusive start:stop:step grid."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
            if step <= 0:
                raise ValueError
            if stop < start:
                raise ValueError
            count = int((stop - start) / step + 1e-9) + 1
            return tuple(start + i * step for i in range(count))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        "%s expects VALUE or START:STOP:STEP with positive step, got %r" % (flag, text)
    )


def _parse_float_list(text):
    return tuple(float(p) for p in text.split(","))


def _parse_int_list(text):
    return tuple(int(p) for p in text.split(","))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="srt-lab",
        description="Security-reliability trade-off of direct, single-relay and "
        "multi-relay decode-and-forward transmission over Rayleigh fading.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("scenario")
    g.add_argument("--gamma-db", default=None,
                   help="transmit SNR in dB, a value or START:STOP:STEP grid "
                        "(default: 10 for point, %s otherwise)" % _DEFAULT_GRID)
    g.add_argument("--rate", type=float, default=1.0,
                   help="data rate R in bit/s/Hz (default 1)")
    g.add_argument("--n-relays", type=int, default=6,
                   help="relay count N (default 6)")
    g.add_argument("--gain-sd", type=float, default=1.0,
                   help="mean of |h_sd|^2, dimensionless (default 1)")
    g.add_argument("--gain-se", type=float, default=0.1,
                   help="mean of |h_se|^2 (default 0.1)")
    g.add_argument("--gain-si", default="1",
                   help="mean of |h_si|^2, one value or N comma-separated (default 1)")
    g.add_argument("--gain-id", default="1",
                   help="mean of |h_id|^2, one value or N comma-separated (default 1)")
    g.add_argument("--gain-ie", default="0.1",
                   help="mean of |h_ie|^2, one value or N comma-separated (default 0.1)")
    r = common.add_argument_group("run")
    r.add_argument("--schemes", default="direct,single,multi",
                   help="comma list from {direct,single,multi} (default all)")
    r.add_argument("--method", choices=["analytic", "mc", "both"], default="analytic",
                   help="evaluation route (default analytic)")
    r.add_argument("--trials", type=int, default=1_000_000,
                   help="Monte Carlo trials per point (default 1000000)")
    r.add_argument("--inner-trials", type=int, default=10_000,
                   help="inner draws per decoding set for the semi-analytic "
                        "multi-relay intercept probability (default 10000)")
    r.add_argument("--seed", type=int, default=1,
                   help="64-bit master seed (default 1)")
    o = common.add_argument_group("output")
    o.add_argument("--output", default="-",
                   help="CSV path, - for stdout (default -)")
    o.add_argument("--plot-script", action="store_true",
                   help="also write a gnuplot script next to the CSV")
    o.add_argument("--figure", default=None, metavar="PATH",
                   help="also render a matplotlib figure to PATH (png)")

    sub.add_parser("point", parents=[common],
                   help="evaluate a single SNR point")
    sub.add_parser("sweep", parents=[common],
                   help="outage/intercept vs SNR over the dB grid")
    curve = sub.add_parser("srt-curve", parents=[common],
                           help="intercept-vs-outage locus for several N")
    curve.add_argument("--n-values", default="4,8",
                       help="comma list of relay counts to trace (default 4,8)")
    return parser


def parse_and_validate(argv) -> RunConfig:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.gamma_db is None:
        args.gamma_db = "10" if args.subcommand == "point" else _DEFAULT_GRID
    try:
        grid = _parse_gamma_grid(args.gamma_db)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if args.subcommand == "point" and len(grid) != 1:
        parser.error("point takes a single --gamma-db value, not a grid")

    if args.rate <= 0:
        parser.error("--rate must be strictly positive")
    if args.n_relays < 0:
        parser.error("--n-relays must be non-negative")
    if args.n_relays > SUBSET_ENUMERATION_CAP:
        parser.error("--n-relays exceeds the cap of %d (2^N subset enumeration)"
                     % SUBSET_ENUMERATION_CAP)
    if args.gain_sd <= 0:
        parser.error("--gain-sd must be strictly positive")
    if args.gain_se <= 0:
        parser.error("--gain-se must be strictly positive")

    def relay_gains(flag, text):
        try:
            values = _parse_float_list(text)
        except ValueError:
            parser.error("%s expects a number or comma-separated numbers" % flag)
        if len(values) == 1:
            values = values * args.n_relays
        if len(values) != args.n_relays:
            parser.error("%s needs 1 or %d values, got %d"
                         % (flag, args.n_relays, len(values)))
        if any(v <= 0 for v in values):
            parser.error("%s entries must be strictly positive" % flag)
        return values

    gains_si = relay_gains("--gain-si", args.gain_si)
    gains_id = relay_gains("--gain-id", args.gain_id)
    gains_ie = relay_gains("--gain-ie", args.gain_ie)

    try:
        schemes = tuple(dict.fromkeys(
            {"direct": "direct", "single": "single", "multi": "multi"}[s.strip()]
            for s in args.schemes.split(",") if s.strip()
        ))
    except KeyError as exc:
        parser.error("--schemes entries must be direct, single or multi (got %s)" % exc)
    if not schemes:
        parser.error("--schemes must name at least one scheme")
    if args.n_relays == 0 and any(s != "direct" for s in schemes):
        parser.error("--n-relays 0 only supports the direct scheme")

    if args.trials < 1:
        parser.error("--trials must be positive")
    if args.inner_trials < 1000:
        parser.error("--inner-trials must be at least 1000")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must fit in 64 bits")

    n_values = None
    if args.subcommand == "srt-curve":
        try:
            n_values = _parse_int_list(args.n_values)
        except ValueError:
            parser.error("--n-values expects comma-separated integers")
        if not n_values:
            parser.error("--n-values must name at least one relay count")
        if len(set(n_values)) != len(n_values):
            parser.error("--n-values entries must be distinct")
        for n in n_values:
            if n < 1:
                parser.error("--n-values entries must be at least 1")
            if n > SUBSET_ENUMERATION_CAP:
                parser.error("--n-values entry %d exceeds the cap of %d"
                             % (n, SUBSET_ENUMERATION_CAP))
        homogeneous = all(len(set(g)) <= 1 for g in (gains_si, gains_id, gains_ie))
        if not homogeneous and any(n != args.n_relays for n in n_values):
            parser.error("--n-values with per-relay gain lists requires "
                         "homogeneous gains (the relay population is resized)")

    if args.plot_script and args.output == "-":
        parser.error("--plot-script requires --output to be a file path")

    params = SystemParams(
        gamma=10.0 ** (grid[0] / 10.0),  # placeholder, overridden per grid point
        rate=args.rate,
        n_relays=args.n_relays,
        gain_sd=args.gain_sd,
        gain_se=args.gain_se,
        gains_si=gains_si,
        gains_id=gains_id,
        gains_ie=gains_ie,
    )
    method = {"analytic": MethodChoice.ANALYTIC,
              "mc": MethodChoice.MONTE_CARLO,
              "both": MethodChoice.BOTH}[args.method]
    spec = SweepSpec(
        schemes=schemes,
        gamma_db_grid=grid,
        base_params=params,
        methods=method,
        trials=args.trials,
        seed=args.seed,
        inner_trials=args.inner_trials,
    )
    return RunConfig(
        subcommand=args.subcommand,
        spec=spec,
        output_path=args.output,
        emit_plot_script=args.plot_script,
        figure_path=args.figure,
        n_values=n_values,
    )


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(value, ".9g")


def _csv_line(row):
    return ",".join([
        row.scheme.value,
        str(row.n_relays),
        _fmt(row.gamma_db),
        _fmt(row.rate),
        row.method.value,
        _fmt(row.op),
        _fmt(row.ip),
        _fmt(row.op_stderr),
        _fmt(row.ip_stderr),
        _fmt(row.trials),
        _fmt(row.seed),
    ])


def emit_csv(rows, path):
    """Write the fixed-schema CSV: UTF-8, LF, 9 significant digits."""
    text = "\n".join([CSV_HEADER] + [_csv_line(r) for r in rows]) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _plot_script_path(output_path):
    stem = output_path[:-4] if output_path.endswith(".csv") else output_path
    return stem + ".gp"


def write_plot_script(path, csv_path, subcommand):
    """A self-contained gnuplot script that re-draws the emitted CSV."""
    lines = [
        "set datafile separator ','",
        "set key outside",
        "set grid",
    ]
    pick = "(strcol(1) eq '%s' ? %s : NaN)"
    if subcommand == "srt-curve":
        lines += [
            "set logscale xy",
            "set xlabel 'outage probability'",
            "set ylabel 'intercept probability'",
            "plot \\",
        ]
        plots = []
        for scheme in ("direct", "single", "multi"):
            plots.append(
                "  '%s' skip 1 using %s:7 with linespoints title '%s'"
                % (csv_path, pick % (scheme, "$6"), scheme)
            )
        lines.append(", \\\n".join(plots))
    else:
        lines += [
            "set logscale y",
            "set xlabel 'transmit SNR (dB)'",
            "set ylabel 'probability'",
            "plot \\",
        ]
        plots = []
        for scheme in ("direct", "single", "multi"):
            plots.append(
                "  '%s' skip 1 using %s:6 with linespoints title '%s OP'"
                % (csv_path, pick % (scheme, "$3"), scheme)
            )
            plots.append(
                "  '%s' skip 1 using %s:7 with linespoints title '%s IP'"
                % (csv_path, pick % (scheme, "$3"), scheme)
            )
        lines.append(", \\\n".join(plots))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    config = parse_and_validate(argv if argv is not None else sys.argv[1:])
    try:
        if config.subcommand == "srt-curve":
            rows = run_srt_curve(config.spec, config.n_values)
        else:
            rows = run_snr_sweep(config.spec)
    except ValueError as exc:
        print("srt-lab: %s" % exc, file=sys.stderr)
        return 1

    try:
        emit_csv(rows, config.output_path)
        if config.emit_plot_script:
            write_plot_script(
                _plot_script_path(config.output_path),
                config.output_path,
                config.subcommand,
            )
        if config.figure_path:
            from . import plotting

            if config.subcommand == "srt-curve":
                plotting.render_srt_curve(rows, config.figure_path)
            else:
                plotting.render_snr_sweep(rows, config.figure_path)
    except OSError as exc:
        print("srt-lab: %s" % exc, file=sys.stderr)
        return 1

    failed = [row for row in rows if row.error is not None]
    for row in failed:
        print(
            "srt-lab: %s/%s at %g dB failed: %s"
            % (row.scheme.value, row.method.value, row.gamma_db, row.error),
            file=sys.stderr,
        )
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
