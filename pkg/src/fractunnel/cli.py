"""Command-line front end.

Exit codes: 0 success, 1 failed self-check, 2 usage error, 3 domain/regime
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .config import load_config
from .errors import ConfigError, DomainError
from .hartman import find_alpha_H
from .kinematics import BarrierSpec
from .sweep import FIGURE_IDS, KINDS, PARAMETERS, Axis, SweepRequest, default_jobs, reproduce_figure, run_sweep
from .sweep import dumps_csv, dumps_svg, write_csv, write_svg_lineplot
from .transmission import transmission
from .tunneling import asymptotic_slope, tunneling_time_closed

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


def _physics_flags(p: argparse.ArgumentParser, width: bool = True) -> None:
    p.add_argument("--E", type=float, default=4.0, help="incident energy (default 4)")
    p.add_argument("--Vr", type=float, default=5.0, help="real barrier height (default 5)")
    p.add_argument("--Vi", type=float, default=0.0, help="absorption strength (default 0)")
    if width:
        p.add_argument("--alpha", type=float, default=2.0, help="Levy index in (1, 2] (default 2)")
        p.add_argument("--d", type=float, required=True, help="barrier width")


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="unit override file with key = value lines (mass, u, hbar)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("text", "csv", "svg"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fractunnel", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("time", help="stationary-phase tunnelling time", allow_abbrev=False)
    _physics_flags(p)
    _output_flags(p)

    p = sub.add_parser("transmission", help="transmission amplitude and net phase", allow_abbrev=False)
    _physics_flags(p)
    _output_flags(p)

    p = sub.add_parser("slope", help="large-width slope and intercept of Gamma(d)", allow_abbrev=False)
    _physics_flags(p, width=False)
    p.add_argument("--alpha", type=float, default=2.0)
    _output_flags(p)

    p = sub.add_parser("alpha-h", help="Levy index where the large-width slope vanishes", allow_abbrev=False)
    _physics_flags(p, width=False)
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"), default=(1.5, 2.0))
    p.add_argument("--tol", type=float, default=1e-6, help="bracket width tolerance (default 1e-6)")
    _output_flags(p)

    p = sub.add_parser("sweep", help="run a parameter sweep and export it", allow_abbrev=False)
    p.add_argument("--kind", choices=tuple(KINDS), required=True)
    p.add_argument("--axis", action="append", default=[], metavar="NAME:MIN:MAX:STEPS")
    p.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    _output_flags(p)

    p = sub.add_parser("figure", help="reproduce a figure dataset", allow_abbrev=False)
    p.add_argument("fig_id", choices=FIGURE_IDS)
    p.add_argument("--out", default=".", help="output directory (default .)")
    p.add_argument("--format", choices=("csv", "svg"), default="csv", help="svg also writes a line plot")
    p.add_argument("--svg", action="store_true", help="same as --format svg")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--d-points", type=int, default=None)
    p.add_argument("--contour-points", type=int, default=None)
    p.add_argument("--config")

    p = sub.add_parser("selfcheck", help="run the derivative and oracle-equivalence suites", allow_abbrev=False)
    p.add_argument("--config")
    return parser


def _emit(args: argparse.Namespace, pairs: list[tuple[str, object]]) -> None:
    if args.format == "csv":
        text = ",".join(k for k, _ in pairs) + "\n" + ",".join(_full(v) for _, v in pairs) + "\n"
    else:
        width = max(len(k) for k, _ in pairs) + 2
        text = "".join(f"{k:<{width}}{_short(v)}\n" for k, v in pairs)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _full(value: object) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _short(value: object) -> str:
    if value is None:
        return "none"
    return format(value, ".6g") if isinstance(value, float) else str(value)


def _check_format(args: argparse.Namespace) -> None:
    if args.format == "svg":
        raise ConfigError(f"--format svg is only meaningful for sweep and figure, not {args.command}")


def cmd_time(args: argparse.Namespace) -> int:
    _check_format(args)
    units = load_config(args.config)
    res = tunneling_time_closed(args.E, BarrierSpec(args.Vr, args.Vi, args.d), args.alpha, units)
    _emit(
        args,
        [
            ("gamma", res.gamma),
            ("term_phase", res.term_phase),
            ("term_fractional", res.term_fractional),
            ("term_free", res.term_free),
        ],
    )
    return EXIT_OK


def cmd_transmission(args: argparse.Namespace) -> int:
    _check_format(args)
    units = load_config(args.config)
    res = transmission(args.E, BarrierSpec(args.Vr, args.Vi, args.d), args.alpha, units)
    _emit(
        args,
        [
            ("regime", "forbidden" if args.E < args.Vr else "allowed"),
            ("xi", res.xi),
            ("zeta", res.zeta),
            ("log_scale", res.log_scale),
            ("t_re", res.t_re),
            ("t_im", res.t_im),
            ("modulus", res.modulus),
            ("phase", res.phase),
            ("phase_net", res.phase_net),
        ],
    )
    return EXIT_OK


def cmd_slope(args: argparse.Namespace) -> int:
    _check_format(args)
    units = load_config(args.config)
    res = asymptotic_slope(args.E, BarrierSpec(args.Vr, args.Vi), args.alpha, units)
    _emit(args, [("slope", res.slope), ("intercept", res.intercept)])
    return EXIT_OK


def cmd_alpha_h(args: argparse.Namespace) -> int:
    _check_format(args)
    units = load_config(args.config)
    res = find_alpha_H(args.E, args.Vr, args.Vi, tuple(args.bracket), args.tol, units)
    _emit(
        args,
        [
            ("alpha_H", res.alpha_H),
            ("slope_at_root", res.slope_at_root),
            ("iterations", res.iterations),
            ("bracket_lo", res.bracket[0]),
            ("bracket_hi", res.bracket[1]),
            ("slope_lo", res.endpoint_slopes[0]),
            ("slope_hi", res.endpoint_slopes[1]),
        ],
    )
    return EXIT_OK


def _parse_fix(items: Sequence[str]) -> dict[str, float]:
    fixed = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or name not in PARAMETERS:
            raise ConfigError(f"--fix expects NAME=VALUE with NAME in {', '.join(PARAMETERS)}, got {item!r}")
        try:
            fixed[name] = float(value)
        except ValueError:
            raise ConfigError(f"--fix {item!r}: value is not a number") from None
    return fixed


def cmd_sweep(args: argparse.Namespace) -> int:
    if not 1 <= len(args.axis) <= 2:
        raise ConfigError("sweep needs one or two --axis options")
    units = load_config(args.config)
    req = SweepRequest(args.kind, _parse_fix(args.fix), tuple(Axis.parse(a) for a in args.axis))
    ds = run_sweep(req, jobs=args.jobs or default_jobs(), units=units)
    if args.out:
        writer = write_svg_lineplot if args.format == "svg" else write_csv
        writer(ds, args.out)
    else:
        sys.stdout.write(dumps_svg(ds) if args.format == "svg" else dumps_csv(ds))
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    units = load_config(args.config)
    grid = {}
    if args.d_points is not None:
        grid["d_points"] = args.d_points
    if args.contour_points is not None:
        grid["contour_points"] = args.contour_points
    datasets = reproduce_figure(args.fig_id, jobs=args.jobs or default_jobs(), units=units, **grid)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for stem, ds in datasets:
        path = out / f"{stem}.csv"
        n = write_csv(ds, path)
        print(f"wrote {path} ({n} bytes)")
        if args.svg or args.format == "svg":
            path = out / f"{stem}.svg"
            n = write_svg_lineplot(ds, path)
            print(f"wrote {path} ({n} bytes)")
    return EXIT_OK


def cmd_selfcheck(args: argparse.Namespace) -> int:
    from .checks import run_all

    units = load_config(args.config)
    ok = True
    for suite in run_all(units):
        status = "PASS" if suite.passed else "FAIL"
        print(f"{status}  {suite.name:<20} worst={suite.worst:.3e} tol={suite.tolerance:.0e} at {suite.where}")
        ok = ok and suite.passed
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "time": cmd_time,
    "transmission": cmd_transmission,
    "slope": cmd_slope,
    "alpha-h": cmd_alpha_h,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "selfcheck": cmd_selfcheck,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"fractunnel: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"fractunnel: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"fractunnel: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
