"""Command-line front end: ``geogame {nash,stability,optimize,sweep}``.

Exit codes:
    0  success
    2  usage error (bad or missing arguments, bad config file)
    3  domain error (non-finite input, z <= 0, ...)
    4  singular agreement
    5  optimization failed
    6  no sustainable range
    7  I/O error

Every flag may also come from a ``key = value`` config file given with
``--config`` or the ``GEOGAME_CONFIG`` environment variable; flags on the
command line override the file.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from . import serialize
from .errors import (
    DomainError,
    GeoGameError,
    NoSustainableRange,
    OptimizationFailed,
    SingularAgreement,
)
from .model import Agreement, Scenario, nash_deployment, noncooperative_loss
from .optimize import DEFAULT_TOL
from .stability import DEFAULT_SHRINK, player_losses, stability_report
from .sweep import (
    STATUS_FAILED,
    SweepConfig,
    most_stable_agreement,
    run_sweep,
    solve_cell,
    surface_to_records,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_SINGULAR = 4
EXIT_OPTIMIZATION = 5
EXIT_NO_RANGE = 6
EXIT_IO = 7

CONFIG_ENV = "GEOGAME_CONFIG"


class UsageError(Exception):
    pass


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def _scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--y-h", type=float, required=True, help="preferred temperature of H")
    p.add_argument("--y-c", type=float, required=True, help="preferred temperature of C")
    p.add_argument("--z", type=float, required=True, help="risk factor, > 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geogame",
        description="Solver for the two-player solar geoengineering game.",
    )
    parser.add_argument("--config", type=Path, help="key=value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nash", help="non-cooperative equilibrium")
    _scenario_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("stability", help="minimum discount factors of an agreement")
    _scenario_flags(p)
    p.add_argument("--y-tilde", type=float, required=True, help="agreed temperature")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("optimize", help="most stable agreement of one scenario")
    _scenario_flags(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--shrink", type=float, default=DEFAULT_SHRINK)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sweep", help="most stable agreements over a preference grid")
    p.add_argument("--z", type=float, required=True, help="risk factor, > 0")
    p.add_argument("--y-h-values", type=_float_list, help="comma-separated H preferences")
    p.add_argument("--y-c-values", type=_float_list, help="comma-separated C preferences")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--shrink", type=float, default=DEFAULT_SHRINK)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="output file (stdout if omitted)")
    p.add_argument("--workers", type=int, default=1)
    return parser


def read_config(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment, keys may use ``-`` or ``_``."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        values[key.strip().lstrip("-").replace("_", "-")] = value.strip()
    return values


def _subparser_options(parser: argparse.ArgumentParser, command: str) -> set[str]:
    for action in parser._subparsers._group_actions:  # noqa: SLF001
        sub = action.choices.get(command)
        if sub is not None:
            return {opt for a in sub._actions for opt in a.option_strings}
    return set()


def _with_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Splice config-file values in front of the subcommand's own flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, rest = pre.parse_known_args(argv)
    path = known.config
    if path is None and os.environ.get(CONFIG_ENV):
        path = Path(os.environ[CONFIG_ENV])
    if path is None or not rest:
        return rest
    command, tail = rest[0], rest[1:]
    options = _subparser_options(parser, command)
    if not options:
        return rest
    tokens = []
    for key, value in read_config(path).items():
        flag = f"--{key}"
        if flag not in options:
            if flag == "--config":
                continue
            raise UsageError(f"config key {key!r} is not valid for {command!r}")
        tokens.append(f"{flag}={value}")
    return [command, *tokens, *tail]


def _fmt(x: float) -> str:
    return repr(float(x))


def _print_kv(pairs: Sequence[tuple[str, object]]) -> None:
    for key, value in pairs:
        print(f"{key}: {_fmt(value) if isinstance(value, float) else value}")


def cmd_nash(args: argparse.Namespace) -> int:
    s = Scenario(args.y_h, args.y_c, args.z)
    dep = nash_deployment(s)
    if args.format == "json":
        sys.stdout.write(serialize.dumps(dep))
        return EXIT_OK
    _print_kv(
        [
            ("g_h", dep.g_h),
            ("g_c", dep.g_c),
            ("y", dep.temperature),
            ("L_nc_h", noncooperative_loss(s.y_star_h, s)),
            ("L_nc_c", noncooperative_loss(s.y_star_c, s)),
        ]
    )
    return EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    s = Scenario(args.y_h, args.y_c, args.z)
    a = Agreement(args.y_tilde)
    pairs: list[tuple[str, object]] = []
    for player, y_star in (("h", s.y_star_h), ("c", s.y_star_c)):
        pl = player_losses(y_star, s, a)
        pairs += [
            (f"L_c_{player}", pl.cooperative),
            (f"L_d_{player}", pl.deviation),
            (f"L_nc_{player}", pl.noncooperative),
        ]
    report = stability_report(s, a)
    if args.format == "json":
        sys.stdout.write(serialize.dumps(report))
        return EXIT_OK
    pairs += [
        ("delta_h", report.delta_h),
        ("delta_c", report.delta_c),
        ("delta_min", report.delta_min),
        ("binding_player", report.binding_player),
    ]
    _print_kv(pairs)
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    s = Scenario(args.y_h, args.y_c, args.z)
    if s.y_star_h == 0 and s.y_star_c == 0:
        cell = solve_cell(0.0, 0.0, s.z, args.tol, args.shrink)
        if args.format == "json":
            sys.stdout.write(serialize.records_to_json([cell.record()]))
        else:
            _print_kv(
                [
                    ("status", cell.status),
                    ("y_tilde_opt", cell.y_tilde_opt),
                    ("delta_min_opt", cell.delta_min_opt),
                ]
            )
        return EXIT_OK

    bounds, result = most_stable_agreement(s, args.tol, args.shrink)
    if args.format == "json":
        sys.stdout.write(serialize.dumps(bounds))
        sys.stdout.write(serialize.dumps(result))
        return EXIT_OK
    _print_kv(
        [
            ("status", "ok"),
            ("lower", bounds.lower),
            ("upper", bounds.upper),
            ("y_tilde_opt", result.minimizer),
            ("delta_min_opt", result.objective),
            ("evaluations", result.evaluations),
        ]
    )
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    kwargs = {"z": args.z, "tol": args.tol, "shrink": args.shrink}
    if args.y_h_values is not None:
        kwargs["y_h_values"] = args.y_h_values
    if args.y_c_values is not None:
        kwargs["y_c_values"] = args.y_c_values
    surface = run_sweep(SweepConfig(**kwargs), workers=max(1, args.workers))
    for cell in surface:
        if cell.status == STATUS_FAILED:
            print(
                f"warning: cell ({cell.y_star_h!r}, {cell.y_star_c!r}) failed: {cell.message}",
                file=sys.stderr,
            )
    records = surface_to_records(surface)
    text = (
        serialize.records_to_csv(records)
        if args.format == "csv"
        else serialize.records_to_json(records)
    )
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            args.out.write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


COMMANDS = {
    "nash": cmd_nash,
    "stability": cmd_stability,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _with_config(parser, argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except SingularAgreement as exc:
        print(
            f"singular agreement: {exc}. Player {exc.player} never gains from "
            "cooperating on these terms.",
            file=sys.stderr,
        )
        return EXIT_SINGULAR
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NoSustainableRange as exc:
        print(f"no sustainable range: {exc}", file=sys.stderr)
        return EXIT_NO_RANGE
    except OptimizationFailed as exc:
        print(f"optimization failed: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZATION
    except GeoGameError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
