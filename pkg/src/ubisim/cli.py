"""Command-line front end.

Subcommands:
  run       simulate one parameter set and write per-period metrics
  sweep     run the full grid sweep and export CSVs, manifest, heatmaps
  boundary  read an exported grid and report where each column crosses
  validate  load and check a config file without running anything

Exit codes: 0 success; 2 configuration or usage problems; 1 runtime and
input/output failures.  Diagnostics are one line on stderr, prefixed with
their class ("config error:", "io error:").
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, load_config
from .export import export_grid, import_grid, write_periods_csv
from .simulate import run_simulation, summarize
from .sweep import detect_phase_boundary, run_sweep

__all__ = ["main"]


def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, code: str, stream) -> str:
    if not _use_color(stream):
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _one_line(err: BaseException) -> str:
    return " ".join(str(err).split())


def _add_common(sub: argparse.ArgumentParser, *, out: bool = False, seed: bool = False,
                threads: bool = False) -> None:
    sub.add_argument("--config", metavar="PATH", default=None,
                     help="YAML parameter file (defaults used when omitted)")
    sub.add_argument("--quiet", action="store_true",
                     help="suppress informational output")
    if out:
        sub.add_argument("--out", metavar="DIR", default="ubisim-out",
                         help="output directory (default: %(default)s)")
    if seed:
        sub.add_argument("--seed", metavar="N", type=int, default=None,
                         help="override the base seed from the config")
    if threads:
        sub.add_argument("--threads", metavar="N", type=int, default=1,
                         help="worker processes for the sweep (default: %(default)s)")


def _cmd_run(args) -> int:
    params, spec = load_config(args.config)
    seed = args.seed if args.seed is not None else spec.base_seed
    run = run_simulation(params, seed)
    out = Path(args.out)
    path = write_periods_csv(run, out / "periods.csv")
    cell = summarize(run)
    _say(args, f"simulated {params.population_size} agents for {params.horizon} periods "
               f"(seed {seed})")
    _say(args, f"min_rho_E={cell.min_rho_E!r} max_share_0={cell.max_share_0!r} "
               f"avg_share_0={cell.avg_share_0!r} avg_unmet={cell.avg_unmet!r}")
    _say(args, f"wrote {path}")
    return 0


def _cmd_sweep(args) -> int:
    _params, spec = load_config(args.config)
    if args.seed is not None:
        spec = dataclasses.replace(spec, base_seed=args.seed)
    grid = run_sweep(spec, parallelism=args.threads)
    written = export_grid(grid, args.out)
    _say(args, f"swept {len(spec.phi_values)}x{len(spec.b_d_values)} cells "
               f"x {spec.replicates} replicates in {grid.elapsed_seconds:.1f}s "
               f"({args.threads} worker{'s' if args.threads != 1 else ''})")
    for path in written:
        _say(args, f"wrote {path}")
    return 0


def _cmd_boundary(args) -> int:
    grid = import_grid(args.grid_dir)
    crossings = detect_phase_boundary(grid, threshold=args.threshold)
    for b_d, phi in zip(grid.spec.b_d_values, crossings):
        where = "no crossing" if phi is None else f"phi={phi!r}"
        print(f"b_d={b_d!r}: {where}")
    return 0


def _cmd_validate(args) -> int:
    params, spec = load_config(args.config)
    source = args.config if args.config is not None else "built-in defaults"
    ok = _paint("config ok", "32", sys.stdout)
    _say(args, f"{ok}: {source}")
    _say(args, f"  population {params.population_size}, horizon {params.horizon}, "
               f"burn-in {params.burn_in}")
    _say(args, f"  grid {len(spec.phi_values)} acceptance ratios x "
               f"{len(spec.b_d_values)} benefit amounts x {spec.replicates} replicates "
               f"(base seed {spec.base_seed})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ubisim",
        description="Deterministic dual-currency basic-income simulator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="simulate one parameter set")
    _add_common(p_run, out=True, seed=True)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = subs.add_parser("sweep", help="run the grid sweep and export artifacts")
    _add_common(p_sweep, out=True, seed=True, threads=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_boundary = subs.add_parser("boundary", help="report threshold crossings of a grid")
    p_boundary.add_argument("grid_dir", metavar="DIR",
                            help="directory produced by the sweep subcommand")
    p_boundary.add_argument("--threshold", metavar="X", type=float, default=0.8,
                            help="essential-share level to cross (default: %(default)s)")
    p_boundary.add_argument("--quiet", action="store_true",
                            help="suppress informational output")
    p_boundary.set_defaults(func=_cmd_boundary)

    p_validate = subs.add_parser("validate", help="check a config file")
    _add_common(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 2
    try:
        return args.func(args)
    except ConfigError as err:
        print(_paint(f"config error: {_one_line(err)}", "31", sys.stderr), file=sys.stderr)
        return 2
    except OSError as err:
        print(_paint(f"io error: {_one_line(err)}", "31", sys.stderr), file=sys.stderr)
        return 1
    except ValueError as err:
        print(_paint(f"error: {_one_line(err)}", "31", sys.stderr), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
