"""Command-line interface for etgeom."""

import argparse
import logging
from pathlib import Path

import numpy as np

from etgeom import __version__
from etgeom.config import (
    DEFAULT_CONFIG_PATH,
    MODES,
    RunConfig,
    config_options,
    load_config,
    parse_triple,
)
from etgeom.conversions import render_csv, render_json, trajectory_document, trajectory_rows
from etgeom.curve import Orbit
from etgeom.dynamics import Delta, TopContext, conserved, iterate
from etgeom.errors import EulerTopError
from etgeom.geometry import build_geometry, write_geometry
from etgeom.involution import compose_dEt, sqrt_map
from etgeom.verify import report_document, run_suites

logger = logging.getLogger(__name__)

_DEFAULTS = RunConfig()


def evolve(config):
    """States x_0..x_steps in the configured mode, with F at every row."""
    delta = Delta.from_sequence(config.delta)
    x0 = np.array(config.x0, dtype=float)
    ctx = TopContext.from_state(x0, delta)
    if config.mode == "map":
        states = iterate(x0, delta, config.steps)
    elif config.mode == "elliptic":
        states = Orbit.from_state(x0, delta).solution(config.steps)
    elif config.mode == "involutions":
        nu1 = config.nu1
        if nu1 is None:
            nu1 = Orbit.from_state(x0, delta).nu / 2.0
        states = [x0]
        for _ in range(config.steps):
            states.append(compose_dEt(states[-1], nu1, ctx))
        states = np.array(states)
    else:
        states = [x0]
        for _ in range(config.steps):
            states.append(sqrt_map(states[-1], delta))
        states = np.array(states)
    integrals = [conserved(x, delta) for x in states]
    logger.info("evolved %d steps in mode %s (case %s)", config.steps, config.mode, ctx.case.value)
    return states, integrals


def cmd_evolve(config, out_dir):
    """Write trajectory.csv and trajectory.json."""
    states, integrals = evolve(config)
    rows = trajectory_rows(states, integrals)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "trajectory.csv").write_text(render_csv(rows))
    document = trajectory_document(rows, config.mode, config.delta, config.x0)
    (out_dir / "trajectory.json").write_text(render_json(document))
    print(f"Wrote {len(rows)} rows to {out_dir / 'trajectory.csv'} and {out_dir / 'trajectory.json'}")
    return 0


def cmd_verify(config, out_dir):
    """Run every invariant suite and write report.json; exit 1 on any failure."""
    orbit, results = run_suites(config)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(render_json(report_document(config, orbit, results)))
    print(f"Case {orbit.case.value}, nu = {orbit.nu:.6g}")
    for result in results:
        status = "✓" if result.passed else "✗"
        print(
            f"  {status} {result.name}: max error {result.max_error:.3e} "
            f"(tolerance {result.tolerance:.1e})"
        )
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"\n{len(failed)} suite(s) failed: {', '.join(failed)}")
        return 1
    print(f"\nAll {len(results)} suites passed; report written to {out_dir / 'report.json'}")
    return 0


def cmd_geometry(config, out_dir, obj=False):
    """Write geometry.json and, with ``obj``, OBJ meshes and polylines."""
    bundle = build_geometry(config)
    written = write_geometry(
        bundle,
        out_dir,
        obj=obj,
        resolution=config.mesh_resolution,
        extent=config.ruling_extent,
    )
    print(f"Wrote {len(written)} file(s) to {Path(out_dir)}")
    return 0


def _add_shared_options(parser):
    parser.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        help=f"Path to config file (default: {DEFAULT_CONFIG_PATH})",
    )
    parser.add_argument(
        "--delta",
        type=parse_triple,
        default=_DEFAULTS.delta,
        help="Step parameters d1,d2,d3 with sign pattern (-,+,-) or (+,-,+) (default: -0.05,0.05,-0.05)",
    )
    parser.add_argument(
        "--x0",
        type=parse_triple,
        default=_DEFAULTS.x0,
        help="Initial state x1,x2,x3 (default: 1,0.5,0.5)",
    )
    parser.add_argument(
        "-n", "--steps", type=int, default=_DEFAULTS.steps, help="Number of steps (default: 10)"
    )
    parser.add_argument(
        "-m",
        "--mode",
        choices=MODES,
        default=_DEFAULTS.mode,
        help="How to advance the orbit: iterate the map, evaluate the elliptic solution, "
        "compose two involutions, or iterate the square-root map (default: map)",
    )
    parser.add_argument(
        "--nu1",
        type=float,
        default=None,
        help="Phase shift of the first involution (default: half the elliptic time step)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomized checks")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="Tolerance for every verification suite (overrides ETG_TOLERANCE)",
    )
    parser.add_argument("-o", "--out", default=".", help="Output directory (default: .)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="etg",
        description="Discrete-time Euler top: trajectories, invariant checks and quadric geometry",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--config",
        default=DEFAULT_CONFIG_PATH,
        help=f"Path to config file (default: {DEFAULT_CONFIG_PATH})",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Show progress messages (-v) or debugging detail (-vv)",
    )
    shared = argparse.ArgumentParser(add_help=False)
    _add_shared_options(shared)
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    subparsers.add_parser(
        "evolve", parents=[shared], help="Write the trajectory as CSV and JSON"
    )
    subparsers.add_parser(
        "verify", parents=[shared], help="Run the invariant suites and write report.json"
    )
    geometry = subparsers.add_parser(
        "geometry", parents=[shared], help="Export quadrics, curve components and rulings"
    )
    geometry.add_argument(
        "--obj", action="store_true", default=False, help="Also write OBJ meshes and polylines"
    )
    geometry.add_argument(
        "--mesh-resolution",
        type=int,
        default=_DEFAULTS.mesh_resolution,
        help="Grid points per direction for each mesh (default: 64)",
    )
    geometry.add_argument(
        "--ruling-extent",
        type=float,
        default=_DEFAULTS.ruling_extent,
        help="Half-length of the drawn rulings relative to the curve size (default: 1.0)",
    )
    return parser, subparsers


def run_config_from_args(args):
    tolerances = dict(getattr(args, "tolerances", None) or {})
    if args.tolerance is not None:
        tolerances["default"] = args.tolerance
    return RunConfig(
        delta=args.delta,
        x0=args.x0,
        steps=args.steps,
        mode=args.mode,
        nu1=args.nu1,
        seed=args.seed,
        tolerances=tolerances,
        mesh_resolution=getattr(args, "mesh_resolution", _DEFAULTS.mesh_resolution),
        ruling_extent=getattr(args, "ruling_extent", _DEFAULTS.ruling_extent),
    )


def main(argv=None):
    # First pass: extract --config so we know which config file to load
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config", default=DEFAULT_CONFIG_PATH)
    pre_args, _ = pre_parser.parse_known_args(argv)

    try:
        config_defaults = config_options(load_config(pre_args.config))
    except ValueError as e:
        print(f"Error: ValueError: invalid config file {pre_args.config}: {e}")
        return 2

    parser, subparsers = build_parser()
    # Apply config file defaults (CLI flags will still override)
    if config_defaults:
        for subparser in subparsers.choices.values():
            subparser.set_defaults(**config_defaults)
    args = parser.parse_args(argv)

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = run_config_from_args(args)
        if args.command == "evolve":
            return cmd_evolve(config, args.out)
        if args.command == "verify":
            return cmd_verify(config, args.out)
        return cmd_geometry(config, args.out, obj=args.obj)
    except (EulerTopError, ValueError) as e:
        print(f"Error: {type(e).__name__}: {e}")
        return 2
