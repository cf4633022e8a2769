"""Command-line batch runner for the experiment catalog.

`rossonct list` prints the catalog; `rossonct run` executes selected
experiments, writes one CSV table per experiment, and prints a PASS/FAIL
summary line for each.  Exit status is 0 only if every selected experiment
passes.  Configuration precedence is flags > config file > defaults, and the
ROSSONCT_OUT environment variable overrides the default output directory.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import UnknownExperimentError, experiment_ids, run_experiment
from .report import write_csv, write_figure

_OVERRIDE_KEYS = ("field", "d", "samples", "seed", "radius", "n_max")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rossonct",
        description="numerical experiments on rank-one hyperbolic spaces "
        "and their parabolic lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the experiment catalog")

    run = sub.add_parser("run", help="run experiments and write CSV tables")
    run.add_argument("experiments", nargs="*", help="experiment ids to run")
    run.add_argument("--all", action="store_true", help="run the full catalog")
    run.add_argument("--field", choices=("R", "C", "Q"),
                     help="scalar field of the hyperbolic space")
    run.add_argument("--d", type=int, help="dimension of the hyperbolic space")
    run.add_argument("--samples", type=int, help="sample count")
    run.add_argument("--seed", type=int, help="random seed (default 0)")
    run.add_argument("--radius", type=float, help="sampling or ball radius")
    run.add_argument("--n-max", dest="n_max", type=int,
                     help="largest power / coordinate scale")
    run.add_argument("--out", help="output directory for CSV tables")
    run.add_argument("--config", help="key=value config file")
    run.add_argument("--figures", action="store_true",
                     help="also render a PNG figure per experiment")
    return parser


def _parse_config_file(path: str) -> dict:
    values = {}
    converters = {"field": str, "d": int, "samples": int, "seed": int,
                  "radius": float, "n_max": int, "out": str}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in converters:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = converters[key](raw.strip())
    return values


def _resolve_settings(args) -> dict:
    settings = {}
    if args.config:
        settings.update(_parse_config_file(args.config))
    for key in _OVERRIDE_KEYS + ("out",):
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            settings[key] = flag_value
    if "out" not in settings:
        settings["out"] = os.environ.get("ROSSONCT_OUT", "results")
    return settings


def _cmd_list() -> int:
    for eid in experiment_ids():
        print(eid)
    return 0


def _cmd_run(args) -> int:
    try:
        settings = _resolve_settings(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    catalog = experiment_ids()
    selected = catalog if args.all else args.experiments
    if not selected:
        print("error: no experiments selected (give ids or --all)",
              file=sys.stderr)
        return 2
    unknown = [eid for eid in selected if eid not in catalog]
    if unknown:
        print(f"error: unknown experiment id(s): {', '.join(unknown)}",
              file=sys.stderr)
        return 2

    overrides = {k: settings.get(k) for k in _OVERRIDE_KEYS}
    out_dir = settings["out"]
    all_passed = True
    for eid in selected:
        try:
            result = run_experiment(eid, overrides)
        except UnknownExperimentError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except Exception as exc:
            print(f"error: {eid}: {type(exc).__name__}: {exc}",
                  file=sys.stderr)
            return 1
        write_csv(result, out_dir)
        if args.figures:
            write_figure(result, out_dir)
        if result.passed:
            print(f"{eid} PASS")
        else:
            print(f"{eid} FAIL {result.summary}")
            all_passed = False
    return 0 if all_passed else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list":
        return _cmd_list()
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
