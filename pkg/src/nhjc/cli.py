"""Command-line interface.

Subcommands map onto the library surface: `spectrum`, `phase-map`, `metric`,
`entropy` and `dynamics` run sweeps and export CSV/JSON/SVG; `exponent`
fits the metric divergence exponent.  Options are resolved in the order
defaults < --preset < --config file < explicit flags.

Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import copy
import json
import sys

from .biortho import metric_divergence_exponent
from .dynamics import default_time_grid, effective_generator
from .errors import SpecValidationError
from .model import ModelParams
from .plots import render_svg
from .scan import Axis, export_csv, export_json, run_sweep, spec_from_dict

__all__ = ["build_parser", "cli_main", "main", "PRESETS"]

_SWEEP_COMMANDS = ("spectrum", "phase-map", "metric", "entropy", "dynamics")

_DEFAULT_QUANTITIES = {
    "spectrum": ["eigenvalues", "phase"],
    "phase-map": ["phase"],
    "metric": ["metric_norm", "phase"],
    "entropy": ["entropy", "phase"],
    "dynamics": ["survival", "bloch"],
}

_SVG_KIND = {
    "spectrum": "spectrum",
    "phase-map": "raster",
    "metric": "metric",
    "entropy": "entropy",
    "dynamics": "dynamics",
}

# Canonical figure sweeps.  fig2x rasters share omega = 1 and differ in the
# block index; fig3 realizes the half-open grid (0, 16] for delta^2.
PRESETS = {
    "fig1": {
        "fixed": {"omega": 1.0, "epsilon": 5.0, "n": 0},
        "axes": [{"name": "delta", "min": 0.0, "max": 4.0, "steps": 400}],
        "quantities": ["eigenvalues", "phase"],
    },
    "fig3": {
        "fixed": {"omega": 1.0, "epsilon": 5.0, "n": 0},
        "axes": [{"name": "delta_sq", "min": 16.0 / 500.0, "max": 16.0, "steps": 500}],
        "quantities": ["entropy", "phase"],
    },
}
for _i, _name in enumerate(("fig2a", "fig2b", "fig2c", "fig2d")):
    PRESETS[_name] = {
        "fixed": {"omega": 1.0, "n": _i},
        "axes": [
            {"name": "gamma", "min": 0.0, "max": 3.0, "steps": 200},
            {"name": "epsilon", "min": -5.0, "max": 7.0, "steps": 200},
        ],
        "quantities": ["phase"],
    }


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors (exit 1); exit 2 is reserved for I/O
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _parse_grid(text: str) -> dict:
    parts = text.split(":")
    if len(parts) != 4:
        raise SpecValidationError(f"--grid expects AXIS:MIN:MAX:STEPS, got {text!r}")
    name, lo, hi, steps = parts
    try:
        return {"name": name, "min": float(lo), "max": float(hi), "steps": int(steps)}
    except ValueError as exc:
        raise SpecValidationError(f"--grid {text!r}: {exc}") from exc


def _parse_r0(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise SpecValidationError(f"--r0 expects X,Y,Z, got {text!r}")
    try:
        return [float(x) for x in parts]
    except ValueError as exc:
        raise SpecValidationError(f"--r0 {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--omega", type=float, default=None, help="oscillator frequency (default 1)")
    common.add_argument("--epsilon", type=float, default=None, help="two-level splitting (default 5)")
    common.add_argument("--gamma", type=float, default=None, help="coupling (default 1)")
    common.add_argument("--n", type=int, default=None, help="block index (default 0)")
    common.add_argument(
        "--grid",
        action="append",
        metavar="AXIS:MIN:MAX:STEPS",
        help="sweep axis (repeat for 2-d); axes: gamma, epsilon, omega, delta, delta_sq, t",
    )
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument(
        "--format", choices=("csv", "json", "svg"), default="csv", help="output format"
    )
    common.add_argument("--config", default=None, help="JSON config file mirroring the sweep spec")
    common.add_argument(
        "--preset", choices=sorted(PRESETS), default=None, help="named canonical sweep"
    )

    parser = _Parser(prog="nhjc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="eigenvalue branches along a 1-d grid")
    sub.add_parser("phase-map", parents=[common], help="phase labels on a 2-d grid")
    sub.add_parser("metric", parents=[common], help="metric norm along a grid")
    sub.add_parser("entropy", parents=[common], help="entanglement entropy along a grid")
    dyn = sub.add_parser("dynamics", parents=[common], help="no-jump evolution over time")
    dyn.add_argument("--r0", default=None, metavar="X,Y,Z", help="initial Bloch vector (default 0,0,1)")
    sub.add_parser("exponent", parents=[common], help="metric divergence exponent fit")
    return parser


def _merged_options(args) -> dict:
    merged: dict = {"fixed": {}, "axes": [], "quantities": None, "n_list": [], "initial_bloch": None}
    config = {}
    if args.config:
        with open(args.config) as stream:
            config = json.load(stream)
        if not isinstance(config, dict):
            raise SpecValidationError("config: expected a JSON object")
    preset_name = args.preset or config.get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise SpecValidationError(f"preset: unknown {preset_name!r}, allowed {sorted(PRESETS)}")
        preset = copy.deepcopy(PRESETS[preset_name])
        merged["fixed"].update(preset["fixed"])
        merged["axes"] = preset["axes"]
        merged["quantities"] = preset["quantities"]
    for key in ("axes", "quantities", "n_list", "initial_bloch"):
        if key in config:
            merged[key] = copy.deepcopy(config[key])
    merged["fixed"].update(config.get("fixed", {}))
    for name in ("omega", "epsilon", "gamma", "n"):
        value = getattr(args, name)
        if value is not None:
            merged["fixed"][name] = value
    if args.grid:
        merged["axes"] = [_parse_grid(g) for g in args.grid]
    if getattr(args, "r0", None) is not None:
        merged["initial_bloch"] = _parse_r0(args.r0)
    return merged


def _fixed_params(merged: dict) -> ModelParams:
    fixed = merged["fixed"]
    return ModelParams(
        omega=float(fixed.get("omega", 1.0)),
        epsilon=float(fixed.get("epsilon", 5.0)),
        gamma=float(fixed.get("gamma", 1.0)),
        n=int(fixed.get("n", 0)),
    )


def _output_stream(args):
    if args.out is None:
        return sys.stdout, False
    return open(args.out, "w", newline=""), True


def _run_exponent(args, merged) -> int:
    p = _fixed_params(merged)
    lines = [
        f"slope_below = {metric_divergence_exponent(p, 'below'):.6f}",
        f"slope_above = {metric_divergence_exponent(p, 'above'):.6f}",
    ]
    stream, owned = _output_stream(args)
    try:
        stream.write("\n".join(lines) + "\n")
    finally:
        if owned:
            stream.close()
    return 0


def _run_sweep_command(args, merged) -> int:
    command = args.command
    if merged["quantities"] is None:
        merged["quantities"] = _DEFAULT_QUANTITIES[command]
    if not merged["axes"] and command == "dynamics":
        # no grid given: 500 points on [0, 5/rate] for the fixed parameters
        gen = effective_generator(_fixed_params(merged))
        grid = default_time_grid(gen)
        merged["axes"] = [
            {"name": "t", "min": float(grid[0]), "max": float(grid[-1]), "steps": len(grid)}
        ]
    if not merged["axes"]:
        raise SpecValidationError(f"{command}: needs --grid or --preset")
    want_two = command == "phase-map"
    if want_two and len(merged["axes"]) != 2:
        raise SpecValidationError("phase-map: needs exactly two --grid axes")
    if not want_two and len(merged["axes"]) != 1:
        raise SpecValidationError(f"{command}: needs exactly one --grid axis")
    spec_dict = {
        "fixed": merged["fixed"],
        "axes": merged["axes"],
        "quantities": merged["quantities"],
        "n_list": merged["n_list"],
    }
    if merged["initial_bloch"] is not None:
        spec_dict["initial_bloch"] = merged["initial_bloch"]
    spec = spec_from_dict(spec_dict)
    cells = run_sweep(spec)
    stream, owned = _output_stream(args)
    try:
        if args.format == "csv":
            export_csv(cells, stream)
        elif args.format == "json":
            export_json(cells, stream, spec)
        else:
            render_svg(cells, stream, kind=_SVG_KIND[command], spec=spec)
    finally:
        if owned:
            stream.close()
    return 0


def cli_main(argv=None) -> int:
    """Run the CLI; returns the exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    try:
        merged = _merged_options(args)
        if args.command == "exponent":
            return _run_exponent(args, merged)
        return _run_sweep_command(args, merged)
    except OSError as exc:
        print(f"nhjc: i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"nhjc: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
