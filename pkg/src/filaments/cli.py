"""Command-line surface: run simulations, linking numbers, field sampling, presets.

Exit status 0 on success, 1 on validation errors (bad arguments, bad
config, missing files), 2 on numerical failures (step-size underflow,
blow-up, singular evaluation).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import ConfigError, apply_overrides, build_config, load_config_file
from .curves import load_curve_csv, preset_curve, write_curve_csv
from .errors import FilamentError
from .forces import BiotSavartParams, biot_savart_field
from .sim import run, save_run
from .topology import linking_number_gauss, linking_number_via_force


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route through our own codes
    def error(self, message):
        raise _ArgumentError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="filaments", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured simulation and write frames")
    p_run.add_argument("--config", required=True, help="path to a key=value config file")
    p_run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
    p_run.add_argument("--out", help="output directory (overrides output.dir)")

    p_link = sub.add_parser("link", help="linking number of two curves")
    p_link.add_argument("--preset-a", help="preset spec, e.g. linked-circles-neg:1")
    p_link.add_argument("--preset-b")
    p_link.add_argument("--file-a", help="curve CSV file")
    p_link.add_argument("--file-b")
    p_link.add_argument("-M", type=int, default=200, help="nodes per preset curve")
    p_link.add_argument("--no-uniformize", action="store_true",
                        help="sample presets at raw parameter values")
    p_link.add_argument("--method", choices=["gauss", "force"], default="gauss")

    p_field = sub.add_parser("field", help="sample the Biot-Savart kernel, write CSV")
    p_field.add_argument("--source", help="source curve preset spec")
    p_field.add_argument("--source-file", help="source curve CSV file")
    p_field.add_argument("-M", type=int, default=200)
    p_field.add_argument("--grid", help="x0:x1:nx,y0:y1:ny,z0:z1:nz")
    p_field.add_argument("--on-curve", help="evaluate at the nodes of this preset spec")
    p_field.add_argument("--on-curve-m", type=int, default=200)
    p_field.add_argument("--epsilon", type=float, default=1e-3)
    p_field.add_argument("-o", "--output", default="field.csv")

    p_preset = sub.add_parser("preset", help="write a preset curve to CSV")
    p_preset.add_argument("name", nargs="?", help="preset spec, e.g. eight-knot")
    p_preset.add_argument("--list", action="store_true", help="list preset names")
    p_preset.add_argument("-M", type=int, default=200)
    p_preset.add_argument("--no-uniformize", action="store_true")
    p_preset.add_argument("-o", "--output", default=None)

    sub.add_parser("check", help="run the built-in invariant suite")
    return parser


def _load_side(preset_spec, file_path, m, uniformize, label):
    if (preset_spec is None) == (file_path is None):
        raise ConfigError(f"give exactly one of --preset-{label} / --file-{label}")
    if preset_spec is not None:
        return preset_curve(preset_spec).sample(m, uniformize=uniformize)
    return load_curve_csv(file_path)


def _parse_grid(spec: str) -> np.ndarray:
    axes = []
    parts = spec.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--grid needs three axes, got {spec!r}")
    for part in parts:
        fields = part.split(":")
        if len(fields) != 3:
            raise ConfigError(f"--grid axis {part!r}: expected start:stop:count")
        start, stop, count = float(fields[0]), float(fields[1]), int(fields[2])
        if count < 1:
            raise ConfigError(f"--grid axis {part!r}: count must be >= 1")
        axes.append(np.linspace(start, stop, count))
    xs, ys, zs = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([xs.ravel(), ys.ravel(), zs.ravel()])


def _cmd_run(args) -> int:
    entries = load_config_file(args.config)
    entries = apply_overrides(entries, args.set)
    config = build_config(entries)
    out_dir = args.out or config.output_dir
    if out_dir is None:
        raise ConfigError("no output directory: set output.dir or pass --out")

    frames = run(config)
    manifest_lines = sorted(f"{k}={v}" for k, v in entries.items() if k != "output.dir")
    manifest_lines.append(f"output.dir={out_dir}")
    save_run(frames, config, out_dir, manifest_lines=manifest_lines)
    for frame in frames:
        link = ";".join(
            f"{i + 1}-{j + 1}:{res.rounded if res else 'nan'}"
            for (i, j), res in sorted(frame.linking.items())
        )
        print(
            f"t={frame.time:.6g} lengths=" + ",".join(f"{v:.6g}" for v in frame.lengths)
            + (f" link={link}" if link else "")
            + (f" [{frame.status}]" if frame.status != "ok" else "")
        )
    print(f"wrote {len(frames)} frames to {out_dir}")
    if frames[-1].status != "ok":
        print(f"run stopped early: {frames[-1].status}", file=sys.stderr)
        return 2
    return 0


def _cmd_link(args) -> int:
    c1 = _load_side(args.preset_a, args.file_a, args.M, not args.no_uniformize, "a")
    c2 = _load_side(args.preset_b, args.file_b, args.M, not args.no_uniformize, "b")
    fn = linking_number_gauss if args.method == "gauss" else linking_number_via_force
    res = fn(c1, c2)
    print(f"raw = {res.raw_value:.9f}")
    print(f"rounded = {res.rounded}")
    print(f"residual = {res.residual:.3e}")
    return 0


def _cmd_field(args) -> int:
    source = _load_side(args.source, args.source_file, args.M, True, "source")
    if (args.grid is None) == (args.on_curve is None):
        raise ConfigError("give exactly one of --grid / --on-curve")
    if args.grid is not None:
        points = _parse_grid(args.grid)
    else:
        points = preset_curve(args.on_curve).sample(args.on_curve_m).nodes
    values = biot_savart_field(points, source, BiotSavartParams(epsilon=args.epsilon))
    with open(args.output, "w", newline="") as fh:
        fh.write("x,y,z,Fx,Fy,Fz\n")
        for p, v in zip(points, values):
            fh.write(",".join("%.17g" % c for c in (*p, *v)) + "\n")
    print(f"wrote {points.shape[0]} samples to {args.output}")
    return 0


def _cmd_preset(args) -> int:
    from .curves import PRESETS

    if args.list:
        for name, members in sorted(PRESETS.items()):
            print(f"{name} ({len(members)} curve{'s' if len(members) > 1 else ''})")
        return 0
    if args.name is None:
        raise ConfigError("preset: give a name or --list")
    curve = preset_curve(args.name).sample(args.M, uniformize=not args.no_uniformize)
    output = args.output or args.name.replace(":", "_") + ".csv"
    write_curve_csv(output, curve)
    print(f"wrote {len(curve)} nodes to {output}")
    return 0


def _cmd_check() -> int:
    from .checks import run_all

    results = run_all()
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "link":
            return _cmd_link(args)
        if args.command == "field":
            return _cmd_field(args)
        if args.command == "preset":
            return _cmd_preset(args)
        return _cmd_check()
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FilamentError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
