"""Command-line entry points: export, animate, serve, validate.

Exit codes: 0 success, 2 usage or input-file problems, 1 internal
consistency failures (broken validation or slicing invariants).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .multislice import LayoutParams, SliceStackConfig
from .polytope4 import validate
from .scene_io import EmptyMeshError, export_mesh, write_scene
from .session import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    SessionSettings,
    build_polytope,
    keymap,
    load_keymap,
    new_session,
    run_script,
    script_keys,
    snapshot,
    step,
)
from .slicer import ConsistencyError


def _positive_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("must be finite")
    return value


def _odd_int(text: str) -> int:
    value = int(text)
    if value <= 0 or value % 2 == 0:
        raise argparse.ArgumentTypeError("must be an odd positive integer")
    return value


def _add_session_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("session settings")
    group.add_argument(
        "--polytope",
        choices=("pentachoron", "hypercube"),
        default="pentachoron",
        help="which polytope to slice (default: pentachoron)",
    )
    group.add_argument(
        "--edge-length",
        type=_positive_float,
        default=2.0,
        help="polytope edge length (default: 2)",
    )
    group.add_argument(
        "--delta-w",
        type=_positive_float,
        default=0.25,
        help="hyperplane spacing (default: 0.25)",
    )
    group.add_argument(
        "--slices",
        type=_odd_int,
        default=13,
        help="stack size, odd (default: 13)",
    )
    group.add_argument(
        "--alpha",
        type=_finite_float,
        default=DEFAULT_ALPHA,
        help="rotation angle step in radians (default: pi/8)",
    )
    group.add_argument(
        "--beta",
        type=_finite_float,
        default=DEFAULT_BETA,
        help="second angle of double rotations (default: pi/sqrt(3) - pi/8)",
    )
    group.add_argument(
        "--spacing",
        type=_positive_float,
        default=2.5,
        help="layout arc step between slices (default: 2.5)",
    )
    group.add_argument(
        "--curvature",
        type=_finite_float,
        default=0.15,
        help="layout parabola coefficient (default: 0.15)",
    )
    group.add_argument(
        "--keymap",
        metavar="FILE",
        help="keymap override file ('<key> <action>' lines)",
    )


def _settings_from_args(args) -> SessionSettings:
    if args.curvature < 0:
        raise UsageError("--curvature must be non-negative")
    return SessionSettings(
        polytope_name=args.polytope,
        edge_length=args.edge_length,
        alpha=args.alpha,
        beta=args.beta,
        stack=SliceStackConfig(delta_w=args.delta_w, count=args.slices),
        layout=LayoutParams(spacing=args.spacing, curvature=args.curvature),
    )


class UsageError(Exception):
    pass


def _read_text(path_text: str, what: str) -> str:
    try:
        return Path(path_text).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path_text!r}: {exc}") from exc


def _keymap_table(args):
    if not args.keymap:
        return None
    try:
        return load_keymap(_read_text(args.keymap, "keymap file"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _seeded_state(args):
    state = new_session(_settings_from_args(args))
    table = _keymap_table(args)
    if args.seed_script:
        script = _read_text(args.seed_script, "key script")
        state, report = run_script(state, script, table)
        if report.skipped:
            keys = "".join(report.unknown_keys)
            print(f"skipped {report.skipped} unbound keys: {keys}", file=sys.stderr)
    return state, table


def _cmd_export(args) -> int:
    state, _ = _seeded_state(args)
    doc = snapshot(state)
    out = Path(args.out)
    if out.suffix == ".obj":
        center = len(doc.slices) // 2
        placement, mesh = doc.slices[center]
        try:
            data = export_mesh(mesh, placement, doc.rotation)
        except EmptyMeshError as exc:
            print(f"nothing to export: {exc}", file=sys.stderr)
            return 0
        out.write_bytes(data)
        print(f"wrote mesh {out} ({len(mesh.points)} vertices)")
        return 0
    out.write_bytes(write_scene(doc))
    print(f"wrote scene {out} ({len(doc.slices)} slices)")
    return 0


def _cmd_animate(args) -> int:
    settings = _settings_from_args(args)
    table = _keymap_table(args)
    script = _read_text(args.seed_script, "key script")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    state = new_session(settings)
    frames = 0
    skipped = 0
    path = out_dir / f"frame_{frames:04d}.scene"
    path.write_bytes(write_scene(snapshot(state)))
    for key in script_keys(script):
        cmd = keymap(key, table)
        if cmd is None:
            skipped += 1
            continue
        state, _ = step(state, cmd)
        frames += 1
        path = out_dir / f"frame_{frames:04d}.scene"
        path.write_bytes(write_scene(snapshot(state)))
    if skipped:
        print(f"skipped {skipped} unbound keys", file=sys.stderr)
    print(f"wrote {frames + 1} frames to {out_dir}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_settings_from_args(args), _keymap_table(args), log_dir=args.out)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return 0


def _cmd_validate(args) -> int:
    polytope = build_polytope(args.polytope, args.edge_length)
    report = validate(polytope)
    if report.ok:
        print(f"{polytope.name}: all checks passed")
        return 0
    for failure in report.failures:
        print(f"{polytope.name}: {failure.name}: {failure.detail}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourslice",
        description="Slice convex 4-polytopes with a stack of w = const "
        "hyperplanes and export or serve the resulting scenes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_export = sub.add_parser(
        "export",
        help="write one scene document (or center-slice .obj mesh)",
    )
    _add_session_args(p_export)
    p_export.add_argument("--seed-script", metavar="FILE", help="key script to apply")
    p_export.add_argument(
        "--out",
        default="scene.scene",
        help="output path; a .obj suffix exports the center slice mesh",
    )
    p_export.set_defaults(func=_cmd_export)

    p_animate = sub.add_parser(
        "animate", help="write one scene file per key of a script"
    )
    _add_session_args(p_animate)
    p_animate.add_argument(
        "--seed-script", metavar="FILE", required=True, help="key script to run"
    )
    p_animate.add_argument(
        "--out", default="frames", help="output directory (default: frames)"
    )
    p_animate.set_defaults(func=_cmd_animate)

    p_serve = sub.add_parser("serve", help="run the live session service")
    _add_session_args(p_serve)
    p_serve.add_argument("--port", type=int, default=8000, help="TCP port")
    p_serve.add_argument(
        "--out", default=None, help="directory for session logs (default: off)"
    )
    p_serve.set_defaults(func=_cmd_serve)

    p_validate = sub.add_parser("validate", help="run polytope structure checks")
    p_validate.add_argument(
        "--polytope",
        choices=("pentachoron", "hypercube"),
        default="pentachoron",
    )
    p_validate.add_argument("--edge-length", type=_positive_float, default=2.0)
    p_validate.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
