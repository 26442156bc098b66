"""Command-line front end.

    ncgears synthesize CONFIG [--out DIR]
    ncgears check-undercut CONFIG [--out DIR]
    ncgears mesh-verify CONFIG [--samples N] [--out DIR]
    ncgears export CONFIG [--svg] [--dxf] [--pose DEG] [--out DIR]

Errors are printed to stderr as one JSON object and the exit status is
nonzero: 2 for configuration or validation problems, 3 for numerical
failures, 1 when mesh verification fails its tolerance.
"""

import argparse
import json
import os
import sys

from . import base_involute
from ._tooth import DRIVE, DRIVEN
from .assembler import SynthesisReport, assemble, mesh_verify
from .config import load_config
from .errors import ConfigError, GearError
from .export import export_dxf, export_svg
from .rack import SIDES
from .report import dumps, mesh_dict, render_tables, synthesis_dict

VALIDATION_ERRORS = ("ConfigError", "InvalidTransmission", "InvalidRack",
                     "UnsupportedConfig", "NonConvexCentrode")


def _write(out, name, text):
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def _base_layers(ctx):
    layers = {}
    for gear in ("drive", "driven"):
        for side in SIDES:
            branches = base_involute.sample_base_curve(ctx, side, gear)
            pts = [[s.point for s in br] for br in branches]
            # the curve runs off to infinity near straight pitch-curve pieces; clip for display
            lim = 4 * ctx.a
            pts = [[p for p in br if abs(p) < lim] for br in pts]
            layers[f"{gear}-base{side.symbol}"] = [br for br in pts if len(br) > 1]
    return layers


def cmd_synthesize(args, cfg, ctx):
    drive, driven, rep = assemble(ctx)
    written = []
    outputs = cfg.outputs
    if "report" in outputs:
        written.append(_write(args.out, "report.json", dumps(synthesis_dict(ctx, rep))))
        written.append(_write(args.out, "report.txt", render_tables(rep)))
    if "svg" in outputs:
        written.append(_write(args.out, "gears.svg", export_svg(ctx, drive, driven, args.pose)))
    if "dxf" in outputs:
        written.append(_write(args.out, "gears.dxf", export_dxf(ctx, drive, driven, args.pose)))
    if "base-curves" in outputs:
        svg = export_svg(ctx, drive, driven, args.pose, base_curves=_base_layers(ctx))
        written.append(_write(args.out, "base_curves.svg", svg))
    if "mesh-report" in outputs:
        mesh = mesh_verify(ctx, rep, args.samples)
        written.append(_write(args.out, "mesh_report.json", dumps(mesh_dict(mesh))))
    sys.stdout.write(render_tables(rep))
    sys.stdout.write(dumps({"center_distance": rep.a, "written": written}))
    return 0


def cmd_check_undercut(args, cfg, ctx):
    diags = {}
    for gen in (DRIVE, DRIVEN):
        for k in range(1, ctx.z1 + 1):
            for side in SIDES:
                diags[(gen.name, k, side)] = gen.diagnose(ctx, k, side)
    rep = SynthesisReport(ctx.a, ctx.I_total, ctx.chi, ctx.rack.undercut_threshold,
                          diags, {}, None)
    text = render_tables(rep)
    sys.stdout.write(text)
    summary = synthesis_dict(ctx, rep)
    if args.out:
        _write(args.out, "undercut.json", dumps(summary))
        _write(args.out, "undercut.txt", text)
    free = sum(d.free for d in diags.values())
    sys.stdout.write(dumps({"free_flanks": free, "undercut_flanks": len(diags) - free}))
    return 0


def cmd_mesh_verify(args, cfg, ctx):
    _, _, rep = assemble(ctx, with_sizing=False)
    mesh = mesh_verify(ctx, rep, args.samples)
    text = dumps(mesh_dict(mesh))
    sys.stdout.write(text)
    if args.out:
        _write(args.out, "mesh_report.json", text)
    return 0 if mesh.max_deviation < 1e-9 * ctx.a else 1


def cmd_export(args, cfg, ctx):
    if not (args.svg or args.dxf):
        raise ConfigError("export needs --svg and/or --dxf", invariant="export format chosen")
    drive, driven, _ = assemble(ctx, with_sizing=False)
    written = []
    if args.svg:
        written.append(_write(args.out, "gears.svg", export_svg(ctx, drive, driven, args.pose)))
    if args.dxf:
        written.append(_write(args.out, "gears.dxf", export_dxf(ctx, drive, driven, args.pose)))
    sys.stdout.write(dumps({"written": written}))
    return 0


COMMANDS = {
    "synthesize": cmd_synthesize,
    "check-undercut": cmd_check_undercut,
    "mesh-verify": cmd_mesh_verify,
    "export": cmd_export,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="ncgears",
                                     description="Noncircular spur gear synthesis.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", help="JSON job configuration")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--tol-quad", type=float, default=None,
                       help="absolute tolerance for arc-length integrals")
        p.add_argument("--tol-root", type=float, default=None,
                       help="residual tolerance for root finding")
        p.add_argument("--samples", type=int, default=1000,
                       help="drive angles sampled by mesh verification")
        p.add_argument("--pose", type=float, default=0.0,
                       help="drive angle in degrees for exported drawings")
        if name == "export":
            p.add_argument("--svg", action="store_true")
            p.add_argument("--dxf", action="store_true")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.out is None and args.command in ("synthesize", "export"):
        args.out = "."
    try:
        cfg = load_config(args.config)
        ctx = cfg.build(args.tol_quad, args.tol_root)
        return COMMANDS[args.command](args, cfg, ctx)
    except GearError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 2 if exc.kind in VALIDATION_ERRORS else 3
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(exc)}) + "\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": "ValueError", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
