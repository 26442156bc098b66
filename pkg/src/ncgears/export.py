"""SVG and DXF writers for assembled gear outlines.

Both writers place the pair in the fixed frame: the drive outline is
rotated by the drive angle about the origin, the driven outline by the
matching driven angle (in the opposite sense) about its pivot at
``(a, 0)``.  Coordinates are millimetres.
"""

import re

import numpy as np

from .centrodes import drive_centrode, driven_centrode, drive_radius

NUM = "{:.9g}"


def _fmt(x):
    s = NUM.format(float(x))
    return "0" if s == "-0" else s


def place(ctx, profile, phi):
    """Fixed-frame vertices of an outline at drive angle ``phi``."""
    if profile.gear == "drive":
        return profile.points * np.exp(1j * phi)
    psi = ctx.spec.derivatives(phi)[0]
    return ctx.a + profile.points * np.exp(-1j * psi)


def _path(points, closed=True):
    head = f"M {_fmt(points[0].real)},{_fmt(points[0].imag)}"
    body = " ".join(f"L {_fmt(p.real)},{_fmt(p.imag)}" for p in points[1:])
    return f"{head} {body}{' Z' if closed else ''}"


def export_svg(ctx, drive, driven, pose_deg=0.0, centrodes=True, base_curves=None):
    """SVG document with both outlines at the given drive angle (degrees).

    ``base_curves`` may map a layer name to a list of point branches (in the
    rotating frame of the named gear) to draw as open paths.
    """
    phi = np.radians(pose_deg)
    psi = ctx.spec.derivatives(phi)[0]
    layers = []
    pts_d = place(ctx, drive, phi)
    pts_e = place(ctx, driven, phi)
    layers.append(f'  <path id="drive" d="{_path(pts_d)}" fill="none" stroke="#1f4e9c" '
                  f'stroke-width="0.05"/>')
    layers.append(f'  <path id="driven" d="{_path(pts_e)}" fill="none" stroke="#9c1f1f" '
                  f'stroke-width="0.05"/>')
    if centrodes:
        t = np.linspace(0.0, 2 * np.pi, 721)[:-1]
        cd = np.array([drive_centrode(ctx, x) for x in t]) * np.exp(1j * phi)
        ce = ctx.a + np.array([driven_centrode(ctx, x) for x in t]) * np.exp(-1j * psi)
        for name, pts in (("drive-centrode", cd), ("driven-centrode", ce)):
            layers.append(f'  <path id="{name}" d="{_path(pts)}" fill="none" stroke="#888888" '
                          f'stroke-width="0.03" stroke-dasharray="0.4,0.2"/>')
        r = drive_radius(ctx, phi)
        layers.append(f'  <circle id="pitch-point" cx="{_fmt(r)}" cy="0" r="0.2" '
                      f'fill="#000000"/>')
    for name, branches in (base_curves or {}).items():
        rot = (lambda p: p * np.exp(1j * phi)) if name.startswith("drive") else \
            (lambda p: ctx.a + p * np.exp(-1j * psi))
        d = " ".join(_path(rot(np.asarray(b)), closed=False) for b in branches if len(b) > 1)
        layers.append(f'  <path id="{name}" d="{d}" fill="none" stroke="#2a8f2a" '
                      f'stroke-width="0.03"/>')
    allpts = np.concatenate([pts_d, pts_e])
    pad = 2.0 * ctx.m
    x0, x1 = allpts.real.min() - pad, allpts.real.max() + pad
    y0, y1 = allpts.imag.min() - pad, allpts.imag.max() + pad
    w, h = x1 - x0, y1 - y0
    # y points up in the drawing: flip inside a group, shift the view box accordingly
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}mm" height="{_fmt(h)}mm" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}">',
        ' <g transform="scale(1,-1)">',
        *layers,
        ' </g>',
        '</svg>',
        "",
    ])


def export_dxf(ctx, drive, driven, pose_deg=0.0):
    """ASCII DXF (R12) with each outline as a closed POLYLINE on its own layer."""
    phi = np.radians(pose_deg)
    out = ["0", "SECTION", "2", "HEADER",
           "9", "$ACADVER", "1", "AC1009",
           "9", "$INSUNITS", "70", "4",
           "0", "ENDSEC",
           "0", "SECTION", "2", "ENTITIES"]
    for prof in (drive, driven):
        layer = prof.gear.upper()
        out += ["0", "POLYLINE", "8", layer, "66", "1", "70", "1",
                "10", "0", "20", "0", "30", "0"]
        for p in place(ctx, prof, phi):
            out += ["0", "VERTEX", "8", layer, "10", _fmt(p.real), "20", _fmt(p.imag),
                    "30", "0"]
        out += ["0", "SEQEND", "8", layer]
    out += ["0", "ENDSEC", "0", "EOF"]
    return "\n".join(out) + "\n"


def read_dxf_polylines(text):
    """Parse POLYLINE entities from ASCII DXF text.

    Returns a dict mapping layer name to ``(points, closed)``.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    pairs = list(zip(lines[0::2], lines[1::2]))
    result = {}
    i = 0
    while i < len(pairs):
        code, value = pairs[i]
        if code == "0" and value == "POLYLINE":
            layer, closed, pts = "0", False, []
            i += 1
            while pairs[i][0] != "0":
                c, v = pairs[i]
                if c == "8":
                    layer = v
                elif c == "70":
                    closed = bool(int(v) & 1)
                i += 1
            while pairs[i] == ("0", "VERTEX"):
                i += 1
                x = y = 0.0
                while pairs[i][0] != "0":
                    c, v = pairs[i]
                    if c == "10":
                        x = float(v)
                    elif c == "20":
                        y = float(v)
                    i += 1
                pts.append(complex(x, y))
            result[layer] = (np.array(pts), closed)
        i += 1
    return result


def read_svg_paths(text):
    """Point lists of the ``path`` elements in an SVG written by :func:`export_svg`."""
    out = {}
    for pid, d in re.findall(r'<path id="([^"]+)" d="([^"]*)"', text):
        nums = re.findall(r"[ML] ([-0-9.e+]+),([-0-9.e+]+)", d)
        out[pid] = np.array([complex(float(x), float(y)) for x, y in nums])
    return out
