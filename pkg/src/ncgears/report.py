"""Serialisation of synthesis and mesh reports (JSON and aligned text)."""

import json
from dataclasses import asdict

import numpy as np

from .rack import SIDES


def sig9(x):
    """Round a float to nine significant digits."""
    return float(format(float(x), ".9g"))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return sig9(obj)
    return obj


def dumps(obj):
    """Deterministic JSON with nine-significant-digit floats."""
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def synthesis_dict(ctx, report):
    rk = ctx.rack
    flanks = []
    for (gear, k, side), d in sorted(report.diagnoses.items(),
                                     key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        seg = report.segments.get((gear, k, side))
        row = {
            "gear": gear, "k": k, "side": side.symbol,
            "phi_singular": d.phi_singular, "curvature_at_singular": d.curvature_at_singular,
            "phi_flank_fillet_contact": d.phi_contact, "status": d.status,
            "ordering_agrees": d.free == d.free_by_ordering,
        }
        if seg is not None:
            row.update({
                "phi_flank": list(seg.phi_F), "phi_fillet": list(seg.phi_A),
                "phi_tip": seg.phi_tip, "junction_residual": seg.junction_residual,
                "tip_residual": seg.tip_residual,
                "multiple_junctions": seg.multiple_junctions,
            })
        flanks.append(row)
    out = {
        "transmission": {"name": ctx.spec.name, "parameters": ctx.spec.parameters},
        "rack": {"m": rk.m, "alpha_deg": float(np.degrees(rk.alpha)), "h_a": rk.h_a,
                 "h_f": rk.h_f, "rho": rk.rho},
        "z1": ctx.z1, "z2": ctx.z2,
        "center_distance": report.a, "arc_integral_total": report.I_total,
        "tooth_middles": [{"k": k, "chi": c} for k, c in enumerate(report.chi, 1)],
        "undercut_threshold": report.threshold,
        "flanks": flanks,
        "closure_error": dict(report.closure_error),
    }
    if report.sizing is not None:
        s = report.sizing
        out["sizing"] = {"m_max": s.m_max(report.a), "a_over_m_min": s.a_over_m_min,
                         "z1_min": s.z1_min, "z1_bound": s.z1_bound}
    return out


def mesh_dict(mesh):
    return asdict(mesh)


def _num(x, width=13):
    return ("none" if x is None else format(float(x), ".9g")).rjust(width)


def render_tables(report, gears=("drive", "driven")):
    """Plain-text tables of tooth middles and flank cusps."""
    lines = ["Tooth middles", f"{'k':>3} {'chi(k)':>13}"]
    for k, c in enumerate(report.chi, 1):
        lines.append(f"{k:>3} {_num(c)}")
    z = len(report.chi)
    for gear in gears:
        if not any(key[0] == gear for key in report.diagnoses):
            continue
        lines += ["", f"Flank cusps, {gear} gear (threshold {report.threshold:.9g})",
                  f"{'k':>3} {'phi_S-':>13} {'kappa(phi_S-)':>13} {'UC-':>4} "
                  f"{'phi_S+':>13} {'kappa(phi_S+)':>13} {'UC+':>4}"]
        for k in range(1, z + 1):
            cells = []
            for side in SIDES:
                d = report.diagnoses[(gear, k, side)]
                cells.append(f"{_num(d.phi_singular)} {_num(d.curvature_at_singular)} "
                             f"{('yes' if not d.free else '-'):>4}")
            lines.append(f"{k:>3} " + " ".join(cells))
    return "\n".join(lines) + "\n"
