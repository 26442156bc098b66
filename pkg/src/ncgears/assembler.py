"""Trimming of flanks and fillets, and assembly of closed gear outlines.

Each flank side contributes a working flank (from its junction with the
fillet up to the addendum curve) and a fillet (from the junction down to
the dedendum curve).  Where a flank is undercut the junction is the
intersection of the fillet with the flank beyond its cusp; otherwise it is
the point where rack flank and tip rounding touch the gear together.
"""

from dataclasses import dataclass, field
from math import pi
from typing import Optional

import numpy as np
import shapely

from ._tooth import DRIVE, DRIVEN, FlankDiagnosis, generator
from .centrodes import SynthesisContext, check_window
from .complex_plane import ext
from .drive_tooth import SizingBounds, sizing
from .errors import (ClosureFailure, InvalidGeometry, RootNotBracketed,
                     RootNotConverged, SolverDiverged)
from .rack import SIDES, FlankSide
from .roots import curve_intersections, newton_bisect
from .transmission import TWO_PI

CHORD_TOL = 1e-4  # chord height, in modules
GRID = 200


@dataclass(frozen=True)
class FlankSegments:
    """Trimmed parameter intervals of one flank side.

    ``phi_F`` and ``phi_A`` are ``(junction, end)`` pairs: the working
    flank runs from the junction to the tip, the fillet from the junction to
    the dedendum contact.  ``phi_tip`` is the addendum-curve parameter of the
    tip corner.  ``multiple_junctions`` flags an ambiguous undercut trim.
    """

    gear: str
    k: int
    side: FlankSide
    undercut: bool
    phi_F: tuple
    phi_A: tuple
    phi_tip: float
    junction_residual: float
    tip_residual: float
    multiple_junctions: bool = False

    @property
    def flank_interval(self):
        return tuple(sorted(self.phi_F))

    @property
    def fillet_interval(self):
        return tuple(sorted(self.phi_A))


@dataclass
class GearProfile:
    """Closed outline of one gear in its own rotating frame.

    Vertex arrays are parallel: ``points`` (complex, mm), ``source`` (one of
    flank, fillet, addendum, dedendum), tooth index ``k``, flank ``side``
    (+1, -1, or 0 on arcs) and the generating drive angle ``phi``.
    """

    gear: str
    points: np.ndarray
    source: np.ndarray
    k: np.ndarray
    side: np.ndarray
    phi: np.ndarray
    closed: bool = True

    def __len__(self):
        return len(self.points)

    @property
    def xy(self):
        return np.column_stack([self.points.real, self.points.imag])

    def signed_area(self):
        p = self.points
        return 0.5 * float(np.sum(ext(p, np.roll(p, -1))))

    @property
    def orientation(self):
        return 1 if self.signed_area() > 0 else -1

    def is_simple(self):
        return bool(shapely.LinearRing(self.xy).is_simple)

    def vertices(self):
        """Iterate ``(point, source, k, side, phi)`` tuples."""
        return zip(self.points, self.source, self.k, self.side, self.phi)

    def select(self, source=None, k=None, side=None):
        mask = np.ones(len(self.points), bool)
        if source is not None:
            mask &= self.source == source
        if k is not None:
            mask &= self.k == k
        if side is not None:
            mask &= self.side == int(FlankSide.of(side))
        return mask


@dataclass
class SynthesisReport:
    """Global quantities and per-flank results of one synthesis run."""

    a: float
    I_total: float
    chi: tuple
    threshold: float
    diagnoses: dict
    segments: dict
    sizing: Optional[SizingBounds]
    closure_error: dict = field(default_factory=dict)


@dataclass
class MeshReport:
    samples: int
    max_deviation: float
    max_transmission_error: float
    band: tuple
    min_active_pairs: int
    uncovered_samples: int
    checked_pairs: int


# -- adaptive polyline sampling --------------------------------------------

def sample_curve(f, t0, t1, tol, n0=8, max_depth=16):
    """Sample ``f`` from ``t0`` to ``t1`` until chord heights are below ``tol``."""
    ts = np.linspace(t0, t1, n0 + 1)
    pts = [f(t) for t in ts]
    out_t, out_p = [ts[0]], [pts[0]]

    def refine(ta, pa, tb, pb, depth):
        tm = 0.5 * (ta + tb)
        pm = f(tm)
        chord = pb - pa
        if abs(chord) > 0:
            height = abs(ext(chord, pm - pa)) / abs(chord)
        else:
            height = abs(pm - pa)
        if height > tol and depth < max_depth:
            refine(ta, pa, tm, pm, depth + 1)
            refine(tm, pm, tb, pb, depth + 1)
        else:
            # keep the midpoint: it is already computed and tightens the polyline
            out_t.extend((tm, tb))
            out_p.extend((pm, pb))

    for i in range(n0):
        refine(ts[i], pts[i], ts[i + 1], pts[i + 1], 0)
    return np.array(out_t), np.array(out_p)


# -- trimming --------------------------------------------------------------

def _phi_at(ctx, k, s):
    return ctx.phi_at_arclength(ctx.chi_of(k), s)


def _sigma(ctx, k, phi):
    return ctx.a * ctx.arc(ctx.chi_of(k), phi)


def trim_flank(ctx, gear, k, side, diagnosis=None):
    """Working-flank and fillet intervals of one flank side."""
    gen = generator(gear)
    side = FlankSide.of(side)
    t = gen.tip_direction(side)
    diag = diagnosis or gen.diagnose(ctx, k, side)
    phi_ded = gen.fillet_dedendum_contact(ctx, k, side)
    pitch = ctx.pitch
    tol = ctx.tol.root * ctx.a
    flank = lambda u: gen.flank_point(ctx, k, side, u)
    fillet = lambda v: gen.fillet_point(ctx, k, side, v)

    def ident(what):
        return dict(gear=gen.name, k=k, side=side.symbol, equation=what)

    multiple = False
    if diag.free:
        u_j = v_j = diag.phi_contact
        res_j = abs(flank(u_j) - fillet(v_j))
    else:
        phi_s = diag.phi_singular
        s_s = _sigma(ctx, k, phi_s)
        s_b = _sigma(ctx, k, diag.phi_contact)
        s_d = _sigma(ctx, k, phi_ded)
        u_rng = (phi_s, _phi_at(ctx, k, s_s + t * pitch))
        v_rng = (_phi_at(ctx, k, s_b - t * 0.5 * pitch), phi_ded)
        try:
            roots = curve_intersections(flank, fillet, u_rng, v_rng, tol, GRID,
                                        ctx.tol.max_iter)
        except RootNotConverged as exc:
            raise SolverDiverged(str(exc), invariant="flank meets fillet",
                                 **ident("flank = fillet")) from exc
        eps = 1e-9
        roots = [r for r in roots if t * (r[0] - phi_s) > eps]
        if not roots:
            raise SolverDiverged(
                f"{gen.name} flank ({k}, {side.symbol}): fillet does not cross the working flank",
                invariant="flank meets fillet", **ident("flank = fillet"))
        multiple = len(roots) > 1
        u_j, v_j, res_j = min(roots, key=lambda r: t * (r[0] - phi_s))

    s_j = _sigma(ctx, k, u_j)
    u_rng = (u_j, _phi_at(ctx, k, t * 2 * pitch))
    if t * (u_rng[1] - u_rng[0]) <= 0:
        raise InvalidGeometry(f"{gen.name} flank ({k}, {side.symbol}) starts beyond the window",
                              invariant="junction within two pitches", **ident("flank = addendum"))
    v_rng = (_phi_at(ctx, k, -1.5 * pitch), _phi_at(ctx, k, 1.5 * pitch))
    tips = curve_intersections(flank, lambda v: gen.addendum(ctx, v), u_rng, v_rng, tol,
                               GRID, ctx.tol.max_iter)
    tips = [r for r in tips if t * (r[0] - u_j) > 0]
    if not tips:
        raise InvalidGeometry(
            f"{gen.name} flank ({k}, {side.symbol}) never reaches the addendum curve",
            invariant="flank meets addendum curve", **ident("flank = addendum"))
    u_tip, v_tip, res_tip = min(tips, key=lambda r: t * (r[0] - u_j))
    del s_j
    return FlankSegments(gen.name, k, side, not diag.free, (u_j, u_tip), (v_j, phi_ded),
                         v_tip, float(res_j), float(res_tip), multiple)


# -- assembly --------------------------------------------------------------

def _append(buf, f, t0, t1, tol, source, k, side):
    ts, ps = sample_curve(f, t0, t1, tol)
    if buf["points"]:
        gap = abs(buf["points"][-1] - ps[0])
        buf["gaps"].append(gap)
        ts, ps = ts[1:], ps[1:]
    n = len(ts)
    buf["points"].extend(ps.tolist())
    buf["phi"].extend(ts.tolist())
    buf["source"].extend([source] * n)
    buf["k"].extend([k] * n)
    buf["side"].extend([side] * n)


def _outline(ctx, gen, segs):
    """Chain trimmed segments of one gear into a closed outline."""
    tol = CHORD_TOL * ctx.m
    z = ctx.z1
    buf = {"points": [], "phi": [], "source": [], "k": [], "side": [], "gaps": []}
    lo_curve = gen.dedendum
    hi_curve = gen.addendum

    def fl(k, s):
        return lambda u: gen.flank_point(ctx, k, s, u)

    def fi(k, s):
        return lambda v: gen.fillet_point(ctx, k, s, v)

    def arc(curve):
        return lambda v: curve(ctx, v)

    def check_order(t0, t1, what):
        if not t1 > t0:
            raise InvalidGeometry(f"{gen.name} {what} has an empty parameter interval "
                                  f"[{t0:.9g}, {t1:.9g}]", invariant="arcs nonempty")

    for k in range(1, z + 1):
        m_, p_ = segs[(k, FlankSide.MINUS)], segs[(k, FlankSide.PLUS)]
        wrap = TWO_PI if k == z else 0.0
        if gen is DRIVE:
            nxt = segs[(1 if k == z else k + 1, FlankSide.MINUS)]
            check_order(m_.phi_tip, p_.phi_tip, f"tip arc of tooth {k}")
            check_order(p_.phi_A[1], nxt.phi_A[1] + wrap, f"root arc after tooth {k}")
            _append(buf, fi(k, -1), m_.phi_A[1], m_.phi_A[0], tol, "fillet", k, -1)
            _append(buf, fl(k, -1), m_.phi_F[0], m_.phi_F[1], tol, "flank", k, -1)
            _append(buf, arc(hi_curve), m_.phi_tip, p_.phi_tip, tol, "addendum", k, 0)
            _append(buf, fl(k, 1), p_.phi_F[1], p_.phi_F[0], tol, "flank", k, 1)
            _append(buf, fi(k, 1), p_.phi_A[0], p_.phi_A[1], tol, "fillet", k, 1)
            _append(buf, arc(lo_curve), p_.phi_A[1], nxt.phi_A[1] + wrap, tol,
                    "dedendum", k, 0)
        else:
            nxt = segs[(1 if k == z else k + 1, FlankSide.MINUS)]
            check_order(m_.phi_A[1], p_.phi_A[1], f"root arc of space {k}")
            check_order(p_.phi_tip, nxt.phi_tip + wrap, f"tip arc after space {k}")
            _append(buf, fl(k, -1), m_.phi_F[1], m_.phi_F[0], tol, "flank", k, -1)
            _append(buf, fi(k, -1), m_.phi_A[0], m_.phi_A[1], tol, "fillet", k, -1)
            _append(buf, arc(lo_curve), m_.phi_A[1], p_.phi_A[1], tol, "dedendum", k, 0)
            _append(buf, fi(k, 1), p_.phi_A[1], p_.phi_A[0], tol, "fillet", k, 1)
            _append(buf, fl(k, 1), p_.phi_F[0], p_.phi_F[1], tol, "flank", k, 1)
            _append(buf, arc(hi_curve), p_.phi_tip, nxt.phi_tip + wrap, tol,
                    "addendum", k, 0)
    closure = abs(buf["points"][-1] - buf["points"][0])
    worst = max(buf["gaps"] + [closure])
    if worst > ctx.tol.geom * ctx.a:
        raise ClosureFailure(f"{gen.name} outline has an endpoint mismatch of {worst:.3g} mm",
                             invariant="consecutive segments share endpoints")
    sl = slice(0, -1)  # the last vertex repeats the first
    prof = GearProfile(gen.name, np.array(buf["points"][sl]),
                       np.array(buf["source"][sl]), np.array(buf["k"][sl]),
                       np.array(buf["side"][sl]), np.array(buf["phi"][sl]), True)
    return prof, worst


def assemble(ctx: SynthesisContext, with_sizing=True):
    """Trim every flank of both gears and build their closed outlines.

    Returns ``(drive_profile, driven_profile, report)``.
    """
    diagnoses, segments, closure = {}, {}, {}
    profiles = []
    for gen in (DRIVE, DRIVEN):
        segs = {}
        for k in range(1, ctx.z1 + 1):
            for side in SIDES:
                d = gen.diagnose(ctx, k, side)
                diagnoses[(gen.name, k, side)] = d
                segs[(k, side)] = trim_flank(ctx, gen.name, k, side, d)
                segments[(gen.name, k, side)] = segs[(k, side)]
        prof, worst = _outline(ctx, gen, segs)
        closure[gen.name] = worst
        profiles.append(prof)
    rk = ctx.rack
    bounds = None
    if with_sizing:
        bounds = sizing(ctx.spec, rk.alpha, rk.h_f / rk.m, rk.rho / rk.m)
    report = SynthesisReport(ctx.a, ctx.I_total, ctx.chi, rk.undercut_threshold,
                             diagnoses, segments, bounds, closure)
    return profiles[0], profiles[1], report


# -- mesh verification -----------------------------------------------------

def _in_interval(phi, interval):
    lo, hi = interval
    for shift in (0.0, TWO_PI, -TWO_PI):
        if lo <= phi + shift <= hi:
            return phi + shift
    return None


def mesh_verify(ctx, report, samples=1000):
    """Check contact between the trimmed working flanks over one revolution.

    For every sampled drive angle and every flank pair whose working
    intervals both contain it, the drive and driven contact points are
    compared in the fixed frame, and the driven rotation is recovered from
    the driven flank alone to measure transmission error.
    """
    phis = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    max_dev = max_te = 0.0
    band_lo, band_hi = np.inf, -np.inf
    min_active = None
    uncovered = checked = 0
    pairs = [(k, s) for k in range(1, ctx.z1 + 1) for s in SIDES]
    for phi in phis:
        active = 0
        for k, s in pairs:
            dseg = report.segments[("drive", k, s)]
            eseg = report.segments[("driven", k, s)]
            p = _in_interval(phi, dseg.flank_interval)
            if p is None or _in_interval(p, eseg.flank_interval) != p:
                continue
            active += 1
            checked += 1
            psi = ctx.spec.derivatives(p)[0]
            x = DRIVE.flank_point(ctx, k, s, p) * np.exp(1j * p)
            y = ctx.a + DRIVEN.flank_point(ctx, k, s, p) * np.exp(-1j * psi)
            max_dev = max(max_dev, abs(x - y))
            tau = DRIVE.tangent(ctx, p) * np.exp(1j * p)
            r = ctx.a * ctx.spec.derivatives(p)[1] / (1 + ctx.spec.derivatives(p)[1])
            height = float(ext(tau, x - r))
            band_lo, band_hi = min(band_lo, height), max(band_hi, height)
            gamma = _driven_rotation(ctx, k, s, x, eseg.flank_interval, p)
            if gamma is not None:
                err = (gamma - psi + pi) % TWO_PI - pi
                max_te = max(max_te, abs(err))
        if active == 0:
            uncovered += 1
        min_active = active if min_active is None else min(min_active, active)
    return MeshReport(samples, float(max_dev), float(max_te), (float(band_lo), float(band_hi)),
                      int(min_active or 0), uncovered, checked)


def _driven_rotation(ctx, k, s, contact, interval, guess):
    """Rotation of the driven gear that brings its flank through ``contact``.

    Finds the driven flank point at the contact's distance from the driven
    pivot, then reads off the rotation angle mapping it onto the contact.
    """
    target = abs(contact - ctx.a)
    radial = lambda u: abs(DRIVEN.flank_point(ctx, k, s, u)) - target
    step = 1e-7

    def d(u):
        return (radial(u + step) - radial(u - step)) / (2 * step)

    lo, hi = interval
    try:
        u = newton_bisect(radial, d, lo, hi, ftol=1e-13 * ctx.a, max_iter=200, x0=guess)
    except (RootNotBracketed, RootNotConverged):
        return None
    q = DRIVEN.flank_point(ctx, k, s, u)
    return float(np.angle(q / (contact - ctx.a)))


__all__ = ["FlankSegments", "GearProfile", "SynthesisReport", "MeshReport",
           "sample_curve", "trim_flank", "assemble", "mesh_verify", "FlankDiagnosis",
           "check_window"]
