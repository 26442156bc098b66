"""Rack-generated tooth geometry shared by the drive and driven gears.

Both gears are cut by the same rack.  The formulas differ only in which
pitch curve is used and in a handful of signs, captured here by
``gear_sign``: +1 for the drive gear (its tooth sits in a rack gap) and -1
for the driven gear (a rack tooth cuts its tooth space).
"""

from dataclasses import dataclass
from math import cos, sin, tan
from typing import Optional

import numpy as np

from . import centrodes as cen
from .errors import DegenerateNormal, NoSingularPoint
from .rack import FlankSide
from .roots import newton_bisect, scan_roots
from .transmission import (drive_curvature, drive_turn_rate, driven_curvature,
                           driven_turn_rate)

DEGENERATE_TURN = 1e-9
SCAN_POINTS = 96


@dataclass(frozen=True)
class FlankDiagnosis:
    """Undercut analysis of one flank.

    ``phi_singular`` is ``None`` when the flank has no cusp within the search
    window; such a flank is free.  ``free`` comes from the curvature
    criterion and ``free_by_ordering`` from comparing the cusp with the
    flank-to-fillet contact; the two must agree.
    """

    gear: str
    k: int
    side: FlankSide
    phi_singular: Optional[float]
    curvature_at_singular: Optional[float]
    phi_contact: float
    threshold: float
    free: bool
    free_by_ordering: bool

    @property
    def status(self):
        return "free" if self.free else "undercut"


class ToothGenerator:
    """Flank, fillet and undercut geometry for one gear of the pair."""

    def __init__(self, name, gear_sign, centrode, tangent, turn_rate, curvature,
                 addendum, dedendum):
        self.name = name
        self.g = gear_sign
        self._centrode = centrode
        self._tangent = tangent
        self._turn = turn_rate
        self._curv = curvature
        self.addendum = addendum
        self.dedendum = dedendum

    # -- pitch-curve data ---------------------------------------------------

    def centrode(self, ctx, phi):
        return self._centrode(ctx, phi)

    def tangent(self, ctx, phi):
        return self._tangent(ctx, phi)

    def turn_rate(self, ctx, phi):
        return self._turn(ctx.spec, phi)

    def curvature(self, ctx, phi):
        return self._curv(ctx.spec, ctx.a, phi)

    def tip_direction(self, side):
        """+1 if the flank tip is generated at larger ``phi`` than its root."""
        return -self.g * FlankSide.of(side).sign

    # -- rack position ------------------------------------------------------

    @staticmethod
    def rack_offset(ctx, k, side, phi):
        """Signed distance along the tangent from the pitch point to the flank line's foot."""
        s = FlankSide.of(side).sign
        return s * ctx.pitch / 4 - ctx.a * ctx.arc(ctx.chi_of(k), phi)

    @staticmethod
    def rack_offset_rate(ctx, phi):
        """Derivative of the rack offset with respect to ``phi``; always negative."""
        return -ctx.a * ctx.density(phi)

    def phi_for_offset(self, ctx, k, side, lam, what="rack offset"):
        """Drive angle at which the rack offset equals ``lam``."""
        s = FlankSide.of(side).sign * ctx.pitch / 4 - lam
        cen.check_window(ctx, s, what)
        return ctx.phi_at_arclength(ctx.chi_of(k), s)

    def window(self, ctx, k, pitches=2.0):
        """Drive-angle interval spanning ``pitches`` pitches either side of tooth ``k``."""
        chi = ctx.chi_of(k)
        return (ctx.phi_at_arclength(chi, -pitches * ctx.pitch),
                ctx.phi_at_arclength(chi, pitches * ctx.pitch))

    # -- curves -------------------------------------------------------------

    def rack_flank_line(self, ctx, k, side, phi, mu):
        """Point at parameter ``mu`` on the straight rack flank, gear frame."""
        side = FlankSide.of(side)
        lam = self.rack_offset(ctx, k, side, phi)
        return (self.centrode(ctx, phi)
                + (lam + mu * 1j * np.exp(1j * side.sign * ctx.rack.alpha))
                * self.tangent(ctx, phi))

    def flank_point(self, ctx, k, side, phi):
        """Point of the generated flank at drive angle ``phi``."""
        side = FlankSide.of(side)
        al = ctx.rack.alpha
        lam = self.rack_offset(ctx, k, side, phi)
        return (self.centrode(ctx, phi)
                + lam * cos(al) * np.exp(1j * side.sign * al) * self.tangent(ctx, phi))

    def _center_offset(self, ctx, k, side, phi):
        side = FlankSide.of(side)
        rk = ctx.rack
        lam = self.rack_offset(ctx, k, side, phi)
        shift = rk.rho / cos(rk.alpha) + (rk.h_f - rk.rho) * tan(rk.alpha)
        return lam + self.g * side.sign * shift - self.g * 1j * (rk.h_f - rk.rho)

    def midpoint_curve(self, ctx, k, side, phi):
        """Path of the center of the rack's tip rounding, gear frame."""
        return (self.centrode(ctx, phi)
                + self._center_offset(ctx, k, side, phi) * self.tangent(ctx, phi))

    def fillet_point(self, ctx, k, side, phi):
        """Point of the fillet curve cut by the rack's tip rounding."""
        c = self._center_offset(ctx, k, side, phi)
        T = self.tangent(ctx, phi)
        if abs(c) == 0.0:
            raise DegenerateNormal("rounding center on the pitch curve",
                                   invariant="|M - P| > 0")
        normal = -self.g * self._turn_sign(ctx, phi) * c * T / abs(c)
        return self.centrode(ctx, phi) + c * T + ctx.rack.rho * normal

    def _turn_sign(self, ctx, phi):
        h = self.turn_rate(ctx, phi)
        if abs(h) >= DEGENERATE_TURN:
            return np.sign(h)
        # isolated zero: borrow the sign from the closest regular neighbour
        for e in range(20, 4, -1):
            for probe in (phi - 2.0 ** -e, phi + 2.0 ** -e):
                hp = self.turn_rate(ctx, probe)
                if abs(hp) >= DEGENERATE_TURN:
                    return np.sign(hp)
        raise DegenerateNormal(f"turn rate vanishes around phi={phi:.9g}",
                               invariant="|h| >= 1e-9")

    # -- characteristic parameters -----------------------------------------

    def fillet_dedendum_contact(self, ctx, k, side):
        """Drive angle where the fillet touches the dedendum curve."""
        side = FlankSide.of(side)
        rk = ctx.rack
        lam = -self.g * side.sign * (rk.l1 + rk.l2)
        return self.phi_for_offset(ctx, k, side, lam, "fillet-dedendum contact")

    def flank_fillet_contact(self, ctx, k, side):
        """Drive angle where the straight flank and the tip rounding share a contact point."""
        side = FlankSide.of(side)
        rk = ctx.rack
        lam = -self.g * side.sign * rk.junction_offset / cos(rk.alpha)
        return self.phi_for_offset(ctx, k, side, lam, "flank-fillet contact")

    def singular_residual(self, ctx, k, side, phi):
        side = FlankSide.of(side)
        return (self.rack_offset(ctx, k, side, phi) * self.curvature(ctx, phi)
                - side.sign * tan(ctx.rack.alpha))

    def singular_point(self, ctx, k, side):
        """Drive angle of the flank cusp closest to the tooth middle."""
        side = FlankSide.of(side)
        f = lambda p: self.singular_residual(ctx, k, side, p)
        lo, hi = self.window(ctx, k)
        brackets = scan_roots(f, lo, hi, SCAN_POINTS)
        if not brackets:
            raise NoSingularPoint(
                f"{self.name} flank ({k}, {side.symbol}) has no cusp within two pitches",
                invariant="lambda * kappa = +-tan(alpha) has a root")
        chi = ctx.chi_of(k)
        a, b = min(brackets, key=lambda ab: abs(0.5 * (ab[0] + ab[1]) - chi))
        if a == b:
            return a
        step = 1e-7

        def df(p):
            return (f(p + step) - f(p - step)) / (2 * step)

        return newton_bisect(f, df, a, b, ftol=ctx.tol.root, max_iter=ctx.tol.max_iter)

    def diagnose(self, ctx, k, side):
        """Undercut analysis by the curvature criterion and by the ordering test."""
        side = FlankSide.of(side)
        thr = ctx.rack.undercut_threshold
        phi_b = self.flank_fillet_contact(ctx, k, side)
        try:
            phi_s = self.singular_point(ctx, k, side)
        except NoSingularPoint:
            return FlankDiagnosis(self.name, k, side, None, None, phi_b, thr, True, True)
        kap = float(self.curvature(ctx, phi_s))
        free = -self.g * kap <= thr
        ordering = (phi_b - phi_s) * self.tip_direction(side) >= 0
        return FlankDiagnosis(self.name, k, side, phi_s, kap, phi_b, thr, bool(free),
                              bool(ordering))

    def undercut_flank(self, ctx, k, side):
        """``"free"`` or ``"undercut"`` for the given flank."""
        return self.diagnose(ctx, k, side).status


DRIVE = ToothGenerator(
    "drive", +1, cen.drive_centrode, cen.drive_tangent, drive_turn_rate,
    drive_curvature, cen.drive_addendum, cen.drive_dedendum)

DRIVEN = ToothGenerator(
    "driven", -1, cen.driven_centrode, cen.driven_tangent, driven_turn_rate,
    driven_curvature, cen.driven_addendum, cen.driven_dedendum)

GENERATORS = {"drive": DRIVE, "driven": DRIVEN}


def generator(gear):
    try:
        return GENERATORS[gear]
    except KeyError:
        raise ValueError(f"gear must be 'drive' or 'driven', not {gear!r}") from None


__all__ = ["FlankDiagnosis", "ToothGenerator", "DRIVE", "DRIVEN", "generator"]
