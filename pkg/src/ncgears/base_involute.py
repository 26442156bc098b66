"""Base curves, their involutes and flank radii of curvature.

Each flank side has its own base curve: the locus of the points where the
rack flank's normal line touches its envelope's evolute.  The generated
flank is an involute of that curve, starting at the flank cusp.
"""

from dataclasses import dataclass
from math import cos, sin

import numpy as np

from ._tooth import DRIVE, DRIVEN, generator
from .errors import PointAtInfinity
from .rack import FlankSide

KAPPA_FLOOR = 1e-8


@dataclass(frozen=True)
class BaseCurveSample:
    phi: float
    point: complex
    regular: bool


def _base_point(gen, ctx, side, phi):
    side = FlankSide.of(side)
    kap = float(gen.curvature(ctx, phi))
    if abs(kap) < KAPPA_FLOOR / ctx.a:
        raise PointAtInfinity(f"base curve at infinity: curvature {kap:.3g} at phi={phi:.9g}",
                              invariant="|kappa| >= 1e-8 / a", phi=float(phi))
    al = ctx.rack.alpha
    return (gen.centrode(ctx, phi)
            + side.sign * sin(al) / kap * gen.tangent(ctx, phi) * np.exp(1j * side.sign * al))


def base_curve_drive(ctx, side, phi):
    """Base-curve point of the drive gear for one flank side."""
    return _base_point(DRIVE, ctx, side, phi)


def base_curve_driven(ctx, side, phi):
    """Base-curve point of the driven gear for one flank side."""
    return _base_point(DRIVEN, ctx, side, phi)


def _involute(gen, ctx, side, phi_s, phi):
    side = FlankSide.of(side)
    al = ctx.rack.alpha
    kap_s = float(gen.curvature(ctx, phi_s))
    arm = ctx.a * cos(al) * ctx.arc(phi_s, phi) - side.sign * sin(al) / kap_s
    return gen.centrode(ctx, phi) - arm * gen.tangent(ctx, phi) * np.exp(1j * side.sign * al)


def involute_drive(ctx, side, phi_s, phi):
    """Involute of the drive base curve whose cusp is generated at ``phi_s``."""
    return _involute(DRIVE, ctx, side, phi_s, phi)


def involute_driven(ctx, side, phi_s, phi):
    """Involute of the driven base curve whose cusp is generated at ``phi_s``."""
    return _involute(DRIVEN, ctx, side, phi_s, phi)


def flank_curvature_radius(ctx, k, side, phi, gear="drive", phi_s=None):
    """Radius of curvature of a generated flank at drive angle ``phi``."""
    gen = generator(gear)
    side = FlankSide.of(side)
    if phi_s is None:
        phi_s = gen.singular_point(ctx, k, side)
    al = ctx.rack.alpha
    inv = 1.0 / float(gen.curvature(ctx, phi_s)) - 1.0 / float(gen.curvature(ctx, phi))
    return abs(ctx.a * cos(al) * ctx.arc(phi_s, phi) - side.sign * sin(al) * inv)


def length_element(ctx, side, phi, gear="drive", step=1e-6):
    """Signed arc-length rate of the base curve; its sign changes at cusps.

    The curvature derivative is taken by central differences.
    """
    gen = generator(gear)
    side = FlankSide.of(side)
    al = ctx.rack.alpha
    kap = float(gen.curvature(ctx, phi))
    dkap = (float(gen.curvature(ctx, phi + step)) - float(gen.curvature(ctx, phi - step))) / (2 * step)
    speed = ctx.a * ctx.density(phi)
    return speed * cos(al) - side.sign * dkap / kap ** 2 * sin(al)


def sample_base_curve(ctx, side, gear="drive", n=720):
    """Base curve over one revolution, split into regular branches.

    Points at infinity and cusps break the curve; each branch is a list of
    :class:`BaseCurveSample` with ``regular`` set.
    """
    gen = generator(gear)
    phis = np.linspace(0.0, 2 * np.pi, n + 1)
    branches, current, last_sign = [], [], None
    for phi in phis:
        try:
            pt = _base_point(gen, ctx, side, phi)
        except PointAtInfinity:
            if current:
                branches.append(current)
            current, last_sign = [], None
            continue
        sign = np.sign(length_element(ctx, side, phi, gear))
        if last_sign is not None and sign != last_sign and current:
            # cusp: close the branch at the current point and restart from it
            current.append(BaseCurveSample(float(phi), complex(pt), False))
            branches.append(current)
            current = []
        current.append(BaseCurveSample(float(phi), complex(pt), True))
        last_sign = sign
    if current:
        branches.append(current)
    return [b for b in branches if len(b) > 1]
