"""Pitch curves of both gears, arc length along them, and the synthesis context.

The drive pitch curve is traversed clockwise as ``phi`` grows and lives in
the drive gear's rotating frame; the driven one is traversed
counter-clockwise in the driven frame.  In the fixed frame the drive pivot
is the origin and the driven pivot sits at ``a`` on the real axis.
"""

from dataclasses import dataclass, field
from math import pi

import numpy as np
from scipy.integrate import quad

from . import kernels
from .errors import NonConvexCentrode, QuadratureFailure, RootNotBracketed
from .rack import RackProfile
from .roots import newton_bisect
from .transmission import (TWO_PI, arc_density, drive_curvature, driven_curvature,
                           tangent_norm)

N_PANELS = 64
CONVEXITY_GRID = 4096
CONVEXITY_TOL = 1e-9


@dataclass(frozen=True)
class ToleranceSet:
    """Numerical tolerances.

    ``quad`` is absolute on dimensionless arc-length integrals; ``root`` and
    ``geom`` are relative to the center distance where they compare lengths.
    """

    quad: float = 1e-10
    root: float = 1e-12
    geom: float = 1e-9
    max_iter: int = 100

    def __post_init__(self):
        for name in ("quad", "root", "geom", "max_iter"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")


def arc_integral(spec, phi0, phi1, tol=1e-10, limit=200):
    """Integral of the arc-length density from ``phi0`` to ``phi1``.

    Series transmissions go through the fast kernel; other transmissions
    use QUADPACK.  Raises :class:`QuadratureFailure` when the error estimate
    exceeds ``tol``.
    """
    phi0, phi1 = float(phi0), float(phi1)
    if spec.series is not None:
        s, c = spec.series
        value, err, _ = kernels.arc_integral(phi0, phi1, s, c, tol, limit)
    else:
        res = quad(lambda p: arc_density(spec, p), phi0, phi1,
                   epsabs=tol, epsrel=0.0, limit=limit, full_output=1)
        value, err = res[0], res[1]
        if len(res) > 3:  # QUADPACK attached a warning message
            err = max(err, 2 * tol)
    if not err <= tol:
        raise QuadratureFailure(
            f"arc integral on [{phi0:.9g}, {phi1:.9g}] reached error {err:.3g} > {tol:.3g}",
            invariant="|I - exact| <= tol.quad")
    return value


def center_distance(spec, m, z1, tol=1e-10):
    """Center distance that makes the drive pitch curve exactly ``z1`` pitches long."""
    if not m > 0:
        raise ValueError("module must be positive")
    if z1 < 3:
        raise ValueError("at least three teeth are required")
    return z1 * pi * m / arc_integral(spec, 0.0, TWO_PI, tol)


@dataclass(frozen=True)
class SynthesisContext:
    """Resolved global quantities for one gear pair.

    Build it with :func:`make_context`.  ``chi`` holds the tooth-middle
    angles for teeth ``1..z1`` at indices ``0..z1-1``.
    """

    spec: object
    m: float
    z1: int
    z2: int
    a: float
    I_total: float
    chi: tuple
    rack: RackProfile
    tol: ToleranceSet
    _nodes: np.ndarray = field(repr=False, compare=False)
    _cumulative: np.ndarray = field(repr=False, compare=False)
    _density_range: tuple = field(repr=False, compare=False)

    @property
    def pitch(self):
        return pi * self.m

    def chi_of(self, k):
        """Tooth-middle angle for tooth ``k`` (1-based)."""
        if not 1 <= k <= self.z1:
            raise IndexError(f"tooth index {k} outside 1..{self.z1}")
        return self.chi[k - 1]

    def cumulative(self, phi):
        """Dimensionless arc length from 0 to ``phi`` with periodic extension."""
        phi = float(phi)
        turns = np.floor(phi / TWO_PI)
        base = phi - TWO_PI * turns
        j = min(int(base / self._nodes[1]), N_PANELS - 1)
        start = self._nodes[j]
        return (turns * self.I_total + self._cumulative[j]
                + arc_integral(self.spec, start, base, self.tol.quad / N_PANELS))

    def arc(self, phi0, phi1):
        """Dimensionless arc length between two drive angles (signed)."""
        if abs(phi1 - phi0) <= 2 * self._nodes[1]:
            return arc_integral(self.spec, phi0, phi1, self.tol.quad)
        return self.cumulative(phi1) - self.cumulative(phi0)

    def density(self, phi):
        return float(arc_density(self.spec, phi))

    def phi_at_arclength(self, phi0, s):
        """Angle ``phi`` with ``a * arc(phi0, phi) = s`` (``s`` in mm)."""
        if s == 0:
            return float(phi0)
        lo_d, hi_d = self._density_range
        target = s / self.a
        # the density bounds bracket the answer; pad a little for rounding
        near, far = target / hi_d, target / lo_d
        lo, hi = (phi0 + 0.999 * near, phi0 + 1.001 * far) if s > 0 else \
            (phi0 + 1.001 * far, phi0 + 0.999 * near)
        return newton_bisect(lambda p: self.arc(phi0, p) - target, self.density,
                             lo, hi, ftol=self.tol.root, max_iter=self.tol.max_iter,
                             x0=phi0 + target / self.density(phi0))


def make_context(spec, rack, z1, z2=None, tol=None, check_convexity=True):
    """Resolve center distance and tooth middles for a gear pair."""
    from .errors import UnsupportedConfig

    tol = tol or ToleranceSet()
    z2 = z1 if z2 is None else z2
    if z2 != z1:
        raise UnsupportedConfig(
            f"z2={z2} differs from z1={z1}; only one-revolution pairs are supported",
            invariant="z2 = z1")
    if z1 < 3:
        raise UnsupportedConfig(f"z1={z1} is below 3", invariant="z1 >= 3")
    nodes = np.linspace(0.0, TWO_PI, N_PANELS + 1)
    pieces = [arc_integral(spec, nodes[j], nodes[j + 1], tol.quad / N_PANELS)
              for j in range(N_PANELS)]
    cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
    I_total = float(cumulative[-1])
    a = z1 * pi * rack.m / I_total
    grid = np.linspace(0.0, TWO_PI, CONVEXITY_GRID, endpoint=False)
    dens = arc_density(spec, grid)
    if check_convexity:
        k1 = a * drive_curvature(spec, a, grid)
        k2 = a * driven_curvature(spec, a, grid)
        if np.max(k1) > CONVEXITY_TOL:
            j = int(np.argmax(k1))
            raise NonConvexCentrode(
                f"drive pitch curve is not convex near phi={grid[j]:.6g}",
                invariant="drive curvature <= 0", phi=float(grid[j]))
        if np.min(k2) < -CONVEXITY_TOL:
            j = int(np.argmin(k2))
            raise NonConvexCentrode(
                f"driven pitch curve is not convex near phi={grid[j]:.6g}",
                invariant="driven curvature >= 0", phi=float(grid[j]))
    ctx = SynthesisContext(spec, rack.m, z1, z2, a, I_total, (), rack, tol,
                           nodes, cumulative,
                           (0.5 * float(np.min(dens)), 2.0 * float(np.max(dens))))
    chi = [0.0]
    for k in range(2, z1 + 1):
        target = (k - 1) * I_total / z1
        f = lambda p, t=target: ctx.cumulative(p) - t
        chi.append(newton_bisect(f, ctx.density, chi[-1], TWO_PI, ftol=tol.root,
                                 max_iter=tol.max_iter,
                                 x0=chi[-1] + (I_total / z1) / ctx.density(chi[-1])))
    object.__setattr__(ctx, "chi", tuple(chi))
    return ctx


def tooth_midpoint(ctx, k):
    """Drive angle at which tooth ``k`` is centered on the pitch point."""
    return ctx.chi_of(k)


# -- pointwise geometry ----------------------------------------------------

def drive_radius(ctx, phi):
    _, d1, _, _ = ctx.spec.derivatives(phi)
    return ctx.a * d1 / (1.0 + d1)


def driven_radius(ctx, phi):
    _, d1, _, _ = ctx.spec.derivatives(phi)
    return ctx.a / (1.0 + d1)


def drive_centrode(ctx, phi):
    """Drive pitch point in the drive frame."""
    return drive_radius(ctx, phi) * np.exp(-1j * phi)


def driven_centrode(ctx, phi):
    """Driven pitch point in the driven frame."""
    p, d1, _, _ = ctx.spec.derivatives(phi)
    return -ctx.a / (1.0 + d1) * np.exp(1j * p)


def fixed_tangent(ctx, phi):
    """Common unit tangent of both pitch curves at the pitch point, fixed frame."""
    _, d1, d2, _ = ctx.spec.derivatives(phi)
    return (d2 - 1j * d1 * (1.0 + d1)) / np.sqrt(d2 * d2 + d1 * d1 * (1.0 + d1) ** 2)


def drive_tangent(ctx, phi):
    """Unit tangent of the drive pitch curve (direction of growing ``phi``)."""
    return fixed_tangent(ctx, phi) * np.exp(-1j * phi)


def driven_tangent(ctx, phi):
    """Unit tangent of the driven pitch curve (direction of growing ``phi``)."""
    return fixed_tangent(ctx, phi) * np.exp(1j * ctx.spec.derivatives(phi)[0])


def drive_parallel(ctx, d, phi, outer=True):
    """Point at distance ``d`` from the drive pitch curve, outside or inside."""
    sign = 1.0 if outer else -1.0
    return drive_centrode(ctx, phi) + sign * d * 1j * drive_tangent(ctx, phi)


def driven_parallel(ctx, d, phi, outer=True):
    """Point at distance ``d`` from the driven pitch curve, outside or inside."""
    sign = 1.0 if outer else -1.0
    return driven_centrode(ctx, phi) - sign * d * 1j * driven_tangent(ctx, phi)


def drive_addendum(ctx, phi):
    return drive_parallel(ctx, ctx.rack.h_a, phi, outer=True)


def drive_dedendum(ctx, phi):
    return drive_parallel(ctx, ctx.rack.h_f, phi, outer=False)


def driven_addendum(ctx, phi):
    return driven_parallel(ctx, ctx.rack.h_a, phi, outer=True)


def driven_dedendum(ctx, phi):
    return driven_parallel(ctx, ctx.rack.h_f, phi, outer=False)


def check_window(ctx, s, what):
    """Reject arc-length offsets beyond the two-pitch search window."""
    if abs(s) > 2 * ctx.pitch:
        raise RootNotBracketed(
            f"{what}: offset {s:.6g} mm lies beyond the search window of two pitches",
            invariant="root within two pitches of the tooth middle")
