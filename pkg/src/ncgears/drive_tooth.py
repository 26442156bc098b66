"""Drive-gear tooth geometry generated by the rack cutter.

Tooth ``k`` of the drive gear is cut by a gap of the rack and is centered on
the pitch point when ``phi = chi(k)``.  Every function takes the synthesis
context, the tooth index (1-based), the flank side and, where relevant, the
drive angle ``phi`` at which the rack is in mesh.
"""

from dataclasses import dataclass
from math import ceil, pi, sin

import numpy as np
from scipy.optimize import minimize_scalar

from ._tooth import DRIVE, FlankDiagnosis
from .rack import FlankSide, RackProfile
from .transmission import TWO_PI, drive_turn_rate, tangent_norm

rack_offset = DRIVE.rack_offset
rack_offset_rate = DRIVE.rack_offset_rate
rack_flank_line = DRIVE.rack_flank_line
flank_point = DRIVE.flank_point
midpoint_curve = DRIVE.midpoint_curve
fillet_point = DRIVE.fillet_point
fillet_dedendum_contact = DRIVE.fillet_dedendum_contact
singular_point = DRIVE.singular_point
flank_fillet_contact = DRIVE.flank_fillet_contact
diagnose_flank = DRIVE.diagnose
undercut_flank = DRIVE.undercut_flank


@dataclass(frozen=True)
class SizingBounds:
    """Limits on module, center distance and tooth count that avoid undercut.

    ``m_over_a_max`` times the center distance is the largest module;
    ``a_over_m_min`` is the smallest center distance per unit module;
    ``z1_min`` is the smallest drive tooth count (``z1_bound`` before rounding up).
    """

    m_over_a_max: float
    a_over_m_min: float
    z1_min: int
    z1_bound: float
    peak_curvature: float
    phi_peak: float

    def m_max(self, a):
        return self.m_over_a_max * a


def _scaled_curvature(spec, phi):
    # a * |kappa|, independent of the center distance
    _, d1, _, _ = spec.derivatives(phi)
    return np.abs((1.0 + d1) ** 2 * drive_turn_rate(spec, phi) / tangent_norm(spec, phi))


def sizing(spec, alpha, h_f_over_m=1.2, rho_over_m=0.3, samples=4096):
    """Undercut-free sizing bounds for a transmission and rack proportions."""
    grid = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    vals = _scaled_curvature(spec, grid)
    j = int(np.argmax(vals))
    h = grid[1] - grid[0]
    res = minimize_scalar(lambda p: -_scaled_curvature(spec, p),
                          bounds=(grid[j] - h, grid[j] + h), method="bounded",
                          options={"xatol": 1e-12})
    phi_peak, peak = (res.x, -res.fun) if -res.fun >= vals[j] else (grid[j], vals[j])
    depth = h_f_over_m - rho_over_m * (1 - sin(alpha))
    s2 = sin(alpha) ** 2
    from .centrodes import arc_integral
    total = arc_integral(spec, 0.0, TWO_PI)
    a_over_m = depth * peak / s2
    bound = total * a_over_m / pi
    return SizingBounds(m_over_a_max=1.0 / a_over_m, a_over_m_min=a_over_m,
                        z1_min=int(ceil(bound - 1e-12)), z1_bound=bound,
                        peak_curvature=float(peak), phi_peak=float(phi_peak))


__all__ = ["FlankSide", "RackProfile", "FlankDiagnosis", "SizingBounds", "sizing",
           "rack_offset", "rack_offset_rate", "rack_flank_line", "flank_point",
           "midpoint_curve", "fillet_point", "fillet_dedendum_contact",
           "singular_point", "flank_fillet_contact", "diagnose_flank",
           "undercut_flank"]
