"""Rack-cutter tooth geometry and the flank side convention."""

import enum
from dataclasses import dataclass
from math import cos, pi, sin, tan

from .errors import InvalidRack


class FlankSide(enum.IntEnum):
    """Which flank of a tooth: ``MINUS`` precedes the tooth middle, ``PLUS`` follows it."""

    MINUS = -1
    PLUS = 1

    @property
    def sign(self):
        return int(self)

    @property
    def symbol(self):
        return "+" if self is FlankSide.PLUS else "-"

    @classmethod
    def of(cls, value):
        """Accept a FlankSide, ``+1``/``-1`` or ``"+"``/``"-"``."""
        if isinstance(value, cls):
            return value
        if value in ("+", "plus", 1):
            return cls.PLUS
        if value in ("-", "minus", -1):
            return cls.MINUS
        raise ValueError(f"not a flank side: {value!r}")


SIDES = (FlankSide.MINUS, FlankSide.PLUS)


@dataclass(frozen=True)
class RackProfile:
    """Straight-sided rack tooth with rounded tips.

    Lengths in mm, ``alpha`` in radians.  The tooth and the gap have equal
    width ``pi m / 2`` on the reference line.
    """

    m: float
    alpha: float
    h_a: float
    h_f: float
    rho: float

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidRack(f"module m={self.m} must be positive", invariant="m > 0")
        if not 0 < self.alpha < pi / 2:
            raise InvalidRack(f"profile angle {self.alpha} outside (0, pi/2)",
                              invariant="0 < alpha < pi/2")
        if not (self.h_a > 0 and self.h_f > 0):
            raise InvalidRack("addendum and dedendum must be positive",
                              invariant="h_a > 0 and h_f > 0")
        if self.rho < 0:
            raise InvalidRack(f"fillet radius {self.rho} is negative", invariant="rho >= 0")
        if not self.h_f > self.rho * (1 - sin(self.alpha)):
            raise InvalidRack("dedendum too small for the fillet radius",
                              invariant="h_f > rho (1 - sin alpha)")

    @classmethod
    def from_ratios(cls, m, alpha, h_a_over_m=1.0, h_f_over_m=1.2, rho_over_m=0.3):
        return cls(m, alpha, h_a_over_m * m, h_f_over_m * m, rho_over_m * m)

    @property
    def pitch(self):
        return pi * self.m

    @property
    def l1(self):
        """Horizontal run of the straight flank below the reference line."""
        return (self.h_f - self.rho) * tan(self.alpha)

    @property
    def l2(self):
        return self.rho / cos(self.alpha)

    @property
    def l3(self):
        return (self.h_f - self.rho) / cos(self.alpha)

    @property
    def l4(self):
        return self.rho * tan(self.alpha)

    @property
    def dedendum_offset(self):
        """Reference-line distance from the flank to the tip-round touchdown point."""
        return self.l1 + self.l2

    @property
    def junction_offset(self):
        """Contact distance of the flank-to-round junction along the flank normal."""
        return (self.h_f - self.rho) / sin(self.alpha) + self.rho

    @property
    def undercut_depth(self):
        """``h_f - rho (1 - sin alpha)``, the depth that controls undercut."""
        return self.h_f - self.rho * (1 - sin(self.alpha))

    @property
    def undercut_threshold(self):
        """Largest admissible centrode curvature magnitude at a flank cusp."""
        return sin(self.alpha) ** 2 / self.undercut_depth
