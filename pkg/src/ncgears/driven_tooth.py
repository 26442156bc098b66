"""Driven-gear tooth-space geometry generated by the same rack.

Tooth space ``k`` of the driven gear is cut by the rack tooth that sits
between the flanks generating drive tooth ``k``; it shares the drive
tooth's middle angle ``chi(k)``.  The functions mirror :mod:`drive_tooth`.
"""

from ._tooth import DRIVEN, FlankDiagnosis
from .rack import FlankSide, RackProfile

rack_offset = DRIVEN.rack_offset
rack_flank_line = DRIVEN.rack_flank_line
flank_point = DRIVEN.flank_point
midpoint_curve = DRIVEN.midpoint_curve
fillet_point = DRIVEN.fillet_point
fillet_dedendum_contact = DRIVEN.fillet_dedendum_contact
singular_point = DRIVEN.singular_point
flank_fillet_contact = DRIVEN.flank_fillet_contact
diagnose_flank = DRIVEN.diagnose
undercut_flank = DRIVEN.undercut_flank

__all__ = ["FlankSide", "RackProfile", "FlankDiagnosis", "rack_offset",
           "rack_flank_line", "flank_point", "midpoint_curve", "fillet_point",
           "fillet_dedendum_contact", "singular_point", "flank_fillet_contact",
           "diagnose_flank", "undercut_flank"]
