"""Exception types raised by the synthesis pipeline.

Every error carries an ``invariant`` string naming the violated condition so
the CLI can emit machine-readable diagnostics.
"""


class GearError(Exception):
    """Base class for all synthesis errors."""

    kind = "GearError"

    def __init__(self, message, invariant=None, **details):
        super().__init__(message)
        self.invariant = invariant
        self.details = details

    def to_dict(self):
        out = {"error": self.kind, "message": str(self)}
        if self.invariant:
            out["invariant"] = self.invariant
        out.update(self.details)
        return out


def _make(name, *bases, doc=""):
    cls = type(name, bases or (GearError,), {"kind": name, "__doc__": doc})
    return cls


InvalidTransmission = _make("InvalidTransmission", GearError, ValueError,
                            doc="Transmission function fails a validation check.")
InvalidRack = _make("InvalidRack", GearError, ValueError,
                    doc="Rack cutter parameters are inconsistent.")
UnsupportedConfig = _make("UnsupportedConfig", GearError, ValueError,
                          doc="Configuration outside the supported scope.")
ConfigError = _make("ConfigError", GearError, ValueError,
                    doc="Malformed configuration file.")
NonConvexCentrode = _make("NonConvexCentrode",
                          doc="A pitch curve is not convex.")
QuadratureFailure = _make("QuadratureFailure",
                          doc="Adaptive quadrature missed its tolerance.")
RootNotBracketed = _make("RootNotBracketed",
                         doc="No sign change inside the search window.")
RootNotConverged = _make("RootNotConverged",
                         doc="Iteration budget exhausted before convergence.")
SingularFamily = _make("SingularFamily",
                       doc="Line family has a vanishing envelope denominator.")
DegenerateNormal = _make("DegenerateNormal",
                         doc="Fillet normal undefined where the turn rate vanishes.")
NoSingularPoint = _make("NoSingularPoint",
                        doc="Flank has no cusp inside the search window.")
PointAtInfinity = _make("PointAtInfinity",
                        doc="Base curve point is at infinity (zero curvature).")
InvalidGeometry = _make("InvalidGeometry",
                        doc="Tooth geometry cannot be trimmed consistently.")
SolverDiverged = _make("SolverDiverged",
                        doc="A boundary system failed to converge.")
ClosureFailure = _make("ClosureFailure",
                       doc="Assembled profile does not close.")
