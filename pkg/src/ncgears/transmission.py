"""Transmission functions and the scalar fields derived from them.

A transmission maps the drive angle ``phi`` to the driven angle ``psi(phi)``.
It must be strictly increasing, close after one revolution
(``psi(2 pi) = 2 pi``) and have a derivative periodic with period
``2 pi / n``.  Outside ``[0, 2 pi]`` it is extended by
``psi(phi + 2 pi j) = psi(phi) + 2 pi j``.

All fields below are written for unit center distance; the curvature
functions take the center distance ``a`` explicitly.
"""

from dataclasses import dataclass, field
from importlib import import_module
from math import gcd
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import InvalidTransmission

TWO_PI = 2.0 * np.pi

# validation settings
N_CHECK = 4096
PERIOD_TOL = 1e-9
CLOSURE_TOL = 1e-9
FD_REL_TOL = 1e-5


@dataclass(frozen=True)
class TransmissionSpec:
    """Transmission function with its first three derivatives.

    ``series`` holds ``(sin_coeffs, cos_coeffs)`` for trigonometric-series
    transmissions, which lets the compiled kernels evaluate them directly.
    Validation runs on construction and raises :class:`InvalidTransmission`.
    """

    psi: Callable
    dpsi: Callable
    d2psi: Callable
    d3psi: Callable
    n: int = 1
    name: str = "custom"
    parameters: dict = field(default_factory=dict)
    series: Optional[tuple] = None

    def __post_init__(self):
        validate(self)

    def derivatives(self, phi):
        """``(psi, psi', psi'', psi''')`` at ``phi`` with periodic extension."""
        if self.series is not None:
            s, c = self.series
            if np.ndim(phi) == 0:
                return kernels.series_derivatives(float(phi), s, c)
            return kernels.python_backend.series_derivatives(phi, s, c)
        phi = np.asarray(phi, dtype=float)
        turns = np.floor(phi / TWO_PI)
        base = phi - TWO_PI * turns
        out = (self.psi(base) + TWO_PI * turns, self.dpsi(base),
               self.d2psi(base), self.d3psi(base))
        if phi.ndim == 0:
            return tuple(float(v) for v in out)
        return tuple(np.broadcast_to(v, phi.shape).astype(float) for v in out)

    def __call__(self, phi):
        return self.derivatives(phi)[0]


def validate(spec):
    """Check monotonicity, closure, periodicity and derivative consistency."""
    if not isinstance(spec.n, (int, np.integer)) or spec.n < 1:
        raise InvalidTransmission(f"period count n={spec.n!r} must be a positive integer",
                                  invariant="n >= 1")
    grid = np.linspace(0.0, TWO_PI, N_CHECK, endpoint=False)
    _, d1, d2, d3 = spec.derivatives(grid)
    if not np.all(np.isfinite(d1)) or np.min(d1) <= 0.0:
        j = int(np.argmin(d1))
        raise InvalidTransmission(
            f"psi' must be positive; psi'({grid[j]:.6g}) = {d1[j]:.6g}",
            invariant="psi' > 0", phi=float(grid[j]))
    p0 = spec.derivatives(0.0)[0]
    # raw callable at 2 pi: the periodic extension would make this check vacuous
    p2pi = float(spec.psi(TWO_PI)) if spec.series is None else spec.derivatives(TWO_PI)[0]
    if abs(p0) > CLOSURE_TOL or abs(p2pi - TWO_PI) > CLOSURE_TOL:
        raise InvalidTransmission(
            f"closure violated: psi(0) = {p0:.12g}, psi(2 pi) = {p2pi:.12g}",
            invariant="psi(0) = 0 and psi(2 pi) = 2 pi")
    period = TWO_PI / spec.n
    sub = grid[grid < TWO_PI - period]
    if spec.n > 1 and len(sub):
        shifted = spec.derivatives(sub + period)[1]
        err = np.max(np.abs(shifted - spec.derivatives(sub)[1]))
        if err > PERIOD_TOL:
            raise InvalidTransmission(
                f"psi' is not periodic with period 2 pi/{spec.n} (max deviation {err:.3g})",
                invariant="psi'(phi + 2 pi/n) = psi'(phi)")
    coarse = np.linspace(0.0, TWO_PI, 257)
    step = 1e-5
    lo = spec.derivatives(coarse - step)
    hi = spec.derivatives(coarse + step)
    mid = spec.derivatives(coarse)
    for order, label in ((1, "psi'"), (2, "psi''"), (3, "psi'''")):
        fd = (hi[order - 1] - lo[order - 1]) / (2 * step)
        scale = max(1.0, float(np.max(np.abs(mid[order]))))
        err = np.max(np.abs(fd - mid[order]))
        if err > FD_REL_TOL * scale:
            raise InvalidTransmission(
                f"{label} disagrees with a finite difference by {err:.3g}",
                invariant=f"{label} consistent with psi")


def series_transmission(sin_coeffs=(), cos_coeffs=(), name="fourier", parameters=None):
    """Transmission ``phi + sum s_j sin(j phi) + c_j (cos(j phi) - 1)``."""
    s = np.ascontiguousarray(sin_coeffs, dtype=float)
    c = np.ascontiguousarray(cos_coeffs, dtype=float)
    orders = [j + 1 for j, v in enumerate(s) if v != 0.0]
    orders += [j + 1 for j, v in enumerate(c) if v != 0.0]
    n = 0
    for j in orders:
        n = gcd(n, j)
    n = n or 1

    def deriv(order):
        return lambda phi: kernels.python_backend.series_derivatives(phi, s, c)[order]

    if parameters is None:
        parameters = {"sin": s.tolist(), "cos": c.tolist()}
    return TransmissionSpec(deriv(0), deriv(1), deriv(2), deriv(3), n=n, name=name,
                            parameters=parameters, series=(s, c))


def sinusoidal(b):
    """``psi(phi) = phi - b sin(phi)``; valid for ``0 <= b < 1``."""
    return series_transmission([-float(b)], [], name="sinusoidal",
                               parameters={"b": float(b)})


def circular():
    """Identity transmission, which gives a pair of equal circular gears."""
    return series_transmission([], [], name="circular", parameters={})


def from_config(name, parameters=None):
    """Build a transmission from a config entry.

    ``sinusoidal`` takes ``b``; ``fourier`` takes ``sin`` and ``cos`` lists;
    ``circular`` takes nothing; ``custom`` takes ``factory`` as
    ``"module:callable"`` plus keyword arguments passed to that callable,
    which must return a :class:`TransmissionSpec`.
    """
    params = dict(parameters or {})
    if name == "sinusoidal":
        return sinusoidal(_require(params, "b", name))
    if name == "circular":
        return circular()
    if name == "fourier":
        return series_transmission(params.get("sin", []), params.get("cos", []))
    if name == "custom":
        target = _require(params, "factory", name)
        mod, _, attr = str(target).partition(":")
        try:
            factory = getattr(import_module(mod), attr)
        except (ImportError, AttributeError) as exc:
            raise InvalidTransmission(f"cannot load factory {target!r}: {exc}",
                                      invariant="factory importable") from exc
        try:
            spec = factory(**{k: v for k, v in params.items() if k != "factory"})
        except TypeError as exc:
            raise InvalidTransmission(f"factory {target!r} rejected its arguments: {exc}",
                                      invariant="factory accepts parameters") from exc
        if not isinstance(spec, TransmissionSpec):
            raise InvalidTransmission(f"factory {target!r} did not return a TransmissionSpec",
                                      invariant="factory returns TransmissionSpec")
        return spec
    raise InvalidTransmission(f"unknown transmission {name!r}",
                              invariant="transmission name in {sinusoidal, fourier, circular, custom}")


def _require(params, key, name):
    if key not in params:
        raise InvalidTransmission(f"transmission {name!r} needs parameter {key!r}",
                                  invariant=f"parameter {key} present")
    return params[key]


# -- scalar fields ---------------------------------------------------------

def tangent_norm(spec, phi):
    """Norm of the unnormalised centrode tangent, ``sqrt(psi''^2 + psi'^2 (1+psi')^2)``."""
    _, d1, d2, _ = spec.derivatives(phi)
    return np.sqrt(d2 * d2 + d1 * d1 * (1.0 + d1) ** 2)


def arc_density(spec, phi):
    """Drive centrode arc length per radian of ``phi`` at unit center distance."""
    _, d1, d2, _ = spec.derivatives(phi)
    q = 1.0 + d1
    return np.sqrt(d2 * d2 + d1 * d1 * q * q) / (q * q)


def drive_turn_rate(spec, phi):
    """Rate at which the drive centrode tangent turns with ``phi``."""
    _, d1, d2, d3 = spec.derivatives(phi)
    w2 = d2 * d2 + d1 * d1 * (1.0 + d1) ** 2
    return (1.0 + d1) * (d1 * (d3 - d1 - d1 * d1) - 2.0 * d2 * d2) / w2


def driven_turn_rate(spec, phi):
    """Rate at which the driven centrode tangent turns with ``phi``."""
    _, d1, d2, d3 = spec.derivatives(phi)
    w2 = d2 * d2 + d1 * d1 * (1.0 + d1) ** 2
    return (1.0 + d1) * (d1 * (d3 + d1 * d1 + d1 ** 3) - d2 * d2) / w2


def drive_curvature(spec, a, phi):
    """Signed curvature of the drive centrode (negative where convex)."""
    _, d1, _, _ = spec.derivatives(phi)
    return (1.0 + d1) ** 2 * drive_turn_rate(spec, phi) / (a * tangent_norm(spec, phi))


def driven_curvature(spec, a, phi):
    """Signed curvature of the driven centrode (positive where convex)."""
    _, d1, _, _ = spec.derivatives(phi)
    return (1.0 + d1) ** 2 * driven_turn_rate(spec, phi) / (a * tangent_norm(spec, phi))
