"""Planar vector algebra on complex numbers and the envelope of a line family."""

import numpy as np

from .errors import SingularFamily


def ext(A, B):
    """Exterior product ``Re(A) Im(B) - Im(A) Re(B)``.

    Works elementwise on numpy arrays of complex numbers.
    """
    return np.real(A) * np.imag(B) - np.imag(A) * np.real(B)


def ext_derivative(A, B, dA, dB):
    """Derivative of ``ext(A, B)`` from the derivatives of its factors."""
    return ext(dA, B) + ext(A, dB)


def envelope_point(A, B, dA, dB, scale=1.0, tol=1e-12):
    """Characteristic point of the line through ``A(t)`` and ``B(t)``.

    ``dA`` and ``dB`` are the parameter derivatives at the same instant.
    The returned point lies on the line and is where the line touches the
    envelope of the family.  ``scale`` is the length scale used to judge
    singularity: the family is rejected when the denominator is below
    ``tol * scale**2``.
    """
    D = A - B
    dD = dA - dB
    den = ext(D, dD)
    if abs(den) < tol * scale * scale:
        raise SingularFamily(
            f"envelope denominator {den:.3e} below {tol * scale * scale:.3e}",
            invariant="ext(A-B, (A-B)') != 0",
        )
    return (ext(A, B) * dD - ext_derivative(A, B, dA, dB) * D) / den


def line_family_sample(line, t, step=None):
    """Two points of ``line(t, mu)`` and their central-difference derivatives.

    ``line(t, mu)`` must be affine in ``mu``; the points at ``mu=1`` and
    ``mu=0`` define the member at parameter ``t``.  Returns
    ``(A, B, dA, dB)`` ready for :func:`envelope_point`.
    """
    if step is None:
        step = 1e-6 * (1.0 + abs(t))
    A = line(t, 1.0)
    B = line(t, 0.0)
    dA = (line(t + step, 1.0) - line(t - step, 1.0)) / (2 * step)
    dB = (line(t + step, 0.0) - line(t - step, 0.0)) / (2 * step)
    return A, B, dA, dB


def envelope_of_family(line, t, step=None, scale=1.0, tol=1e-12):
    """Envelope point of a line family evaluated by finite differences.

    The sample is translated so the member's base point sits at the origin
    before solving, which keeps cancellation in the exterior products small.
    """
    A, B, dA, dB = line_family_sample(line, t, step)
    origin = B
    return origin + envelope_point(A - origin, B - origin, dA, dB,
                                   scale=scale, tol=tol)
