"""Root finders: bracketed Newton for scalars, damped Newton for curve pairs."""

import numpy as np

from .complex_plane import ext
from .errors import RootNotBracketed, RootNotConverged


def newton_bisect(f, df, lo, hi, ftol, xtol=0.0, max_iter=100, x0=None):
    """Root of ``f`` in ``[lo, hi]`` by Newton steps safeguarded with bisection.

    ``f(lo)`` and ``f(hi)`` must differ in sign (or one of them vanish).
    Stops when ``|f| <= ftol`` or the bracket shrinks below ``xtol``
    (never below a few ulps).
    """
    flo, fhi = f(lo), f(hi)
    if abs(flo) <= ftol:
        return lo
    if abs(fhi) <= ftol:
        return hi
    if flo * fhi > 0:
        raise RootNotBracketed(
            f"no sign change on [{lo:.9g}, {hi:.9g}] (f = {flo:.3g}, {fhi:.3g})",
            invariant="f(lo) * f(hi) <= 0")
    if flo > 0:
        lo, hi = hi, lo  # keep f(lo) < 0 < f(hi)
    x = 0.5 * (lo + hi) if x0 is None or not min(lo, hi) < x0 < max(lo, hi) else x0
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) <= ftol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        width = abs(hi - lo)
        if width <= max(xtol, 4 * np.finfo(float).eps * max(1.0, abs(x))):
            return x
        d = df(x)
        step_ok = False
        if d != 0 and np.isfinite(d):
            xn = x - fx / d
            step_ok = min(lo, hi) < xn < max(lo, hi)
        x = xn if step_ok else 0.5 * (lo + hi)
    raise RootNotConverged(f"no convergence after {max_iter} iterations near {x:.12g}",
                           invariant="|f| <= ftol")


def scan_roots(f, lo, hi, n=64):
    """Sub-intervals of ``[lo, hi]`` on an ``n``-point grid where ``f`` changes sign."""
    xs = np.linspace(lo, hi, n + 1)
    fs = np.array([f(x) for x in xs])
    out = []
    for i in range(n):
        if fs[i] == 0.0:
            out.append((xs[i], xs[i]))
        elif fs[i] * fs[i + 1] < 0:
            out.append((xs[i], xs[i + 1]))
    if fs[-1] == 0.0:
        out.append((xs[-1], xs[-1]))
    return out


def newton_2d(f, g, u0, v0, tol, max_iter=100, step=1e-7):
    """Solve ``f(u) = g(v)`` for two complex-valued curves.

    Damped Newton with a central-difference Jacobian.  Returns
    ``(u, v, residual)``; raises :class:`RootNotConverged` when the residual
    stays above ``tol``.
    """
    u, v = float(u0), float(v0)
    r = f(u) - g(v)
    for _ in range(max_iter):
        if abs(r) <= tol:
            return u, v, abs(r)
        hu = step * (1.0 + abs(u))
        hv = step * (1.0 + abs(v))
        du = (f(u + hu) - f(u - hu)) / (2 * hu)
        dv = -(g(v + hv) - g(v - hv)) / (2 * hv)
        det = ext(du, dv)
        if det == 0:
            break
        # r + du*su + dv*sv = 0 solved by Cramer's rule on the real pair
        su = -ext(r, dv) / det
        sv = -ext(du, r) / det
        t = 1.0
        while t > 1e-6:
            un, vn = u + t * su, v + t * sv
            rn = f(un) - g(vn)
            if abs(rn) < abs(r):
                break
            t *= 0.5
        else:
            break
        u, v, r = un, vn, rn
    if abs(r) <= tol:
        return u, v, abs(r)
    raise RootNotConverged(f"curve intersection residual {abs(r):.3g} above {tol:.3g}",
                           invariant="|f(u) - g(v)| <= tol")


def polyline_crossings(P, tp, Q, tq):
    """Parameter estimates where polyline ``P`` (params ``tp``) crosses ``Q``."""
    P = np.asarray(P)
    Q = np.asarray(Q)
    p0, p1 = P[:-1, None], P[1:, None]
    q0, q1 = Q[None, :-1], Q[None, 1:]
    dp, dq = p1 - p0, q1 - q0
    den = ext(dp, dq)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = ext(q0 - p0, dq) / den
        t = ext(q0 - p0, dp) / den
    hit = (den != 0) & (s >= 0) & (s <= 1) & (t >= 0) & (t <= 1)
    i, j = np.nonzero(hit)
    u = tp[i] + s[i, j] * (tp[i + 1] - tp[i])
    v = tq[j] + t[i, j] * (tq[j + 1] - tq[j])
    return list(zip(u.tolist(), v.tolist()))


def curve_intersections(f, g, u_range, v_range, tol, n=200, max_iter=100):
    """All refined intersections of ``f(u)`` and ``g(v)`` over the given ranges.

    Seeds come from crossing sampled polylines; each seed is refined by
    :func:`newton_2d`.  Duplicates are merged.
    """
    tu = np.linspace(*u_range, n + 1)
    tv = np.linspace(*v_range, n + 1)
    P = np.array([f(u) for u in tu])
    Q = np.array([g(v) for v in tv])
    roots = []
    for u0, v0 in polyline_crossings(P, tu, Q, tv):
        try:
            u, v, res = newton_2d(f, g, u0, v0, tol, max_iter)
        except RootNotConverged:
            continue
        if any(abs(u - ru) < 1e-9 and abs(v - rv) < 1e-9 for ru, rv, _ in roots):
            continue
        roots.append((u, v, res))
    return roots
