"""Pure-Python kernels for trigonometric-series transmissions.

A series transmission is
``psi(phi) = phi + sum_j s_j sin(j phi) + c_j (cos(j phi) - 1)``.
The functions here mirror the compiled module one for one.
"""

import numpy as np

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (non-negative half).
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-XGK[:-1], XGK[::-1]])
_WK = np.concatenate([WGK[:-1], WGK[::-1]])
_WG = np.zeros(15)
_WG[[1, 3, 5]] = WG[:3]
_WG[[9, 11, 13]] = WG[2::-1]
_WG[7] = WG[3]


def series_derivatives(phi, sin_c, cos_c):
    """Return ``(psi, psi', psi'', psi''')`` at ``phi`` (scalar or array)."""
    phi = np.asarray(phi, dtype=float)
    p0 = phi.copy()
    p1 = np.ones_like(phi)
    p2 = np.zeros_like(phi)
    p3 = np.zeros_like(phi)
    for j in range(1, max(len(sin_c), len(cos_c)) + 1):
        s = sin_c[j - 1] if j <= len(sin_c) else 0.0
        c = cos_c[j - 1] if j <= len(cos_c) else 0.0
        if s == 0.0 and c == 0.0:
            continue
        sj = np.sin(j * phi)
        cj = np.cos(j * phi)
        p0 = p0 + s * sj + c * (cj - 1.0)
        p1 = p1 + j * (s * cj - c * sj)
        p2 = p2 - j * j * (s * sj + c * cj)
        p3 = p3 - j ** 3 * (s * cj - c * sj)
    if p0.ndim == 0:
        return float(p0), float(p1), float(p2), float(p3)
    return p0, p1, p2, p3


def arc_integrand(phi, sin_c, cos_c):
    """Centrode arc-length density for unit center distance."""
    _, d1, d2, _ = series_derivatives(phi, sin_c, cos_c)
    q = 1.0 + d1
    return np.sqrt(d2 * d2 + d1 * d1 * q * q) / (q * q)


def _gk15(lo, hi, sin_c, cos_c):
    half = 0.5 * (hi - lo)
    f = arc_integrand(0.5 * (hi + lo) + half * _NODES, sin_c, cos_c)
    k = half * float(_WK @ f)
    g = half * float(_WG @ f)
    return k, abs(k - g)


def arc_integral(lo, hi, sin_c, cos_c, tol, limit):
    """Globally adaptive GK15 integral of the arc-length density.

    Returns ``(value, error_estimate, n_intervals)``; the caller decides
    whether the error estimate meets its tolerance.
    """
    if hi < lo:
        v, e, n = arc_integral(hi, lo, sin_c, cos_c, tol, limit)
        return -v, e, n
    if hi == lo:
        return 0.0, 0.0, 1
    v, e = _gk15(lo, hi, sin_c, cos_c)
    parts = [(e, lo, hi, v)]
    total_v, total_e = v, e
    while total_e > tol and len(parts) < limit:
        i = max(range(len(parts)), key=lambda n: parts[n][0])
        e, a, b, v = parts.pop(i)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            parts.append((0.0, a, b, v))
            total_e -= e
            continue
        v1, e1 = _gk15(a, mid, sin_c, cos_c)
        v2, e2 = _gk15(mid, b, sin_c, cos_c)
        parts.append((e1, a, mid, v1))
        parts.append((e2, mid, b, v2))
        total_v += v1 + v2 - v
        total_e += e1 + e2 - e
    total_v = sum(p[3] for p in parts)
    return total_v, max(total_e, 0.0), len(parts)
