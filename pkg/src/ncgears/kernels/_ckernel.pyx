# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for trigonometric-series transmissions.

Same interface and algorithm as ``_pykernel``.
"""

from libc.math cimport sin, cos, sqrt, fabs

cdef int MAXPARTS = 2048

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]

XGK[:] = [0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
          0.207784955007898467600689403773245, 0.0]
WGK[:] = [0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
          0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
WG[:] = [0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
         0.381830050505118944950369775488975, 0.417959183673469387755102040816327]


cdef inline void _derivs(double phi, const double[::1] s, const double[::1] c,
                         double* out) noexcept nogil:
    cdef Py_ssize_t j, n = max(s.shape[0], c.shape[0])
    cdef double sj, cj, a, b, jj
    out[0] = phi
    out[1] = 1.0
    out[2] = 0.0
    out[3] = 0.0
    for j in range(1, n + 1):
        a = s[j - 1] if j <= s.shape[0] else 0.0
        b = c[j - 1] if j <= c.shape[0] else 0.0
        if a == 0.0 and b == 0.0:
            continue
        jj = <double>j
        sj = sin(jj * phi)
        cj = cos(jj * phi)
        out[0] += a * sj + b * (cj - 1.0)
        out[1] += jj * (a * cj - b * sj)
        out[2] -= jj * jj * (a * sj + b * cj)
        out[3] -= jj * jj * jj * (a * cj - b * sj)


cdef inline double _density(double phi, const double[::1] s,
                            const double[::1] c) noexcept nogil:
    cdef double d[4]
    cdef double q
    _derivs(phi, s, c, d)
    q = 1.0 + d[1]
    return sqrt(d[2] * d[2] + d[1] * d[1] * q * q) / (q * q)


cdef void _gk15(double lo, double hi, const double[::1] s, const double[::1] c,
                double* val, double* err) noexcept nogil:
    cdef double center = 0.5 * (lo + hi)
    cdef double half = 0.5 * (hi - lo)
    cdef double fc = _density(center, s, c)
    cdef double rk = fc * WGK[7]
    cdef double rg = fc * WG[3]
    cdef double f1, f2, dx
    cdef int j
    for j in range(7):
        dx = half * XGK[j]
        f1 = _density(center - dx, s, c)
        f2 = _density(center + dx, s, c)
        rk += WGK[j] * (f1 + f2)
        if j % 2 == 1:
            rg += WG[j // 2] * (f1 + f2)
    val[0] = rk * half
    err[0] = fabs((rk - rg) * half)


def series_derivatives(double phi, const double[::1] sin_c, const double[::1] cos_c):
    """Return ``(psi, psi', psi'', psi''')`` at scalar ``phi``."""
    cdef double d[4]
    _derivs(phi, sin_c, cos_c, d)
    return d[0], d[1], d[2], d[3]


def arc_integrand(double phi, const double[::1] sin_c, const double[::1] cos_c):
    """Centrode arc-length density for unit center distance."""
    return _density(phi, sin_c, cos_c)


def arc_integral(double lo, double hi, const double[::1] sin_c,
                 const double[::1] cos_c, double tol, int limit):
    """Globally adaptive GK15 integral; returns ``(value, error, n_intervals)``."""
    cdef double sign = 1.0
    cdef double t
    if hi < lo:
        t = lo
        lo = hi
        hi = t
        sign = -1.0
    if hi == lo:
        return 0.0, 0.0, 1
    if limit > MAXPARTS:
        limit = MAXPARTS
    cdef double pa[2048]
    cdef double pb[2048]
    cdef double pv[2048]
    cdef double pe[2048]
    cdef int n = 1, i, worst
    cdef double total_v, total_e, a, b, mid, v1, e1, v2, e2
    with nogil:
        _gk15(lo, hi, sin_c, cos_c, &pv[0], &pe[0])
        pa[0] = lo
        pb[0] = hi
        total_e = pe[0]
        while total_e > tol and n < limit:
            worst = 0
            for i in range(1, n):
                if pe[i] > pe[worst]:
                    worst = i
            a = pa[worst]
            b = pb[worst]
            mid = 0.5 * (a + b)
            if not (a < mid and mid < b):
                total_e -= pe[worst]
                pe[worst] = 0.0
                continue
            _gk15(a, mid, sin_c, cos_c, &v1, &e1)
            _gk15(mid, b, sin_c, cos_c, &v2, &e2)
            total_e += e1 + e2 - pe[worst]
            pb[worst] = mid
            pv[worst] = v1
            pe[worst] = e1
            pa[n] = mid
            pb[n] = b
            pv[n] = v2
            pe[n] = e2
            n += 1
        total_v = 0.0
        for i in range(n):
            total_v += pv[i]
    if total_e < 0.0:
        total_e = 0.0
    return sign * total_v, total_e, n
