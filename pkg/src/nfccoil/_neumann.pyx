# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Neumann double sum over filament segment pairs.

Built without -ffast-math: the compensated (Neumaier) accumulation relies on
strict IEEE ordering.
"""
from libc.math cimport sqrt, fabs, INFINITY


cdef inline void _neumaier(double x, double *s, double *c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def neumann_sum(const double[:, ::1] mid_a, const double[:, ::1] dl_a,
                const double[:, ::1] mid_b, const double[:, ::1] dl_b):
    """Return (sum of dl_a.dl_b / |r_a - r_b|, min midpoint distance)."""
    cdef Py_ssize_t i, j, na = mid_a.shape[0], nb = mid_b.shape[0]
    cdef double s = 0.0, c = 0.0, rs, rc, dx, dy, dz, r2, dot
    cdef double min_r2 = INFINITY
    with nogil:
        for i in range(na):
            rs = 0.0
            rc = 0.0
            for j in range(nb):
                dx = mid_a[i, 0] - mid_b[j, 0]
                dy = mid_a[i, 1] - mid_b[j, 1]
                dz = mid_a[i, 2] - mid_b[j, 2]
                r2 = dx * dx + dy * dy + dz * dz
                if r2 < min_r2:
                    min_r2 = r2
                dot = dl_a[i, 0] * dl_b[j, 0] + dl_a[i, 1] * dl_b[j, 1] + dl_a[i, 2] * dl_b[j, 2]
                _neumaier(dot / sqrt(r2), &rs, &rc)
            _neumaier(rs + rc, &s, &c)
    return s + c, sqrt(min_r2)
