# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Sturm-sequence bisection and compensated terminating series."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, fmax

cnp.import_array()

cdef double _SAFMIN = 2.2250738585072014e-308
cdef double _EPS = 2.220446049250313e-16


cdef Py_ssize_t _count(const double[::1] d, const double[::1] e2, double x,
                       double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = d.shape[0], cnt = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        cnt += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            cnt += 1
    return cnt


def sturm_count(d, e, double x):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below x."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(np.square(e), dtype=np.float64)
    cdef double pivmin = _SAFMIN * fmax(1.0, np.max(e2) if e2.shape[0] else 1.0)
    return _count(dv, e2, x, pivmin)


def bisect_eigenvalues(d, e, Py_ssize_t ilo, Py_ssize_t ihi, double lo, double hi,
                       double abstol):
    """Eigenvalues ilo..ihi (inclusive, 0-based) bracketed by [lo, hi]."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(np.square(e), dtype=np.float64)
    cdef double pivmin = _SAFMIN * fmax(1.0, np.max(e2) if e2.shape[0] else 1.0)
    cdef Py_ssize_t i, it, c
    cdef double a, b, mid, tol
    out = np.empty(ihi - ilo + 1, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double prev = lo
    with nogil:
        for i in range(ilo, ihi + 1):
            a = prev
            b = hi
            for it in range(400):
                tol = fmax(abstol, 2.0 * _EPS * fmax(fabs(a), fabs(b)))
                if b - a <= tol:
                    break
                mid = 0.5 * (a + b)
                c = _count(dv, e2, mid, pivmin)
                if c > i:
                    b = mid
                else:
                    a = mid
            ov[i - ilo] = 0.5 * (a + b)
            prev = a
    return out


def terminating_series(const double complex[::1] ratios, const double complex[::1] z):
    """Sum 1 + sum_k prod_{i<=k} ratios[i]*z with Neumaier compensation.

    Returns (values, sum of |terms|).
    """
    cdef Py_ssize_t m = z.shape[0], nt = ratios.shape[0], p, k
    values = np.empty(m, dtype=np.complex128)
    abssum = np.empty(m, dtype=np.float64)
    cdef double complex[::1] vv = values
    cdef double[::1] av = abssum
    cdef double complex t, zz
    cdef double sr, si, cr, ci, tr, ti, tmp, acc
    with nogil:
        for p in range(m):
            zz = z[p]
            t = 1.0
            sr = 1.0
            si = 0.0
            cr = 0.0
            ci = 0.0
            acc = 1.0
            for k in range(nt):
                t = t * ratios[k] * zz
                tr = t.real
                ti = t.imag
                tmp = sr + tr
                if fabs(sr) >= fabs(tr):
                    cr += (sr - tmp) + tr
                else:
                    cr += (tr - tmp) + sr
                sr = tmp
                tmp = si + ti
                if fabs(si) >= fabs(ti):
                    ci += (si - tmp) + ti
                else:
                    ci += (ti - tmp) + si
                si = tmp
                acc += fabs(tr) + fabs(ti)
            vv[p] = (sr + cr) + 1j * (si + ci)
            av[p] = acc
    return values, abssum
