"""Pure-Python fallbacks for the compiled kernels in ``_kernels.pyx``.

Signatures and results match the compiled versions; the Sturm loop is plain
Python and therefore slow on large grids.
"""

import numpy as np

_SAFMIN = np.finfo(float).tiny
_EPS = np.finfo(float).eps


def _pivmin(e2):
    return _SAFMIN * max(1.0, float(e2.max()) if e2.size else 1.0)


def _count(d, e2, x, pivmin):
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    cnt = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            cnt += 1
    return cnt


def sturm_count(d, e, x):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below x."""
    d = np.asarray(d, dtype=float)
    e2 = np.square(np.asarray(e, dtype=float))
    return _count(d.tolist(), e2.tolist(), float(x), _pivmin(e2))


def bisect_eigenvalues(d, e, ilo, ihi, lo, hi, abstol):
    """Eigenvalues ilo..ihi (inclusive, 0-based) bracketed by [lo, hi]."""
    d = np.asarray(d, dtype=float)
    e2 = np.square(np.asarray(e, dtype=float))
    pivmin = _pivmin(e2)
    dl, el = d.tolist(), e2.tolist()
    out = np.empty(ihi - ilo + 1)
    prev = lo
    for i in range(ilo, ihi + 1):
        a, b = prev, hi
        for _ in range(400):
            tol = max(abstol, 2.0 * _EPS * max(abs(a), abs(b)))
            if b - a <= tol:
                break
            mid = 0.5 * (a + b)
            if _count(dl, el, mid, pivmin) > i:
                b = mid
            else:
                a = mid
        out[i - ilo] = 0.5 * (a + b)
        prev = a
    return out


def _neumaier(s, c, t):
    tmp = s + t
    c = c + np.where(np.abs(s) >= np.abs(t), (s - tmp) + t, (t - tmp) + s)
    return tmp, c


def terminating_series(ratios, z):
    """Sum 1 + sum_k prod_{i<=k} ratios[i]*z with Neumaier compensation.

    Vectorized over ``z``; returns (values, sum of |terms|).
    """
    z = np.asarray(z, dtype=complex)
    t = np.ones_like(z)
    sr, cr = np.ones(z.shape), np.zeros(z.shape)
    si, ci = np.zeros(z.shape), np.zeros(z.shape)
    acc = np.ones(z.shape)
    for r in np.asarray(ratios, dtype=complex):
        t = t * r * z
        sr, cr = _neumaier(sr, cr, t.real)
        si, ci = _neumaier(si, ci, t.imag)
        acc += np.abs(t.real) + np.abs(t.imag)
    return (sr + cr) + 1j * (si + ci), acc
