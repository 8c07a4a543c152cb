"""Special-function kernel.

Lanczos log-gamma (real and complex), Pochhammer symbols, terminating
hypergeometric series, Jacobi polynomials, and the gamma-function identities
used when normalizing the curved-space radial functions.

Every series here terminates: a numerator parameter equals -N with N a
nonnegative integer, so evaluation is an exact finite sum. Sums are
accumulated with Neumaier compensation; ``full_output=True`` additionally
returns the condition number sum|term| / |sum|.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from . import _backend

__all__ = [
    "DomainError",
    "CONDITION_WARN",
    "log_gamma",
    "log_gamma_complex",
    "abs_gamma_complex",
    "log_abs_gamma_complex",
    "gamma_signed",
    "rgamma",
    "pochhammer",
    "hyp1f1_terminating",
    "hyp2f1_terminating",
    "hyp3f2_unit_terminating",
    "jacobi_p",
    "sine_power_integral",
    "gamma_ratio_lower",
    "gamma_ratio_upper",
    "bailey_3f2_sides",
]

CONDITION_WARN = 1e8


class DomainError(ValueError):
    """Argument outside the domain an operation supports."""


# Lanczos approximation, g = 607/128, 15 terms.
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _lanczos_series(z):
    ser = _LANCZOS_C0
    y = z
    for c in _LANCZOS:
        y = y + 1
        ser += c / y
    return ser


def log_gamma(z: float) -> float:
    """ln Gamma(z) for real z > 0."""
    z = float(z)
    if not z > 0 or not math.isfinite(z):
        raise DomainError(f"log_gamma requires finite z > 0, got {z}")
    if z < 0.5:
        return log_gamma(z + 1.0) - math.log(z)
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * math.log(tmp) - tmp
    return tmp + math.log(_SQRT_2PI * _lanczos_series(z) / z)


def log_gamma_complex(z: complex) -> complex:
    """Principal-branch-free ln Gamma(z) for Re z > 0.

    The imaginary part is a continuous phase, not reduced to (-pi, pi].
    """
    z = complex(z)
    if not z.real > 0:
        raise DomainError(f"log_gamma_complex requires Re z > 0, got {z}")
    if z.real < 0.5:
        return log_gamma_complex(z + 1.0) - cmath.log(z)
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * cmath.log(tmp) - tmp
    return tmp + cmath.log(_SQRT_2PI * _lanczos_series(z) / z)


def log_abs_gamma_complex(x: float, y: float) -> float:
    """ln |Gamma(x + iy)| for x > 0."""
    if not x > 0:
        raise DomainError(f"abs_gamma_complex requires x > 0, got {x}")
    if y == 0:
        return log_gamma(x)
    return log_gamma_complex(complex(x, y)).real


# B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)


def log_abs_gamma_scaled(x: float, y: float) -> float:
    """ln|Gamma(x + iy)| + pi |y| / 2 for x > 0, without cancellation.

    For large |y| both terms are of size pi |y| / 2 and their sum is O(ln |y|),
    so the sum is formed analytically from Stirling's series:
    (x - 1/2) ln|z| + |y| atan(x/|y|) - x + ln(2 pi)/2 + Re sum_k c_k / z^(2k-1).
    """
    if not x > 0:
        raise DomainError(f"abs_gamma_complex requires x > 0, got {x}")
    y = abs(float(y))
    if y < 30.0:
        return log_abs_gamma_complex(x, y) + 0.5 * math.pi * y
    z = complex(x, y)
    inv = 1.0 / z
    inv2 = inv * inv
    tail = 0j
    power = inv
    for c in _STIRLING:
        tail += c * power
        power *= inv2
    return (
        (x - 0.5) * math.log(abs(z))
        + y * math.atan2(x, y)
        - x
        + 0.5 * math.log(2.0 * math.pi)
        + tail.real
    )


def abs_gamma_complex(x: float, y: float) -> float:
    """|Gamma(x + iy)| for x > 0."""
    return math.exp(log_abs_gamma_complex(x, y))


def gamma_signed(x: float) -> tuple:
    """(ln|Gamma(x)|, sign Gamma(x)) for real x that is not a pole.

    Negative arguments go through the reflection formula.
    """
    x = float(x)
    if x > 0:
        return log_gamma(x), 1.0
    if x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    # Gamma(x) Gamma(1-x) = pi / sin(pi x)
    sin_pix = math.sin(math.pi * (x - 2.0 * math.floor(x / 2.0)))
    lg = math.log(math.pi / abs(sin_pix)) - log_gamma(1.0 - x)
    return lg, math.copysign(1.0, sin_pix)


def rgamma(x: float) -> float:
    """1/Gamma(x); zero at the poles."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        return 0.0
    lg, sgn = gamma_signed(x)
    return sgn * math.exp(-lg)


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0 or int(k) != k:
        raise DomainError(f"pochhammer needs a nonnegative integer k, got {k}")
    out = 1
    for i in range(int(k)):
        out = out * (a + i)
    return out


def _as_neg_int(a, what="first numerator parameter") -> int:
    ar = complex(a)
    if ar.imag != 0 or ar.real > 0 or ar.real != math.floor(ar.real):
        raise DomainError(f"{what} must be a nonpositive integer, got {a}")
    return int(-ar.real)


def _ratios(num: Sequence, den: Sequence, nterms: int) -> np.ndarray:
    """Term ratios t_{k+1}/(t_k z) for k < nterms; checks denominator zeros."""
    r = np.empty(nterms, dtype=complex)
    for k in range(nterms):
        top = 1 + 0j
        bot = 1 + 0j
        for a in num:
            top *= a + k
        for b in den:
            bk = b + k
            if bk == 0:
                raise DomainError(
                    f"denominator parameter {b} hits zero before the series terminates"
                )
            bot *= bk
        r[k] = top / (bot * (k + 1))
    return r


def _is_real(values) -> bool:
    return all(np.isrealobj(v) or complex(v).imag == 0 for v in values)


def _series(num, den, z, full_output):
    """Shared driver for terminating pFq; num[0] is the terminating parameter."""
    nterms = _as_neg_int(num[0])
    ratios = _ratios(num, den, nterms)
    z_arr = np.asarray(z)
    scalar = z_arr.ndim == 0
    zc = np.ascontiguousarray(np.atleast_1d(z_arr), dtype=complex).ravel()
    vals, abssum = _backend.terminating_series(ratios, zc)
    vals = np.asarray(vals).reshape(np.shape(z_arr) or (1,))
    abssum = np.asarray(abssum).reshape(vals.shape)
    if _is_real(list(num) + list(den)) and np.isrealobj(z_arr):
        vals = vals.real
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(np.abs(vals) > 0, abssum / np.abs(vals), np.inf)
    if scalar:
        vals = vals[0].item()
        cond = float(cond[0])
        abssum = float(abssum[0])
    if full_output:
        return vals, cond
    return vals


def hyp1f1_terminating(neg_n, c, x, *, full_output=False):
    """Confluent 1F1(-N; c; x) as an exact finite sum.

    Parameters
    ----------
    neg_n : int
        Nonpositive integer -N.
    c : float
        Must not be a nonpositive integer > -N (division by zero).
    x : float or ndarray
    full_output : bool
        Also return the condition number sum|term|/|sum|; values above
        ``CONDITION_WARN`` indicate heavy cancellation.
    """
    return _series((neg_n,), (c,), x, full_output)


def hyp2f1_terminating(neg_n, b, c, z, *, full_output=False):
    """Gauss 2F1(-N, b; c; z) as a finite sum; b, c, z may be complex."""
    return _series((neg_n, b), (c,), z, full_output)


def hyp3f2_unit_terminating(a1, a2, neg_n, b1, b2, *, full_output=False):
    """3F2(a1, a2, -N; b1, b2; 1) as a finite sum."""
    val = _series((neg_n, a1, a2), (b1, b2), 1.0, full_output)
    return val


def jacobi_p(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence."""
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if x.ndim else float(p0)
    p1 = 0.5 * (a - b + (a + b + 2.0) * x)
    apb = a + b
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        a2 = (2.0 * k + apb - 1.0) * (a * a - b * b)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb)
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return p1 if x.ndim else float(p1)


def sine_power_integral(alpha: float, beta: float) -> complex:
    """Closed form of the integral of sin(t)**alpha * exp(i beta t) over [0, pi].

    pi Gamma(1+alpha) e^{i pi beta/2} / (2^alpha Gamma(1+(alpha+beta)/2) Gamma(1+(alpha-beta)/2))
    """
    if not alpha > 0:
        raise DomainError(f"sine_power_integral requires alpha > 0, got {alpha}")
    mag = math.pi * math.exp(log_gamma(1.0 + alpha) - alpha * math.log(2.0))
    mag *= rgamma(1.0 + 0.5 * (alpha + beta)) * rgamma(1.0 + 0.5 * (alpha - beta))
    return mag * cmath.exp(0.5j * math.pi * beta)


def _signed_ratio(top: float, bottom: float) -> float:
    lt, st = gamma_signed(top)
    lb, sb = gamma_signed(bottom)
    return st * sb * math.exp(lt - lb)


def gamma_ratio_lower(z: float, n: int) -> tuple:
    """Both sides of Gamma(z)/Gamma(z-n) = (-1)^n Gamma(n+1-z)/Gamma(1-z)."""
    lhs = _signed_ratio(z, z - n)
    rhs = (-1) ** n * _signed_ratio(n + 1 - z, 1 - z)
    return lhs, rhs


def gamma_ratio_upper(z: float, n: int) -> tuple:
    """Both sides of Gamma(n-z)/Gamma(-z) = (-1)^n Gamma(z+1)/Gamma(z-n+1)."""
    lhs = _signed_ratio(n - z, -z)
    rhs = (-1) ** n * _signed_ratio(z + 1, z - n + 1)
    return lhs, rhs


def bailey_3f2_sides(a, a_prime, n: int, b, b_prime) -> tuple:
    """Both sides of the terminating 3F2 transformation at unit argument.

    3F2(a, a', -N; b', 1-N-b; 1) = (a+b)_N/(b)_N * 3F2(a, b'-a', -N; b', a+b; 1)
    """
    lhs = hyp3f2_unit_terminating(a, a_prime, -n, b_prime, 1 - n - b)
    rhs = pochhammer(a + b, n) / pochhammer(b, n) * hyp3f2_unit_terminating(
        a, b_prime - a_prime, -n, b_prime, a + b
    )
    return lhs, rhs
