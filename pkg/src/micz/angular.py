"""Angular eigenfunctions Z_jm^(s)(theta, phi) and the operators M^(s), J3."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DerivedNotation, PhysParams, QuantumNumbers, derive_notation
from .specfun import jacobi_p, log_gamma


class GridError(ValueError):
    """Grid unsuitable for a finite-difference stencil."""


@dataclass(frozen=True)
class AngularState:
    params: PhysParams
    q: QuantumNumbers
    notation: DerivedNotation

    @classmethod
    def build(cls, p: PhysParams, q: QuantumNumbers) -> "AngularState":
        return cls(p, q, derive_notation(p, q))

    @property
    def degree(self) -> int:
        """Jacobi degree j - m_+."""
        return int(self.q.j - self.notation.m_plus)

    @property
    def phi_mode(self) -> int:
        """Integer azimuthal mode m - s."""
        return int(self.q.m - self.params.s)

    @property
    def eigenvalue(self) -> float:
        jt = self.notation.j_tilde
        return jt * (jt + 1.0)


def z_norm(state: AngularState) -> float:
    nt = state.notation
    k = state.degree
    m1, m2 = nt.m1, nt.m2
    log_n2 = (
        math.log(2.0 * nt.j_tilde + 1.0)
        + log_gamma(k + 1.0)
        + log_gamma(k + m1 + m2 + 1.0)
        - math.log(4.0 * math.pi)
        - log_gamma(k + m1 + 1.0)
        - log_gamma(k + m2 + 1.0)
    )
    return math.exp(0.5 * log_n2)


def z_theta(state: AngularState, theta):
    """Real theta-factor of Z (Z = z_theta * e^{i(m-s)phi})."""
    theta = np.asarray(theta, dtype=float)
    nt = state.notation
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    out = (
        z_norm(state)
        * c**nt.m1
        * s**nt.m2
        * jacobi_p(state.degree, nt.m2, nt.m1, np.cos(theta))
    )
    return out if out.ndim else float(out)


def z_eval(state: AngularState, theta, phi):
    """Normalized Z_jm^(s)(theta, phi)."""
    phase = np.exp(1j * state.phi_mode * np.asarray(phi, dtype=float))
    out = z_theta(state, theta) * phase
    return out if np.ndim(out) else complex(out)


def _fd4(values: np.ndarray, h: float):
    """4th-order central first and second derivatives at interior points."""
    f = values
    d1 = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    d2 = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)
    return d1, d2


def apply_m_operator(p: PhysParams, theta, values, phi_mode: int):
    """Apply M^(s) to f(theta) e^{i k phi}, with k = ``phi_mode``.

    Theta derivatives use 4th-order central differences on the uniform grid
    ``theta`` (strictly inside (0, pi)); phi derivatives act exactly on the
    single mode. Returns (theta_interior, M f) with two points dropped at
    each end.
    """
    theta = np.asarray(theta, dtype=float)
    values = np.asarray(values)
    if theta.ndim != 1 or theta.size < 5 or values.shape != theta.shape:
        raise GridError("need a 1-D theta grid of at least 5 points matching values")
    steps = np.diff(theta)
    h = steps[0]
    if not np.allclose(steps, h, rtol=1e-9, atol=0) or h <= 0:
        raise GridError("theta grid must be uniform and increasing")
    if theta[0] <= 0 or theta[-1] >= math.pi:
        raise GridError("theta grid must lie strictly inside (0, pi)")
    k = phi_mode
    s2 = 2.0 * float(p.s)
    d1, d2 = _fd4(values, h)
    t = theta[2:-2]
    f = values[2:-2]
    laplace = d2 + d1 / np.tan(t)
    # d_phi -> i k; (d_phi + 2 i s)^2 -> -(k + 2s)^2
    north = (k * k + p.g1) / (4.0 * np.cos(0.5 * t) ** 2)
    south = ((k + s2) ** 2 + p.g2) / (4.0 * np.sin(0.5 * t) ** 2)
    return t, -(laplace - (north + south) * f)


def apply_j3(p: PhysParams, phi, values):
    """J3 = -i d/dphi + s on samples over a uniform periodic phi grid [0, 2pi).

    The derivative is spectral, so single-mode inputs are differentiated
    exactly up to rounding.
    """
    values = np.asarray(values, dtype=complex)
    n = values.shape[-1]
    phi = np.asarray(phi, dtype=float)
    if phi.shape[-1] != n or not np.allclose(np.diff(phi), 2 * math.pi / n):
        raise GridError("phi grid must be uniform on [0, 2pi) with n points")
    modes = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        modes[n // 2] = 0.0
    deriv = np.fft.ifft(1j * modes * np.fft.fft(values, axis=-1), axis=-1)
    return -1j * deriv + float(p.s) * values


def m_residual(state: AngularState, n_points: int = 2000) -> float:
    """Relative L2 residual of M Z - j~(j~+1) Z on an interior theta grid."""
    eps = math.pi / (n_points + 1)
    theta = np.linspace(eps, math.pi - eps, n_points)
    t, mz = apply_m_operator(state.params, theta, z_theta(state, theta), state.phi_mode)
    z = z_theta(state, t)
    lam = state.eigenvalue
    scale = np.linalg.norm(lam * z) if lam else np.linalg.norm(z)
    return float(np.linalg.norm(mz - lam * z) / scale)


def m_eigenvalue_estimate(state: AngularState, n_points: int = 2000) -> float:
    """Rayleigh quotient <Z, M Z>/<Z, Z> over the interior grid."""
    eps = math.pi / (n_points + 1)
    theta = np.linspace(eps, math.pi - eps, n_points)
    t, mz = apply_m_operator(state.params, theta, z_theta(state, theta), state.phi_mode)
    z = z_theta(state, t)
    w = np.sin(t)
    return float(np.sum(w * z * mz) / np.sum(w * z * z))


def m_eigenvalue_extrapolated(state: AngularState, n_points: int = 2000) -> tuple:
    """Rayleigh quotient on n and 2n points combined for the O(h^4) stencil.

    Returns (estimate, |estimate - fine|).
    """
    coarse = m_eigenvalue_estimate(state, n_points)
    fine = m_eigenvalue_estimate(state, 2 * n_points + 1)
    best = (16.0 * fine - coarse) / 15.0
    return best, abs(best - fine)


def j3_eigenvalue(state: AngularState, n_phi: int = 64) -> float:
    """Mean of (J3 Z) / Z over a periodic phi grid at theta = 1.

    Equals m up to rounding, since the spectral derivative is exact on a
    single Fourier mode.
    """
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    z = z_eval(state, 1.0, phi)
    ratio = apply_j3(state.params, phi, z) / z
    return float(np.mean(ratio.real))
