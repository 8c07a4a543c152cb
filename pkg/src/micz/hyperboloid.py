"""Generalized MICZ-Kepler system on the upper sheet of the hyperboloid H^3."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import (
    DerivedNotation,
    Geometry,
    HalfInt,
    NoBoundStateError,
    PhysParams,
    QuantumNumbers,
    check,
    delta_of,
    derive_notation,
)
from .specfun import hyp2f1_terminating, log_gamma


@dataclass(frozen=True)
class HyperBoundState:
    params: PhysParams
    q: QuantumNumbers
    notation: DerivedNotation
    energy: float

    @property
    def sigma(self) -> float:
        return self.notation.sigma

    @classmethod
    def build(cls, p: PhysParams, q: QuantumNumbers) -> "HyperBoundState":
        if p.geometry is not Geometry.HYPERBOLOID:
            p = p.replace(geometry=Geometry.HYPERBOLOID)
        check(p, q)
        return cls(p, q, derive_notation(p, q), hyper_energy(p, q))


def _as_hyper(p: PhysParams) -> PhysParams:
    return p if p.geometry is Geometry.HYPERBOLOID else p.replace(geometry=Geometry.HYPERBOLOID)


def hyper_energy(p: PhysParams, q: QuantumNumbers) -> float:
    """E = -hbar^2/(2 mu R0^2)[(n+delta)^2 - 1] - mu e^4/(2 hbar^2 (n+delta)^2) + e^2/R0.

    Raises NoBoundStateError unless sigma > n + delta.
    """
    p = _as_hyper(p)
    check(p, q)
    n_eff = derive_notation(p, q).n_eff
    curvature = -p.hbar**2 / (2.0 * p.mu * p.r_curv**2) * (n_eff**2 - 1.0)
    return curvature - p.mu * p.e2**2 / (2.0 * p.hbar**2 * n_eff**2) + p.e2 / p.r_curv


def continuum_threshold(p: PhysParams) -> float:
    """Bottom of the continuous spectrum, hbar^2/(2 mu R0^2)."""
    return p.hbar**2 / (2.0 * p.mu * p.r_curv**2)


@dataclass(frozen=True)
class BoundStateCount:
    normalizable: int
    bracket: int
    levels: tuple  # admitted n values under the normalizability criterion

    @property
    def agree(self) -> bool:
        return self.normalizable == self.bracket


def bound_state_count(p: PhysParams, m, j) -> BoundStateCount:
    """Number of bound levels in the channel (s, m, j) on the hyperboloid.

    ``normalizable`` counts n = j+1, j+2, ... with (n + delta)^2 < R0/r0
    (equivalently sigma_n > n + delta); ``bracket`` counts n with
    n <= floor(sigma_n - delta - 1), the integer-part condition quoted for
    this spectrum. The two differ for marginal levels.
    """
    p = _as_hyper(p)
    m, j = HalfInt.of(m), HalfInt.of(j)
    delta = delta_of(p, m)
    ratio = p.r_curv / p.bohr_radius
    levels = []
    n = j + 1
    while (float(n) + delta) ** 2 < ratio:
        levels.append(n)
        n = n + 1
    bracket = 0
    n = j + 1
    while True:
        n_eff = float(n) + delta
        sigma = ratio / n_eff
        if float(n) <= math.floor(sigma - delta - 1.0):
            bracket += 1
            n = n + 1
        else:
            break
    return BoundStateCount(len(levels), bracket, tuple(levels))


def log_norm_constant(state: HyperBoundState) -> float:
    nt, q, R0 = state.notation, state.q, state.params.r_curv
    sig, n_eff, d = nt.sigma, nt.n_eff, nt.delta
    if not sig > n_eff:
        raise NoBoundStateError(f"sigma = {sig} <= n + delta = {n_eff}: not normalizable")
    jd = float(q.j) + d
    return (
        (nt.j_tilde + 1.0) * math.log(2.0)
        - log_gamma(float(2 * q.j + 2) + 2.0 * d)
        + 0.5
        * (
            math.log((sig - n_eff) * (sig + n_eff))
            + log_gamma(float(q.n + q.j + 1) + 2.0 * d)
            + log_gamma(jd + sig + 1.0)
            - 3.0 * math.log(R0)
            - math.log(n_eff)
            - log_gamma(q.radial_degree + 1.0)
            - log_gamma(sig - jd)
        )
    )


def hyper_norm_constant(state: HyperBoundState) -> float:
    """A_nj, assembled in log space."""
    return math.exp(log_norm_constant(state))


def quasi_radial_eval(state: HyperBoundState, tau):
    """Normalized quasi-radial function R_nj(tau) for tau >= 0 (real arithmetic).

    sinh(tau)^j~ e^{tau(n-j-sigma-1)} is rewritten as
    ((1 - e^{-2tau})/2)^j~ e^{tau(n+delta-sigma-1)} to stay finite at large tau.
    """
    tau = np.asarray(tau, dtype=float)
    nt, q = state.notation, state.q
    log_env = log_norm_constant(state) + tau * (nt.n_eff - nt.sigma - 1.0)
    if nt.j_tilde != 0:
        with np.errstate(divide="ignore"):
            log_env = log_env + nt.j_tilde * (np.log(-np.expm1(-2.0 * tau)) - math.log(2.0))
    z = -np.expm1(-2.0 * tau)
    f = hyp2f1_terminating(
        -q.radial_degree,
        float(q.j) + nt.sigma + nt.delta + 1.0,
        float(2 * q.j + 2) + 2.0 * nt.delta,
        z,
    )
    out = np.exp(log_env) * f
    return out if out.ndim else float(out)


def decay_exponent(state: HyperBoundState) -> float:
    """Asymptotic log-slope of R: n - j - 1 - sigma + j~ = n + delta - sigma - 1."""
    return state.notation.n_eff - state.notation.sigma - 1.0


def quadrature_cutoff(state: HyperBoundState, rel_tol: float = 1e-16) -> float:
    """tau beyond which sinh^2 R^2 is below ``rel_tol`` of its scale.

    The integrand decays like exp(2 (n + delta - sigma) tau); a polynomial
    factor of degree 2(n-j-1) and the 1/sigma peak offset are covered by the
    additive margin.
    """
    rate = 2.0 * (state.notation.sigma - state.notation.n_eff)
    margin = 2.0 * state.q.radial_degree * math.log(2.0 + state.notation.sigma) + 4.0
    return (-math.log(rel_tol) + margin) / rate + 5.0 / state.notation.sigma
