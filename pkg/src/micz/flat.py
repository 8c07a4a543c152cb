"""Generalized MICZ-Kepler system in Euclidean space: bound states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import AngularState, z_eval
from .params import DerivedNotation, Geometry, PhysParams, QuantumNumbers, check, derive_notation
from .specfun import hyp1f1_terminating, log_gamma


@dataclass(frozen=True)
class FlatBoundState:
    params: PhysParams
    q: QuantumNumbers
    notation: DerivedNotation
    energy: float
    kappa: float

    @classmethod
    def build(cls, p: PhysParams, q: QuantumNumbers) -> "FlatBoundState":
        if p.geometry is not Geometry.FLAT:
            p = p.replace(geometry=Geometry.FLAT)
        check(p, q)
        nt = derive_notation(p, q)
        return cls(p, q, nt, flat_energy(p, q), nt.kappa)


def flat_energy(p: PhysParams, q: QuantumNumbers) -> float:
    """E = -mu e^4 / (2 hbar^2 (n + delta)^2); independent of j."""
    check(p.replace(geometry=Geometry.FLAT), q)
    n_eff = derive_notation(p, q).n_eff
    return -p.mu * p.e2**2 / (2.0 * p.hbar**2 * n_eff**2)


def _log_prefactor(state: FlatBoundState) -> float:
    nt, q = state.notation, state.q
    r0 = state.params.bohr_radius
    deg = q.radial_degree
    two_jt2 = float(2 * q.j + 2) + 2.0 * nt.delta
    return (
        math.log(2.0)
        + 2.0 * math.log(state.kappa)
        + 0.5 * math.log(r0)
        - log_gamma(two_jt2)
        + 0.5 * (log_gamma(float(q.n + q.j + 1) + 2.0 * nt.delta) - log_gamma(deg + 1.0))
    )


def radial_eval(state: FlatBoundState, r):
    """Normalized radial function R_nj(r) (integral of R^2 r^2 dr is 1)."""
    r = np.asarray(r, dtype=float)
    nt, q = state.notation, state.q
    x = 2.0 * state.kappa * r
    log_env = _log_prefactor(state) - 0.5 * x
    if nt.j_tilde != 0:
        with np.errstate(divide="ignore"):
            log_env = log_env + nt.j_tilde * np.log(x)
    two_jt2 = float(2 * q.j + 2) + 2.0 * nt.delta
    poly = hyp1f1_terminating(-q.radial_degree, two_jt2, x)
    out = np.exp(log_env) * poly
    return out if out.ndim else float(out)


def wavefunction_eval(p: PhysParams, q: QuantumNumbers, r, theta, phi):
    """psi = R(r) Z(theta, phi)."""
    state = FlatBoundState.build(p, q)
    ang = AngularState(state.params, q, state.notation)
    return radial_eval(state, r) * z_eval(ang, theta, phi)
