"""Generalized MICZ-Kepler system on the three-sphere S^3 of radius R0."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DerivedNotation, Geometry, PhysParams, QuantumNumbers, check, derive_notation
from .specfun import hyp2f1_terminating, log_abs_gamma_scaled, log_gamma, pochhammer

# |Im| is accepted if below this fraction of |Re| ...
REALITY_TOL = 1e-10
# ... or if it is explained by rounding in the series (multiples of eps * scale).
_ROUNDING_SLACK = 64 * np.finfo(float).eps


class NumericInstabilityError(ArithmeticError):
    """Imaginary residue of a real-valued function exceeds tolerance."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class RangeError(OverflowError):
    """Normalization constant not representable in double precision."""


@dataclass(frozen=True)
class SphereBoundState:
    params: PhysParams
    q: QuantumNumbers
    notation: DerivedNotation
    energy: float

    @property
    def sigma(self) -> float:
        return self.notation.sigma

    @classmethod
    def build(cls, p: PhysParams, q: QuantumNumbers) -> "SphereBoundState":
        if p.geometry is not Geometry.SPHERE:
            p = p.replace(geometry=Geometry.SPHERE)
        check(p, q)
        nt = derive_notation(p, q)
        return cls(p, q, nt, sphere_energy(p, q))


def sphere_energy(p: PhysParams, q: QuantumNumbers) -> float:
    """E = hbar^2/(2 mu R0^2) [(n+delta)^2 - 1] - mu e^4 / (2 hbar^2 (n+delta)^2)."""
    p = p if p.geometry is Geometry.SPHERE else p.replace(geometry=Geometry.SPHERE)
    check(p, q)
    n_eff = derive_notation(p, q).n_eff
    curvature = p.hbar**2 / (2.0 * p.mu * p.r_curv**2) * (n_eff**2 - 1.0)
    return curvature - p.mu * p.e2**2 / (2.0 * p.hbar**2 * n_eff**2)


def log_norm_constant(state: SphereBoundState) -> float:
    nt, q, R0 = state.notation, state.q, state.params.r_curv
    sig, n_eff, d = nt.sigma, nt.n_eff, nt.delta
    deg = q.radial_degree
    return (
        (nt.j_tilde + 1.0) * math.log(2.0)
        - log_gamma(float(2 * q.j + 2) + 2.0 * d)
        + log_abs_gamma_scaled(nt.j_tilde + 1.0, -sig)
        + 0.5
        * (
            math.log(n_eff**2 + sig**2)
            + log_gamma(float(q.n + q.j + 1) + 2.0 * d)
            - math.log(math.pi)
            - 3.0 * math.log(R0)
            - math.log(2.0 * n_eff)
            - log_gamma(deg + 1.0)
        )
    )


def sphere_norm_constant(state: SphereBoundState) -> float:
    """C_nj, assembled in log space."""
    lc = log_norm_constant(state)
    if lc > 709.0:
        raise RangeError(f"ln C = {lc} overflows double precision")
    return math.exp(lc)


def _envelope(state: SphereBoundState, chi, log_c: float):
    """C sin(chi)^j~ e^{-sigma chi} (real, positive)."""
    nt = state.notation
    log_env = log_c - nt.sigma * chi
    if nt.j_tilde != 0:
        with np.errstate(divide="ignore"):
            log_env = log_env + nt.j_tilde * np.log(np.sin(chi))
    return np.exp(log_env)


def quasi_radial_complex(state: SphereBoundState, chi, representation: str = "standard"):
    """Complex-arithmetic value of R_nj(chi) and the rounding scale.

    ``representation`` is ``"standard"`` (2F1 in 1 - e^{2i chi}) or
    ``"transformed"`` (2F1 in e^{2i chi}, connection-formula form).
    Returns (values, scale) where scale bounds the magnitudes summed.
    """
    chi = np.asarray(chi, dtype=float)
    nt, q = state.notation, state.q
    deg = q.radial_degree
    sig = nt.sigma
    jt = nt.j_tilde
    env = _envelope(state, chi, log_norm_constant(state))
    phase = np.exp(-1j * deg * chi)
    b = complex(jt + 1.0, sig)
    e2ic = np.exp(2j * chi)
    if representation == "standard":
        c = float(2 * q.j + 2) + 2.0 * nt.delta
        f, cond = hyp2f1_terminating(-deg, b, c, 1.0 - e2ic, full_output=True)
        pref = 1.0
    elif representation == "transformed":
        c = complex(1.0 - nt.n_eff, sig)
        f, cond = hyp2f1_terminating(-deg, b, c, e2ic, full_output=True)
        # Gamma(2j~+2) Gamma(n+delta-i sigma) / (Gamma(n+j+2delta+1) Gamma(j~+1-i sigma))
        pref = pochhammer(complex(jt + 1.0, -sig), deg) / pochhammer(2.0 * jt + 2.0, deg)
    else:
        raise ValueError(f"unknown representation {representation!r}")
    vals = pref * env * phase * f
    scale = abs(pref) * env * np.abs(f) * np.where(np.isfinite(cond), cond, 1.0)
    return vals, scale


def quasi_radial_eval(state: SphereBoundState, chi, representation: str = "standard"):
    """Normalized real quasi-radial function R_nj(chi) on (0, pi).

    Evaluated in complex arithmetic; raises NumericInstabilityError when the
    imaginary residue exceeds REALITY_TOL * |Re| and is not explained by
    rounding.
    """
    vals, scale = quasi_radial_complex(state, chi, representation)
    im = np.abs(np.imag(vals))
    re = np.real(vals)
    bad = (im > REALITY_TOL * np.abs(re)) & (im > _ROUNDING_SLACK * scale)
    if np.any(bad):
        idx = np.flatnonzero(np.atleast_1d(bad))[0]
        ratio = float(np.atleast_1d(scale)[idx] / max(np.atleast_1d(np.abs(re))[idx], 1e-300))
        raise NumericInstabilityError(
            f"imaginary residue {float(np.atleast_1d(im)[idx]):.3e} at chi index {idx} "
            f"exceeds tolerance (condition {ratio:.3e})",
            condition=ratio,
        )
    return re if np.ndim(re) else float(re)
