"""Coordinate maps, conformal factors and potentials for the three geometries.

Projective coordinates r = (x1, x2, x3) make the metric conformally flat,
ds^2 = g(r) dr.dr with g(r) = (1 + eps r^2/4R0^2)^-2 (eps = +1 sphere,
-1 hyperboloid). Hyperspherical coordinates (chi or tau, theta, phi) are
related by |r| = 2 R0 tan(chi/2) on the sphere and |r| = 2 R0 tanh(tau/2) on
the upper sheet of the hyperboloid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import Geometry, PhysParams


class GeometryDomainError(ValueError):
    """Point outside the coordinate domain of the geometry."""


class PoleError(GeometryDomainError):
    """Point maps to projective infinity (chi = pi on the sphere)."""


class AxisSingularityError(ValueError):
    """Potential evaluated on the x3 axis where a lambda term diverges."""


@dataclass(frozen=True)
class ProjectivePoint:
    x1: float
    x2: float
    x3: float

    @property
    def r(self) -> float:
        return math.sqrt(self.x1**2 + self.x2**2 + self.x3**2)


@dataclass(frozen=True)
class HyperAngles:
    """(chi, theta, phi) on the sphere, (tau, theta, phi) on the hyperboloid,
    (r, theta, phi) in flat space."""

    radial: float
    theta: float
    phi: float


def conformal_factor(p: PhysParams, r):
    """g(r) = (1 + eps r^2/(4 R0^2))^-2; identically 1 in flat space."""
    r = np.asarray(r, dtype=float)
    eps = p.geometry.epsilon
    if eps == 0:
        out = np.ones_like(r)
    else:
        if np.any(r < 0):
            raise GeometryDomainError("r must be >= 0")
        if eps < 0 and np.any(r >= 2.0 * p.r_curv):
            raise GeometryDomainError(f"hyperboloid requires r < 2R0 = {2 * p.r_curv}")
        out = (1.0 + eps * r**2 / (4.0 * p.r_curv**2)) ** -2
    return out if out.ndim else float(out)


def radial_to_r(p: PhysParams, radial):
    """Projective |r| from the hyperspherical radial variable."""
    radial = np.asarray(radial, dtype=float)
    g = p.geometry
    if g is Geometry.FLAT:
        out = radial
    elif g is Geometry.SPHERE:
        if np.any(radial >= math.pi):
            raise PoleError("chi = pi maps to projective infinity")
        out = 2.0 * p.r_curv * np.tan(0.5 * radial)
    else:
        out = 2.0 * p.r_curv * np.tanh(0.5 * radial)
    return out if out.ndim else float(out)


def r_to_radial(p: PhysParams, r):
    r = np.asarray(r, dtype=float)
    g = p.geometry
    if g is Geometry.FLAT:
        out = r
    elif g is Geometry.SPHERE:
        out = 2.0 * np.arctan(r / (2.0 * p.r_curv))
    else:
        if np.any(r >= 2.0 * p.r_curv):
            raise GeometryDomainError(f"hyperboloid requires r < 2R0 = {2 * p.r_curv}")
        out = 2.0 * np.arctanh(r / (2.0 * p.r_curv))
    return out if out.ndim else float(out)


def projective_to_angles(p: PhysParams, point: ProjectivePoint) -> HyperAngles:
    r = point.r
    radial = r_to_radial(p, r)
    rho = math.hypot(point.x1, point.x2)
    theta = math.atan2(rho, point.x3)
    phi = math.atan2(point.x2, point.x1) % (2.0 * math.pi)
    return HyperAngles(float(radial), theta, phi)


def angles_to_projective(p: PhysParams, angles: HyperAngles) -> ProjectivePoint:
    r = radial_to_r(p, angles.radial)
    st = math.sin(angles.theta)
    return ProjectivePoint(
        r * st * math.cos(angles.phi),
        r * st * math.sin(angles.phi),
        r * math.cos(angles.theta),
    )


def embedding(p: PhysParams, point: ProjectivePoint) -> np.ndarray:
    """Ambient coordinates: (y1, y2, y3, y4) on the sphere, (y0, y1, y2, y3)
    on the hyperboloid, the point itself in flat space."""
    x = np.array([point.x1, point.x2, point.x3])
    eps = p.geometry.epsilon
    if eps == 0:
        return x
    u = (x @ x) / (4.0 * p.r_curv**2)
    if eps < 0 and u >= 1.0:
        raise GeometryDomainError("point outside the hyperboloid chart")
    y = x / (1.0 + eps * u)
    y_extra = p.r_curv * (1.0 - eps * u) / (1.0 + eps * u)
    if eps > 0:
        return np.append(y, y_extra)
    return np.insert(y, 0, y_extra)


def angles_embedding(p: PhysParams, angles: HyperAngles) -> np.ndarray:
    """Ambient coordinates straight from hyperspherical angles."""
    R = p.r_curv
    st, ct = math.sin(angles.theta), math.cos(angles.theta)
    cf, sf = math.cos(angles.phi), math.sin(angles.phi)
    g = p.geometry
    if g is Geometry.SPHERE:
        a = R * math.sin(angles.radial)
        return np.array([a * st * cf, a * st * sf, a * ct, R * math.cos(angles.radial)])
    if g is Geometry.HYPERBOLOID:
        a = R * math.sinh(angles.radial)
        return np.array([R * math.cosh(angles.radial), a * st * cf, a * st * sf, a * ct])
    r = angles.radial
    return np.array([r * st * cf, r * st * sf, r * ct])


def central_potential(p: PhysParams, r):
    """Coulomb part V(r) in projective coordinates."""
    r = np.asarray(r, dtype=float)
    eps = p.geometry.epsilon
    if eps == 0:
        out = -p.e2 / r
    else:
        out = -(1.0 - eps * r**2 / (4.0 * p.r_curv**2)) * p.e2 / r
        out = out + 0.5 * (1 - eps) * p.e2 / p.r_curv
    return out if out.ndim else float(out)


def potential_gmicz(p: PhysParams, point: ProjectivePoint) -> float:
    """Full potential: g^-1 [hbar^2 s^2/(2 mu r^2) + lambda terms] + V(r)."""
    r, x3 = point.r, point.x3
    if r == 0:
        raise GeometryDomainError("potential is singular at r = 0")
    plus, minus = r + x3, r - x3
    if (p.lambda1 != 0 and plus == 0) or (p.lambda2 != 0 and minus == 0):
        raise AxisSingularityError(f"lambda term diverges on the x3 axis at {point}")
    angular = p.hbar**2 * float(p.s) ** 2 / (2.0 * p.mu * r**2)
    if p.lambda1:
        angular += p.lambda1 / (r * plus)
    if p.lambda2:
        angular += p.lambda2 / (r * minus)
    return angular / conformal_factor(p, r) + central_potential(p, r)


# Quasi-radial data in hyperspherical variables, consumed by the eigen-oracle.


def length_scale(p: PhysParams) -> float:
    """R0 for curved geometries; 1 in flat space (radial variable is r)."""
    return p.r_curv if p.geometry.curved else 1.0


def radial_domain(p: PhysParams) -> tuple:
    """(lower, upper) of the radial variable; upper is inf when unbounded."""
    if p.geometry is Geometry.SPHERE:
        return 0.0, math.pi
    return 0.0, math.inf


def measure_root(p: PhysParams, x):
    """f(x) with volume element L^3 f(x)^2 dx dOmega: sin, sinh or x."""
    x = np.asarray(x, dtype=float)
    g = p.geometry
    if g is Geometry.SPHERE:
        return np.sin(x)
    if g is Geometry.HYPERBOLOID:
        return np.sinh(x)
    return x.copy()


def log_measure_root(p: PhysParams, x):
    """ln f(x), overflow-free for large hyperboloid arguments."""
    x = np.asarray(x, dtype=float)
    g = p.geometry
    if g is Geometry.SPHERE:
        return np.log(np.sin(x))
    if g is Geometry.HYPERBOLOID:
        return x + np.log1p(-np.exp(-2.0 * x)) - math.log(2.0)
    return np.log(x)


def coulomb_hyperspherical(p: PhysParams, x):
    """Coulomb potential in the radial variable.

    Sphere: -(e^2/R0) cot(chi); hyperboloid: -(e^2/R0)(coth(tau) - 1);
    flat: -e^2/r.
    """
    x = np.asarray(x, dtype=float)
    g = p.geometry
    if g is Geometry.SPHERE:
        out = -p.e2 / p.r_curv / np.tan(x)
    elif g is Geometry.HYPERBOLOID:
        # coth(t) - 1 = 2/(e^{2t} - 1)
        with np.errstate(over="ignore"):
            out = -p.e2 / p.r_curv * 2.0 / np.expm1(2.0 * x)
    else:
        out = -p.e2 / x
    return out if out.ndim else float(out)
