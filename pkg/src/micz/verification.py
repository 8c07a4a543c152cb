"""Verification suites: normalization, orthogonality, ODE residuals, oracle
agreement, flat limits, hydrogen reductions and special-function identities.

Each check reports the measured error against its tolerance. Tolerances are
multiplied by the float in ``MICZ_TOL_OVERRIDE`` when it is set.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from . import angular, flat, hyperboloid, sphere
from .geometry import coulomb_hyperspherical
from .oracle import count_bound_states, limit_study, quadrature, solve_quasi_radial
from .params import Geometry, HalfInt, PhysParams, QuantumNumbers, derive_notation
from .specfun import bailey_3f2_sides, gamma_ratio_lower, gamma_ratio_upper

SUITES = (
    "normalization",
    "orthogonality",
    "ode-residual",
    "oracle",
    "limits",
    "reductions",
    "identities",
)

NORM_TOL = 1e-8
ODE_TOL = 1e-6
ORACLE_TOL = 1e-6
IDENTITY_TOL = 1e-11
REDUCTION_ULP = 4


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def tolerance_scale() -> float:
    raw = os.environ.get("MICZ_TOL_OVERRIDE", "")
    if not raw:
        return 1.0
    value = float(raw)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"MICZ_TOL_OVERRIDE must be a positive float, got {raw!r}")
    return value


def _check(suite: str, name: str, measured: float, tol: float) -> CheckResult:
    tol = tol * tolerance_scale()
    measured = float(measured)
    return CheckResult(suite, name, measured, tol, bool(measured <= tol))


# ---------------------------------------------------------------------------
# state sets


def random_states(geometry: Geometry, count: int = 50, seed: int = 2024, n_max: int = 6):
    """Reproducible valid (params, quantum numbers) pairs with n <= n_max.

    Curved radii keep sigma well away from the normalizability edge: the
    sphere uses R0 in [2, 20] r0 and the hyperboloid R0 = r0 (n+delta)^2 * u
    with u in [2, 6].
    """
    geometry = Geometry(geometry)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        s = HalfInt(int(rng.integers(0, 4)))  # 0, 1/2, 1, 3/2
        lam1, lam2 = (float(x) for x in np.round(rng.uniform(0.0, 1.5, 2), 6))
        # m - s integer, |m| small
        m = s + int(rng.integers(-2, 3))
        mp = max(abs(m), abs(s))
        j = mp + int(rng.integers(0, 3))
        n = j + 1 + int(rng.integers(0, 4))
        if float(n) > n_max:
            continue
        p = PhysParams(s=s, lambda1=lam1, lambda2=lam2, geometry=geometry)
        q = QuantumNumbers.of(n, j, m)
        if geometry is Geometry.SPHERE:
            p = p.replace(r_curv=float(np.round(rng.uniform(2.0, 20.0), 6)))
        elif geometry is Geometry.HYPERBOLOID:
            n_eff = derive_notation(p, q).n_eff
            p = p.replace(r_curv=float(np.round(n_eff**2 * rng.uniform(2.0, 6.0), 6)))
        out.append((p, q))
    return out


# ---------------------------------------------------------------------------
# normalization and orthogonality


def _radial_integrand(p: PhysParams, q: QuantumNumbers):
    """(integrand of R^2 times measure, upper limit) for the geometry."""
    g = p.geometry
    if g is Geometry.FLAT:
        st = flat.FlatBoundState.build(p, q)
        upper = (80.0 + 8.0 * st.notation.n_eff) / (2.0 * st.kappa)
        return (lambda r: r**2 * flat.radial_eval(st, r) ** 2), upper
    R0 = p.r_curv
    if g is Geometry.SPHERE:
        st = sphere.SphereBoundState.build(p, q)
        return (lambda x: R0**3 * np.sin(x) ** 2 * sphere.quasi_radial_eval(st, x) ** 2), math.pi
    st = hyperboloid.HyperBoundState.build(p, q)
    upper = hyperboloid.quadrature_cutoff(st)
    return (
        lambda x: R0**3 * np.sinh(x) ** 2 * hyperboloid.quasi_radial_eval(st, x) ** 2
    ), upper


def radial_norm_error(p: PhysParams, q: QuantumNumbers) -> float:
    f, upper = _radial_integrand(p, q)
    return abs(quadrature(f, 0.0, upper).value - 1.0)


def angular_norm_error(p: PhysParams, q: QuantumNumbers) -> float:
    st = angular.AngularState.build(p, q)
    val = quadrature(
        lambda t: 2.0 * math.pi * np.sin(t) * angular.z_theta(st, t) ** 2, 0.0, math.pi
    ).value
    return abs(val - 1.0)


def radial_overlap(p: PhysParams, q1: QuantumNumbers, q2: QuantumNumbers) -> float:
    """Overlap of two radial functions in the same (j, m) channel."""
    g = p.geometry
    R0 = p.r_curv
    if g is Geometry.FLAT:
        a = flat.FlatBoundState.build(p, q1)
        b = flat.FlatBoundState.build(p, q2)
        upper = (80.0 + 8.0 * max(a.notation.n_eff, b.notation.n_eff)) / (2.0 * min(a.kappa, b.kappa))
        f = lambda r: r**2 * flat.radial_eval(a, r) * flat.radial_eval(b, r)  # noqa: E731
    elif g is Geometry.SPHERE:
        a = sphere.SphereBoundState.build(p, q1)
        b = sphere.SphereBoundState.build(p, q2)
        upper = math.pi
        f = lambda x: (  # noqa: E731
            R0**3 * np.sin(x) ** 2 * sphere.quasi_radial_eval(a, x) * sphere.quasi_radial_eval(b, x)
        )
    else:
        a = hyperboloid.HyperBoundState.build(p, q1)
        b = hyperboloid.HyperBoundState.build(p, q2)
        upper = max(hyperboloid.quadrature_cutoff(a), hyperboloid.quadrature_cutoff(b))
        f = lambda x: (  # noqa: E731
            R0**3 * np.sinh(x) ** 2
            * hyperboloid.quasi_radial_eval(a, x)
            * hyperboloid.quasi_radial_eval(b, x)
        )
    return abs(quadrature(f, 0.0, upper).value)


# ---------------------------------------------------------------------------
# ODE residuals


def _d6(f: np.ndarray, h: float):
    """6th-order central first and second derivatives at interior points."""
    d1 = (-f[:-6] + 9.0 * f[1:-5] - 45.0 * f[2:-4] + 45.0 * f[4:-2] - 9.0 * f[5:-1] + f[6:]) / (
        60.0 * h
    )
    d2 = (
        2.0 * f[:-6] - 27.0 * f[1:-5] + 270.0 * f[2:-4] - 490.0 * f[3:-3]
        + 270.0 * f[4:-2] - 27.0 * f[5:-1] + 2.0 * f[6:]
    ) / (180.0 * h * h)
    return d1, d2


def ode_residual(p: PhysParams, q: QuantumNumbers, n_points: int = 4001) -> float:
    """Relative L2 residual of the quasi-radial equation for the analytic R.

    The equation is H R = E R with
    H = -K (R'' + 2 (f'/f) R' - j~(j~+1) R / f^2) + V, K = hbar^2/(2 mu L^2),
    f = r, sin(chi), sinh(tau). Flat space and the hyperboloid use a uniform
    grid in u = ln x (the chain rule is applied exactly); the sphere uses a
    uniform chi grid on [0.02, pi - 0.02]. The residual is normalized by the
    larger of the L2 norms of E R and V R on the same grid, so that levels
    with E close to zero do not inflate it.
    """
    g = p.geometry
    nt = derive_notation(p, q)
    jt = nt.j_tilde
    if g is Geometry.SPHERE:
        st = sphere.SphereBoundState.build(p, q)
        x = np.linspace(0.02, math.pi - 0.02, n_points)
        h = x[1] - x[0]
        R = sphere.quasi_radial_eval(st, x)
        d1, d2 = _d6(R, h)
        xc, Rc = x[3:-3], R[3:-3]
        K = p.hbar**2 / (2.0 * p.mu * p.r_curv**2)
        log_deriv = 1.0 / np.tan(xc)
        f2 = np.sin(xc) ** 2
        energy = st.energy
    else:
        if g is Geometry.FLAT:
            st = flat.FlatBoundState.build(p, q)
            lo, hi = 0.05 / st.kappa, 40.0 / st.kappa
            evaluate = lambda x: flat.radial_eval(st, x)  # noqa: E731
            K = p.hbar**2 / (2.0 * p.mu)
        else:
            st = hyperboloid.HyperBoundState.build(p, q)
            lo = 0.05 / st.sigma
            hi = min(hyperboloid.quadrature_cutoff(st, 1e-12), 40.0)
            evaluate = lambda x: hyperboloid.quasi_radial_eval(st, x)  # noqa: E731
            K = p.hbar**2 / (2.0 * p.mu * p.r_curv**2)
        u = np.linspace(math.log(lo), math.log(hi), n_points)
        h = u[1] - u[0]
        x = np.exp(u)
        R = evaluate(x)
        du1, du2 = _d6(R, h)
        xc, Rc = x[3:-3], R[3:-3]
        d1 = du1 / xc
        d2 = (du2 - du1) / xc**2
        if g is Geometry.FLAT:
            log_deriv = 1.0 / xc
            f2 = xc**2
        else:
            log_deriv = 1.0 / np.tanh(xc)
            f2 = np.sinh(xc) ** 2
        energy = st.energy
    potential = coulomb_hyperspherical(p, xc)
    lhs = -K * (d2 + 2.0 * log_deriv * d1 - jt * (jt + 1.0) * Rc / f2) + potential * Rc
    res = lhs - energy * Rc
    scale = max(np.linalg.norm(energy * Rc), np.linalg.norm(potential * Rc))
    return float(np.linalg.norm(res) / scale)


# ---------------------------------------------------------------------------
# suites


def _state_label(p: PhysParams, q: QuantumNumbers) -> str:
    extra = f" R0={p.r_curv:g}" if p.geometry.curved else ""
    return (
        f"{p.geometry.value} s={p.s} l1={p.lambda1:g} l2={p.lambda2:g}{extra} "
        f"(n,j,m)=({q.n},{q.j},{q.m})"
    )


def suite_normalization(geometries=None, count: int = 50, seed: int = 2024):
    out = []
    for g in geometries or list(Geometry):
        for p, q in random_states(g, count, seed):
            label = _state_label(p, q)
            out.append(_check("normalization", f"radial {label}", radial_norm_error(p, q), NORM_TOL))
            if g is Geometry.FLAT:
                out.append(
                    _check("normalization", f"angular {label}", angular_norm_error(p, q), NORM_TOL)
                )
    return out


def suite_orthogonality(geometries=None, count: int = 20, seed: int = 11):
    out = []
    for g in geometries or list(Geometry):
        for p, q in random_states(g, count, seed, n_max=5):
            q2 = QuantumNumbers(q.n + 1, q.j, q.m)
            if g is Geometry.HYPERBOLOID:
                n_eff = derive_notation(p, q2).n_eff
                p = p.replace(r_curv=max(p.r_curv, 2.0 * n_eff**2))
            out.append(
                _check("orthogonality", f"<{q.n}|{q2.n}> {_state_label(p, q)}",
                       radial_overlap(p, q, q2), NORM_TOL)
            )
    return out


def suite_ode_residual(geometries=None, count: int = 50, seed: int = 2024):
    out = []
    for g in geometries or list(Geometry):
        for p, q in random_states(g, count, seed):
            out.append(_check("ode-residual", _state_label(p, q), ode_residual(p, q), ODE_TOL))
    return out


def oracle_channels():
    """The six channels (s, lambda) used for the oracle spectrum comparison."""
    return [(HalfInt(twice), lam) for twice in (0, 1, 2) for lam in (0.0, 0.75)]


def suite_oracle(geometries=None, levels: int = 5, grids=(4000, 8000)):
    radii = {Geometry.SPHERE: 5.0, Geometry.HYPERBOLOID: 60.0, Geometry.FLAT: 1.0}
    energy_fn: dict = {
        Geometry.SPHERE: sphere.sphere_energy,
        Geometry.HYPERBOLOID: hyperboloid.hyper_energy,
        Geometry.FLAT: flat.flat_energy,
    }
    out = []
    for g in geometries or (Geometry.SPHERE, Geometry.HYPERBOLOID):
        for s, lam in oracle_channels():
            p = PhysParams(s=s, lambda1=lam, lambda2=lam, geometry=g, r_curv=radii[g])
            m = s
            j = s  # m_+ for m = s >= 0
            jt = derive_notation(p, QuantumNumbers(j + 1, j, m)).j_tilde
            res = solve_quasi_radial(p, jt, levels, grids)
            exact = np.array([energy_fn[g](p, QuantumNumbers(j + 1 + k, j, m)) for k in range(levels)])
            got = res.eigenvalues
            err = float(np.max(np.abs(got - exact[: len(got)]))) if len(got) == levels else math.inf
            out.append(
                _check("oracle", f"{g.value} s={s} lambda={lam:g} j~={jt:.6f} ({levels} levels)",
                       err, ORACLE_TOL)
            )
    return out


def count_comparison(ratios=(0.5, 4.41, 10.0, 100.0)):
    """Rows (ratio, s, lambda, j, oracle, normalizable, bracket) for the
    hyperboloid bound-state count study (e2 = mu = hbar = 1, so R0/r0 = R0)."""
    rows = []
    for ratio in ratios:
        for s, lam in oracle_channels():
            for dj in range(3):
                p = PhysParams(s=s, lambda1=lam, lambda2=lam, geometry=Geometry.HYPERBOLOID,
                               r_curv=ratio)
                m = s
                j = s + dj
                jt = derive_notation(p, QuantumNumbers(j + 1, j, m)).j_tilde
                bc = hyperboloid.bound_state_count(p, m, j)
                rows.append((ratio, s, lam, j, count_bound_states(p, jt), bc.normalizable, bc.bracket))
    return rows


def suite_limits():
    out = []
    p = PhysParams()
    q = QuantumNumbers.of(2, 0, 0)
    e_flat = flat.flat_energy(p, q)
    for R in (10.0, 20.0, 40.0, 80.0):
        d = sphere.sphere_energy(p.replace(geometry=Geometry.SPHERE, r_curv=R), q) - e_flat
        out.append(_check("limits", f"sphere hydrogen n=2 R0={R:g}: diff vs 1.5/R0^2",
                          abs(d / (1.5 / R**2) - 1.0), 1e-10))
    for s, lam1, lam2, qn in (
        ("1/2", 0.75, 0.3, ("3/2", "1/2", "1/2")),
        ("1", 0.4, 1.1, (2, 1, 0)),
        ("0", 0.75, 0.75, (1, 0, 0)),
    ):
        pg = PhysParams(s=s, lambda1=lam1, lambda2=lam2)
        qg = QuantumNumbers.of(*qn)
        for g in (Geometry.SPHERE, Geometry.HYPERBOLOID):
            rep = limit_study(pg, qg, g)
            worst = max(abs(r - rep.target_ratio) for r in rep.ratios)
            out.append(_check("limits", f"{g.value} s={s} ratio under R0 doubling", worst, rep.ratio_tol))
    return out


def _ulps(a: float, b: float) -> float:
    return abs(a - b) / np.spacing(max(abs(a), abs(b)))


def suite_reductions(n_max: int = 8, radii=(0.7, 1.0, 5.0, 80.0)):
    out = []
    p0 = PhysParams()
    for n in range(1, n_max + 1):
        q = QuantumNumbers.of(n, 0, 0)
        exact = -p0.mu * p0.e2**2 / (2.0 * p0.hbar**2 * n**2)
        out.append(_check("reductions", f"flat n={n}", _ulps(flat.flat_energy(p0, q), exact),
                          REDUCTION_ULP))
        for R in radii:
            ps = p0.replace(geometry=Geometry.SPHERE, r_curv=R)
            exact = p0.hbar**2 * (n * n - 1) / (2.0 * p0.mu * R * R) - p0.mu * p0.e2**2 / (
                2.0 * p0.hbar**2 * n * n
            )
            out.append(_check("reductions", f"sphere n={n} R0={R:g}",
                              _ulps(sphere.sphere_energy(ps, q), exact), REDUCTION_ULP))
            if n * n < R / p0.bohr_radius:
                ph = p0.replace(geometry=Geometry.HYPERBOLOID, r_curv=R)
                exact = (
                    -p0.hbar**2 * (n * n - 1) / (2.0 * p0.mu * R * R)
                    - p0.mu * p0.e2**2 / (2.0 * p0.hbar**2 * n * n)
                    + p0.e2 / R
                )
                out.append(_check("reductions", f"hyperboloid n={n} R0={R:g}",
                                  _ulps(hyperboloid.hyper_energy(ph, q), exact), REDUCTION_ULP))
    return out


def _rel(lhs, rhs) -> float:
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def identity_instances(count: int = 100, seed: int = 17):
    """Randomized terminating instances: (N, a, a', b, b') with complex entries
    (as they occur with the imaginary Coulomb parameter) and non-integer z."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(0, 9))
        re = rng.uniform(0.2, 4.0, 4)
        im = rng.uniform(-3.0, 3.0, 4)
        z = float(rng.uniform(-6.0, 6.0))
        while abs(z - round(z)) < 1e-2:
            z = float(rng.uniform(-6.0, 6.0))
        out.append((n, *(complex(r, i) for r, i in zip(re, im)), z))
    return out


def suite_identities(count: int = 100, seed: int = 17):
    out = []
    worst = {"gamma-ratio-lower": 0.0, "3f2-transformation": 0.0, "gamma-ratio-upper": 0.0}
    for n, a, ap, b, bp, z in identity_instances(count, seed):
        worst["gamma-ratio-lower"] = max(worst["gamma-ratio-lower"], _rel(*gamma_ratio_lower(z, n)))
        worst["3f2-transformation"] = max(worst["3f2-transformation"],
                                          _rel(*bailey_3f2_sides(a, ap, n, b, bp)))
        worst["gamma-ratio-upper"] = max(worst["gamma-ratio-upper"], _rel(*gamma_ratio_upper(z, n)))
    for name, value in worst.items():
        out.append(_check("identities", f"{name} ({count} instances)", value, IDENTITY_TOL))
    return out


_SUITE_FUNCS: dict = {
    "normalization": suite_normalization,
    "orthogonality": suite_orthogonality,
    "ode-residual": suite_ode_residual,
    "oracle": suite_oracle,
    "limits": suite_limits,
    "reductions": suite_reductions,
    "identities": suite_identities,
}


def run_suite(name: str, geometry: Optional[Geometry] = None) -> list:
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn: Callable = _SUITE_FUNCS[name]
    if geometry is not None and name in ("normalization", "orthogonality", "ode-residual", "oracle"):
        return fn([Geometry(geometry)])
    return fn()
