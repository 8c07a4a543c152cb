"""Finite-difference Sturm-Liouville eigen-solver for the separated equations.

Works only from the geometry's measure and Coulomb potential plus the
separation constant j~(j~+1); it never evaluates an analytic spectrum.

The quasi-radial equation

    (1/f^2)(f^2 R')' - j~(j~+1)/f^2 R + (2 mu L^2/hbar^2)(E - V) R = 0

(f = sin, sinh or x; L = R0 or 1) is rewritten with the endpoint ansatz
R = f^j~ v. Then v is regular and satisfies

    -K (1/w)(w v')' + [V + K eps j~(j~+2)] v = E v,   w = f^(2j~+2),

with K = hbar^2/(2 mu L^2) and eps the curvature sign. The constant comes
from f'^2 - 1 = -eps f^2 and f'' = -eps f. A cell-centred second-order
discretization with the weight folded in symmetrically gives a symmetric
tridiagonal matrix, solved by Sturm-sequence bisection. Two grids (h, h/2)
are combined by Richardson extrapolation.

Continuum threshold on the hyperboloid: for tau -> inf, V -> 0 and
f ~ e^tau/2, so v ~ e^{(-(j~+1) + ik) tau} and
E = K[(j~+1)^2 + k^2] - K j~(j~+2) >= K. Hence E_cont = hbar^2/(2 mu R0^2)
(and 0 in flat space, where ln f grows sublinearly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .. import _backend
from ..geometry import coulomb_hyperspherical, length_scale, log_measure_root, radial_domain
from ..params import Geometry, HalfInt, PhysParams


@dataclass(frozen=True)
class SturmLiouvilleProblem:
    """-kinetic (1/w)(p v')' + U v = lambda v on (0, upper).

    ``log_coefficient`` and ``log_weight`` return ln p and ln w; both may
    vanish at the ends (natural boundary). ``right_bc`` is ``"natural"`` or
    ``"dirichlet"``. ``map_scale`` selects x = a (e^xi - 1) with a uniform xi
    grid; ``None`` means a uniform grid in x.
    """

    log_coefficient: Callable
    log_weight: Callable
    potential: Callable
    kinetic: float
    upper: float
    exponents: tuple
    right_bc: str = "natural"
    map_scale: Optional[float] = None
    threshold: float = math.inf
    channel: Optional[dict] = None


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # Richardson-extrapolated
    errors: np.ndarray  # |extrapolated - finest|
    raw: tuple  # eigenvalues per grid
    grid_sizes: tuple
    threshold: float
    box: float
    truncated: bool  # fewer than requested levels lie below threshold
    order: Optional[np.ndarray] = None  # observed convergence order (3+ grids)


def _grid(problem: SturmLiouvilleProblem, n: int):
    a = problem.map_scale
    if a is None:
        h = problem.upper / n
        xi_f = np.arange(n + 1) * h
        xi_c = xi_f[:-1] + 0.5 * h
        return h, xi_f, xi_c, np.ones(n + 1), np.ones(n)
    xi_max = math.log1p(problem.upper / a)
    h = xi_max / n
    xi_f = np.arange(n + 1) * h
    xi_c = xi_f[:-1] + 0.5 * h
    return h, a * np.expm1(xi_f), a * np.expm1(xi_c), a * np.exp(xi_f), a * np.exp(xi_c)


def tridiagonal(problem: SturmLiouvilleProblem, n: int):
    """Symmetric tridiagonal (diag, offdiag) on an n-cell grid."""
    h, xf, xc, dxf, dxc = _grid(problem, n)
    with np.errstate(divide="ignore"):
        lp = problem.log_coefficient(xf) - np.log(dxf)
    lp[0] = -np.inf
    if problem.right_bc == "natural":
        lp[-1] = -np.inf
    lw = problem.log_weight(xc) + np.log(dxc)
    k = problem.kinetic / h**2
    right = np.exp(lp[1:] - lw)
    if problem.right_bc == "dirichlet":
        right[-1] *= 2.0  # ghost value -v at the outer face
    diag = k * (np.exp(lp[:-1] - lw) + right) + problem.potential(xc)
    off = -k * np.exp(lp[1:-1] - 0.5 * (lw[:-1] + lw[1:]))
    return diag, off


def _lowest(diag, off, k, threshold):
    """Lowest k eigenvalues below threshold by bisection; may return fewer."""
    rad = np.zeros_like(diag)
    rad[:-1] += np.abs(off)
    rad[1:] += np.abs(off)
    lo = float(np.min(diag - rad))
    hi = float(np.max(diag + rad))
    avail = k
    if math.isfinite(threshold):
        avail = min(k, _backend.sturm_count(diag, off, threshold))
        hi = min(hi, threshold)
    if avail == 0:
        return np.empty(0)
    span = max(abs(lo), abs(hi))
    return np.asarray(
        _backend.bisect_eigenvalues(diag, off, 0, avail - 1, lo, hi, 1e-15 * span)
    )


def eigenvalues(problem: SturmLiouvilleProblem, n: int, k: int) -> np.ndarray:
    diag, off = tridiagonal(problem, n)
    return _lowest(diag, off, k, problem.threshold)


def count_below(problem: SturmLiouvilleProblem, n: int, energy: float) -> int:
    diag, off = tridiagonal(problem, n)
    return int(_backend.sturm_count(diag, off, energy))


def richardson(problem: SturmLiouvilleProblem, k: int, grids=(4000, 8000)) -> EigenResult:
    """Eigenvalues on successively doubled grids, extrapolated for O(h^2)."""
    grids = tuple(int(g) for g in grids)
    if len(grids) < 2 or any(b != 2 * a for a, b in zip(grids, grids[1:])):
        raise ValueError("grids must be a doubling sequence of length >= 2")
    raw = [eigenvalues(problem, g, k) for g in grids]
    m = min(len(r) for r in raw)
    raw = [r[:m] for r in raw]
    ext = [(4.0 * f - c) / 3.0 for c, f in zip(raw, raw[1:])]
    best = ext[-1]
    err = np.abs(best - raw[-1])
    order = None
    if len(raw) >= 3:
        with np.errstate(divide="ignore", invalid="ignore"):
            order = np.log2(np.abs(raw[-3] - raw[-2]) / np.abs(raw[-2] - raw[-1]))
    return EigenResult(
        eigenvalues=best,
        errors=err,
        raw=tuple(raw),
        grid_sizes=grids,
        threshold=problem.threshold,
        box=problem.upper,
        truncated=m < k,
        order=order,
    )


def quasi_radial_problem(p: PhysParams, j_tilde: float, box: Optional[float] = None):
    """Assemble the v-form problem for the channel with separation constant j~."""
    geom = p.geometry
    L = length_scale(p)
    kinetic = p.hbar**2 / (2.0 * p.mu * L**2)
    power = 2.0 * j_tilde + 2.0
    shift = kinetic * geom.epsilon * j_tilde * (j_tilde + 2.0)

    def log_w(x):
        return power * log_measure_root(p, x)

    def potential(x):
        return coulomb_hyperspherical(p, x) + shift

    channel = {"geometry": geom.value, "j_tilde": j_tilde}
    if geom is Geometry.SPHERE:
        return SturmLiouvilleProblem(
            log_w, log_w, potential, kinetic, radial_domain(p)[1],
            exponents=(j_tilde, j_tilde), right_bc="natural", channel=channel,
        )
    if p.e2 <= 0:
        raise ValueError("no bound states without Coulomb attraction")
    r0 = p.bohr_radius / L
    scale = 0.5 * min(r0, 1.0)
    if geom is Geometry.HYPERBOLOID:
        threshold = kinetic
        upper = box if box is not None else 8.0
    else:
        threshold = 0.0
        upper = box if box is not None else 60.0 * r0
    return SturmLiouvilleProblem(
        log_w, log_w, potential, kinetic, upper,
        exponents=(j_tilde, None), right_bc="dirichlet", map_scale=scale,
        threshold=threshold, channel=channel,
    )


def _with_box(problem: SturmLiouvilleProblem, upper: float) -> SturmLiouvilleProblem:
    from dataclasses import replace

    return replace(problem, upper=upper)


def _cells_at_fixed_step(problem: SturmLiouvilleProblem, reference: SturmLiouvilleProblem,
                         n: int) -> int:
    """Cell count giving ``problem`` the same grid step as ``reference`` with n cells."""
    if problem.map_scale is None:
        return max(n, int(round(n * problem.upper / reference.upper)))
    ratio = math.log1p(problem.upper / problem.map_scale) / math.log1p(
        reference.upper / reference.map_scale
    )
    return max(n, int(round(n * ratio)))


def adapt_box(problem: SturmLiouvilleProblem, k: int, n: int, tol: float = 1e-9,
              max_doublings: int = 12) -> SturmLiouvilleProblem:
    """Double the truncation box until the lowest k levels below threshold move
    by less than ``tol`` and their number is unchanged.

    The grid step is held fixed while the box grows, so only the truncation
    error is measured.
    """
    if problem.right_bc != "dirichlet":
        return problem
    base = problem
    prev = eigenvalues(problem, n, k)
    for _ in range(max_doublings):
        bigger = _with_box(problem, 2.0 * problem.upper)
        cur = eigenvalues(bigger, _cells_at_fixed_step(bigger, base, n), k)
        if len(cur) == len(prev) and (len(cur) == 0 or np.max(np.abs(cur - prev)) < tol):
            return problem
        problem, prev = bigger, cur
    return problem


def solve_quasi_radial(p: PhysParams, j_tilde: float, k: int, grids=(4000, 8000),
                       box: Optional[float] = None) -> EigenResult:
    """Lowest k discrete energies of the channel j~ (fewer, flagged, if the
    hyperboloid channel holds fewer bound states)."""
    problem = quasi_radial_problem(p, j_tilde, box)
    if box is None:
        problem = adapt_box(problem, k, grids[0])
    return richardson(problem, k, grids)


def count_bound_states(p: PhysParams, j_tilde: float, n: int = 8000,
                       max_doublings: int = 12) -> int:
    """Number of discrete levels below the continuum threshold in channel j~.

    The box is doubled until the count is stable over two successive
    doublings.
    """
    problem = quasi_radial_problem(p, j_tilde)
    if not math.isfinite(problem.threshold):
        raise ValueError("the sphere spectrum is purely discrete")
    counts = [count_below(problem, n, problem.threshold)]
    for _ in range(max_doublings):
        problem = _with_box(problem, 2.0 * problem.upper)
        counts.append(count_below(problem, n, problem.threshold))
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            break
    return counts[-1]


def angular_problem(p: PhysParams, m) -> SturmLiouvilleProblem:
    """Theta equation of M^(s) at azimuthal mode m - s.

    With Z = sin(theta/2)^a cos(theta/2)^b v, a = sqrt((m+s)^2 + 4 mu lambda2/hbar^2)
    and b = sqrt((m-s)^2 + 4 mu lambda1/hbar^2), v solves
    -(1/W)(W v')' = nu v with W = sin(theta) sin^2a(theta/2) cos^2b(theta/2);
    the M eigenvalue is nu + c(c+1), c = (a+b)/2.
    """
    m = float(HalfInt.of(m))
    s = float(p.s)
    a = math.sqrt((m + s) ** 2 + p.g2)
    b = math.sqrt((m - s) ** 2 + p.g1)
    c = 0.5 * (a + b)

    def log_w(t):
        t = np.asarray(t, dtype=float)
        return np.log(np.sin(t)) + 2.0 * a * np.log(np.sin(0.5 * t)) + 2.0 * b * np.log(np.cos(0.5 * t))

    def potential(t):
        return np.full(np.shape(t), c * (c + 1.0))

    return SturmLiouvilleProblem(
        log_w, log_w, potential, 1.0, math.pi, exponents=(a, b),
        right_bc="natural", channel={"m": m, "s": s},
    )


def solve_angular(p: PhysParams, m, k: int, grids=(2000, 4000)) -> EigenResult:
    """Lowest k eigenvalues of M^(s) in the azimuthal sector m."""
    return richardson(angular_problem(p, m), k, grids)
