"""Independent numerical checks: quadrature, finite-difference eigen-solver, limit studies."""

from .eigen import (
    EigenResult,
    SturmLiouvilleProblem,
    angular_problem,
    count_bound_states,
    quasi_radial_problem,
    richardson,
    solve_angular,
    solve_quasi_radial,
)
from .limits import LimitReport, LimitRow, limit_study, wavefunction_limit
from .quadrature import QuadResult, QuadratureError, quadrature

__all__ = [
    "EigenResult",
    "SturmLiouvilleProblem",
    "angular_problem",
    "count_bound_states",
    "quasi_radial_problem",
    "richardson",
    "solve_angular",
    "solve_quasi_radial",
    "LimitReport",
    "LimitRow",
    "limit_study",
    "wavefunction_limit",
    "QuadResult",
    "QuadratureError",
    "quadrature",
]
