"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 1000,4000,8000] [--repeat 3]

Workloads mirror how the eigen-oracle uses the kernels: Sturm bisection for
the five lowest eigenvalues of a sphere quasi-radial matrix, and evaluation
of a degree-20 terminating series on 10^4 complex points.
"""

import argparse
import timeit

import numpy as np

from micz import _kernels_py
from micz.oracle import eigen
from micz.params import Geometry, PhysParams

try:
    from micz import _kernels as compiled
except ImportError:
    compiled = None


def bisection_case(n):
    problem = eigen.quasi_radial_problem(PhysParams(geometry=Geometry.SPHERE, r_curv=5.0), 0.5)
    d, e = eigen.tridiagonal(problem, n)
    lo, hi = float(d.min() - 2 * np.abs(e).max()), float(d.max() + 2 * np.abs(e).max())
    tol = 1e-15 * max(abs(lo), abs(hi))
    return lambda mod: mod.bisect_eigenvalues(d, e, 0, 4, lo, hi, tol)


def series_case(points=10_000, degree=20):
    rng = np.random.default_rng(0)
    ratios = (rng.normal(size=degree) + 1j * rng.normal(size=degree)) / 4
    z = np.exp(2j * np.linspace(0.01, 3.1, points))
    return lambda mod: mod.terminating_series(ratios, z)


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,4000,8000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels not built; only the fallback is timed")
    cases = [(f"bisect 5 levels, n={n}", bisection_case(int(n))) for n in args.sizes.split(",")]
    cases.append(("series degree 20, 1e4 points", series_case()))
    print(f"{'workload':<32}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, case in cases:
        t_py = best_time(lambda: case(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:<32}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        np.testing.assert_allclose(case(compiled), case(_kernels_py), rtol=1e-12)
        t_cy = best_time(lambda: case(compiled), args.repeat)
        print(f"{name:<32}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
