import math

import numpy as np
import pytest

from micz.hyperboloid import (
    HyperBoundState,
    bound_state_count,
    continuum_threshold,
    decay_exponent,
    hyper_energy,
    hyper_norm_constant,
    quasi_radial_eval,
)
from micz.params import Geometry, NoBoundStateError, PhysParams, QuantumNumbers
from micz.verification import ode_residual, radial_norm_error, radial_overlap, random_states

# Normalized R(tau) for s=1/2, lambda1=0.75, lambda2=0.3, R0=60,
# (n, j, m) = (7/2, 3/2, 1/2) at tau = 0.05, 0.2, 0.6, from a 30-digit
# evaluation normalized by high-precision quadrature.
GENERALIZED = [0.0059621087849381973, 0.011410915292773206, -0.004763357518523953]


def hyper(**kw):
    kw.setdefault("r_curv", 10.0)
    return PhysParams(geometry=Geometry.HYPERBOLOID, **kw)


@pytest.mark.parametrize("n, expected", [(1, -0.4), (2, -0.04)])
def test_energy_examples(n, expected):
    assert hyper_energy(hyper(), QuantumNumbers.of(n, 0, 0)) == pytest.approx(expected, rel=1e-14)


def test_unbound_level_raises():
    with pytest.raises(NoBoundStateError, match="R0/r0"):
        hyper_energy(hyper(), QuantumNumbers.of(4, 0, 0))


def test_bound_levels_lie_below_threshold():
    p = hyper(s=1, lambda1=0.3, r_curv=50.0)
    for n in range(2, 8):
        q = QuantumNumbers.of(n, 1, 1)
        try:
            assert hyper_energy(p, q) < continuum_threshold(p)
        except NoBoundStateError:
            pass


@pytest.mark.parametrize("ratio, expected", [(0.5, 0), (4.0001, 2), (10.0, 3), (100.0, 9)])
def test_bound_state_count_hydrogen(ratio, expected):
    count = bound_state_count(hyper(r_curv=ratio), 0, 0)
    assert count.normalizable == expected


def test_bracket_count_disagrees_for_marginal_level():
    count = bound_state_count(hyper(r_curv=10.0), 0, 0)
    assert (count.normalizable, count.bracket) == (3, 2)
    assert not count.agree


def test_ground_state_closed_form():
    p = hyper(r_curv=20.0)
    st = HyperBoundState.build(p, QuantumNumbers.of(1, 0, 0))
    sig = st.sigma
    a = 2 * math.sqrt(sig * (sig**2 - 1) / p.r_curv**3)
    assert hyper_norm_constant(st) == pytest.approx(a, rel=1e-13)
    assert quasi_radial_eval(st, 0.7) == pytest.approx(a * math.exp(-0.7 * sig), rel=1e-13)


def test_generalized_values():
    p = hyper(s="1/2", lambda1=0.75, lambda2=0.3, r_curv=60.0)
    st = HyperBoundState.build(p, QuantumNumbers.of("7/2", "3/2", "1/2"))
    np.testing.assert_allclose(quasi_radial_eval(st, [0.05, 0.2, 0.6]), GENERALIZED, rtol=1e-12)


@pytest.mark.parametrize("p, q", random_states("hyperboloid", 15, seed=31))
def test_normalization(p, q):
    assert radial_norm_error(p, q) < 1e-8


@pytest.mark.parametrize("p, q", random_states("hyperboloid", 8, seed=32, n_max=5))
def test_orthogonality(p, q):
    q2 = QuantumNumbers(q.n + 1, q.j, q.m)
    p = p.replace(r_curv=4 * (float(q2.n) + 3) ** 2)
    assert radial_overlap(p, q, q2) < 1e-7


@pytest.mark.parametrize("p, q", random_states("hyperboloid", 10, seed=33))
def test_ode_residual(p, q):
    assert ode_residual(p, q) < 1e-6


@pytest.mark.parametrize("p, q", random_states("hyperboloid", 6, seed=34))
def test_decay_rate(p, q):
    st = HyperBoundState.build(p, q)
    # corrections to the pure exponential are O(e^{-2 tau}) ~ 1e-7 here
    vals = quasi_radial_eval(st, [8.0, 9.0])
    slope = math.log(abs(vals[1] / vals[0]))
    assert slope == pytest.approx(decay_exponent(st), rel=1e-5)


def test_large_tau_is_finite():
    st = HyperBoundState.build(hyper(r_curv=100.0), QuantumNumbers.of(3, 1, 0))
    vals = quasi_radial_eval(st, np.array([50.0, 400.0, 800.0]))
    assert np.all(np.isfinite(vals)) and abs(vals[-1]) < 1e-300


def test_flat_limit_after_offset():
    from micz.flat import flat_energy

    p = PhysParams(s="1/2", lambda1=0.75, lambda2=0.3)
    q = QuantumNumbers.of("3/2", "1/2", "1/2")
    diffs = [hyper_energy(p.replace(geometry=Geometry.HYPERBOLOID, r_curv=R), q) - 1 / R
             - flat_energy(p, q) for R in (10.0, 20.0, 40.0, 80.0)]
    ratios = [a / b for a, b in zip(diffs, diffs[1:])]
    assert all(abs(r - 4) < 0.2 for r in ratios)
