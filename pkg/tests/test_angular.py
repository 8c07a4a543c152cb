import math

import numpy as np
import pytest

from micz.angular import (
    AngularState,
    GridError,
    apply_j3,
    apply_m_operator,
    j3_eigenvalue,
    m_eigenvalue_extrapolated,
    m_residual,
    z_eval,
    z_theta,
)
from micz.params import HalfInt, PhysParams, QuantumNumbers, enumerate_states


def state(s, l1, l2, n, j, m):
    return AngularState.build(PhysParams(s=s, lambda1=l1, lambda2=l2), QuantumNumbers.of(n, j, m))


def test_y00():
    st = state(0, 0, 0, 1, 0, 0)
    assert z_eval(st, 0.3, 1.7) == pytest.approx(1 / math.sqrt(4 * math.pi), rel=1e-15)


def test_phase_convention():
    st = state("1/2", 0.2, 0.6, "7/2", "3/2", "-1/2")
    theta, phi, shift = 1.1, 0.4, 0.9
    ratio = z_eval(st, theta, phi + shift) / z_eval(st, theta, phi)
    assert ratio == pytest.approx(np.exp(1j * (st.q.m - st.params.s).twice / 2 * shift))


def test_m_operator_on_y10():
    p = PhysParams()
    theta = np.linspace(0.01, math.pi - 0.01, 801)
    y10 = math.sqrt(3 / (4 * math.pi)) * np.cos(theta)
    t, my = apply_m_operator(p, theta, y10, 0)
    np.testing.assert_allclose(my, 2 * math.sqrt(3 / (4 * math.pi)) * np.cos(t), atol=1e-8)


def test_m_operator_grid_errors():
    p = PhysParams()
    with pytest.raises(GridError):
        apply_m_operator(p, np.linspace(0.1, 1, 4), np.zeros(4), 0)
    with pytest.raises(GridError):
        apply_m_operator(p, np.linspace(0.0, 1, 10), np.zeros(10), 0)
    with pytest.raises(GridError):
        apply_m_operator(p, np.geomspace(0.1, 1, 10), np.zeros(10), 0)


def _matrix():
    for s in ("0", "1/2", "1", "3/2"):
        for l1, l2 in ((0.0, 0.0), (0.75, 0.3), (1.2, 0.75)):
            p = PhysParams(s=s, lambda1=l1, lambda2=l2)
            for q in enumerate_states(p, 5):
                if float(q.j) <= 4:
                    yield AngularState.build(p, q)


ANGULAR_STATES = list(_matrix())


def test_eigenvalue_from_stencil():
    worst = 0.0
    for st in ANGULAR_STATES[::7]:
        est, _ = m_eigenvalue_extrapolated(st)
        worst = max(worst, abs(est - st.eigenvalue) / max(st.eigenvalue, 1.0))
    assert worst < 1e-6


def test_pointwise_residual_on_2000_points():
    st = state("1/2", 0.75, 0.3, "7/2", "3/2", "1/2")
    assert m_residual(st, 2000) < 1e-4


def test_j3_gives_m():
    for st in ANGULAR_STATES[::11]:
        assert j3_eigenvalue(st) == pytest.approx(float(st.q.m), abs=1e-12)


def test_j3_spectral_derivative_on_mixture():
    p = PhysParams(s="1/2")
    phi = 2 * math.pi * np.arange(32) / 32
    f = np.exp(2j * phi) + 0.5 * np.exp(-3j * phi)
    np.testing.assert_allclose(apply_j3(p, phi, f),
                               2.5 * np.exp(2j * phi) - 1.25 * np.exp(-3j * phi), atol=1e-13)


def test_orthonormality_gauss_legendre():
    p = PhysParams(s="1/2", lambda1=0.4, lambda2=0.9)
    m = "1/2"
    states = [AngularState.build(p, QuantumNumbers.of(HalfInt(twice) + 1, HalfInt(twice), m))
              for twice in (1, 3, 5, 7, 9, 11)]
    # non-integer endpoint powers: integrate in theta adaptively is costlier,
    # so use many Gauss-Legendre nodes in u = cos(theta)
    u, w = np.polynomial.legendre.leggauss(4 * (6 + 20) * 8)
    theta = np.arccos(u)
    vals = np.array([z_theta(st, theta) for st in states])
    gram = 2 * math.pi * (vals * w) @ vals.T
    np.testing.assert_allclose(gram, np.eye(len(states)), atol=1e-8)


def test_endpoint_exponents():
    st = state(1, 0.6, 0.2, 4, 2, 0)
    nt = st.notation
    for t1, t2 in ((1e-4, 2e-4),):
        slope0 = math.log(abs(z_theta(st, t2) / z_theta(st, t1))) / math.log(t2 / t1)
        assert slope0 == pytest.approx(nt.m2, rel=1e-3)
        slopepi = math.log(abs(z_theta(st, math.pi - t2) / z_theta(st, math.pi - t1))) / math.log(2)
        assert slopepi == pytest.approx(nt.m1, rel=1e-3)
