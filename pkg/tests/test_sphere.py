import dataclasses
import math

import numpy as np
import pytest

from micz.flat import flat_energy
from micz.params import Geometry, PhysParams, QuantumNumbers
from micz.sphere import (
    NumericInstabilityError,
    RangeError,
    SphereBoundState,
    log_norm_constant,
    quasi_radial_complex,
    quasi_radial_eval,
    sphere_energy,
    sphere_norm_constant,
)
from micz.verification import ode_residual, radial_norm_error, radial_overlap, random_states

# Normalized R(chi) for s=1/2, lambda1=0.75, lambda2=0.3, R0=3,
# (n, j, m) = (7/2, 3/2, 1/2) at chi = 0.3, 1.0, 2.5, from a 30-digit
# evaluation with the normalization fixed by high-precision quadrature.
GENERALIZED = [0.049915732092420827, 0.20867210253820323, -0.075633312927404515]


def sphere_params(**kw):
    kw.setdefault("r_curv", 1.0)
    return PhysParams(geometry=Geometry.SPHERE, **kw)


@pytest.mark.parametrize("n, expected", [(1, -0.5), (2, 1.375)])
def test_energy_examples(n, expected):
    assert sphere_energy(sphere_params(), QuantumNumbers.of(n, 0, 0)) == expected


def test_energy_depends_on_n_and_m_only():
    p = sphere_params(s="1/2", lambda1=0.4, lambda2=0.2, r_curv=4.0)
    e = {sphere_energy(p, QuantumNumbers.of("9/2", j, "1/2")) for j in ("1/2", "3/2", "5/2", "7/2")}
    assert len(e) == 1


def test_infinite_discrete_spectrum():
    p = sphere_params(r_curv=0.3)
    energies = [sphere_energy(p, QuantumNumbers.of(n, 0, 0)) for n in range(1, 40)]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_ground_state_closed_form():
    p = sphere_params(r_curv=2.0)
    st = SphereBoundState.build(p, QuantumNumbers.of(1, 0, 0))
    sig = st.sigma
    c = math.sqrt(4 * sig * (1 + sig**2) / ((1 - math.exp(-2 * math.pi * sig)) * p.r_curv**3))
    assert sphere_norm_constant(st) == pytest.approx(c, rel=1e-13)
    assert quasi_radial_eval(st, 1.0) == pytest.approx(c * math.exp(-sig), rel=1e-13)


def test_generalized_values():
    p = sphere_params(s="1/2", lambda1=0.75, lambda2=0.3, r_curv=3.0)
    st = SphereBoundState.build(p, QuantumNumbers.of("7/2", "3/2", "1/2"))
    np.testing.assert_allclose(quasi_radial_eval(st, [0.3, 1.0, 2.5]), GENERALIZED, rtol=1e-12)


@pytest.mark.parametrize("p, q", random_states("sphere", 15, seed=21))
def test_normalization(p, q):
    assert radial_norm_error(p, q) < 1e-8


@pytest.mark.parametrize("p, q", random_states("sphere", 8, seed=22, n_max=5))
def test_orthogonality(p, q):
    assert radial_overlap(p, q, QuantumNumbers(q.n + 1, q.j, q.m)) < 1e-7


@pytest.mark.parametrize("p, q", random_states("sphere", 10, seed=23))
def test_ode_residual(p, q):
    assert ode_residual(p, q) < 1e-6


@pytest.mark.parametrize("p, q", random_states("sphere", 10, seed=24))
def test_sign_changes(p, q):
    st = SphereBoundState.build(p, q)
    chi = np.linspace(1e-3, math.pi - 1e-3, 20001)
    vals = quasi_radial_eval(st, chi)
    vals = vals[np.abs(vals) > 1e-12 * np.max(np.abs(vals))]
    assert np.count_nonzero(np.diff(np.sign(vals))) == q.radial_degree


@pytest.mark.parametrize("p, q", random_states("sphere", 10, seed=25))
def test_representations_agree(p, q):
    st = SphereBoundState.build(p, q)
    chi = np.linspace(0.1, math.pi - 0.1, 400)
    a, _ = quasi_radial_complex(st, chi, "standard")
    b, _ = quasi_radial_complex(st, chi, "transformed")
    scale = np.max(np.abs(a))
    assert np.max(np.abs(a - b)) < 1e-9 * scale


def test_reality_violation_raises():
    # R is real because c = 2j~ + 2 equals b + conj(b); shifting j~ alone
    # breaks that and must be caught rather than silently dropped
    st = SphereBoundState.build(sphere_params(r_curv=2.0), QuantumNumbers.of(3, 1, 0))
    shifted = dataclasses.replace(st.notation, j_tilde=st.notation.j_tilde + 0.3)
    broken = dataclasses.replace(st, notation=shifted)
    with pytest.raises(NumericInstabilityError) as info:
        quasi_radial_eval(broken, np.linspace(0.2, 3.0, 50))
    assert info.value.condition is not None


def test_unknown_representation():
    st = SphereBoundState.build(sphere_params(), QuantumNumbers.of(1, 0, 0))
    with pytest.raises(ValueError):
        quasi_radial_complex(st, 1.0, "other")


def test_norm_constant_range_error():
    # a Bohr radius of 1e-100 R0 gives sigma ~ 1e99 and ln C ~ 1480
    st = SphereBoundState.build(sphere_params(mu=1e100), QuantumNumbers.of(7, 5, 0))
    assert log_norm_constant(st) == pytest.approx(1479.709121888, rel=1e-9)
    with pytest.raises(RangeError):
        sphere_norm_constant(st)


def test_norm_constant_large_sigma_matches_closed_form():
    # ground state: C^2 = 4 sigma (1 + sigma^2) / ((1 - e^{-2 pi sigma}) R0^3)
    st = SphereBoundState.build(sphere_params(r_curv=800.0), QuantumNumbers.of(1, 0, 0))
    sig = st.sigma
    assert sphere_norm_constant(st) == pytest.approx(
        math.sqrt(4 * sig * (1 + sig**2) / 800.0**3), rel=1e-12
    )


def test_flat_limit_hydrogen_n2():
    q = QuantumNumbers.of(2, 0, 0)
    e_flat = flat_energy(PhysParams(), q)
    for R in (10.0, 20.0, 40.0, 80.0):
        diff = sphere_energy(sphere_params(r_curv=R), q) - e_flat
        assert diff == pytest.approx(1.5 / R**2, rel=1e-10)
