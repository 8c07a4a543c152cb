import importlib
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import micz._backend as backend
from micz import _kernels_py

try:
    from micz import _kernels as compiled
except ImportError:  # extension not built in this environment
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="Cython kernels not built")


def _random_tridiagonal(rng, n):
    return rng.normal(size=n), rng.normal(size=n - 1)


@pytest.mark.parametrize("impl", [_kernels_py, compiled], ids=["python", "cython"])
def test_sturm_count_against_dense(impl):
    if impl is None:
        pytest.skip("Cython kernels not built")
    rng = np.random.default_rng(0)
    d, e = _random_tridiagonal(rng, 60)
    dense = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    for x in np.linspace(-4, 4, 41):
        assert impl.sturm_count(d, e, x) == np.count_nonzero(dense < x)
    vals = impl.bisect_eigenvalues(d, e, 0, 59, -10.0, 10.0, 1e-14)
    np.testing.assert_allclose(vals, dense, atol=1e-12)


@needs_compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 200), st.integers(0, 2**31))
def test_backends_agree_on_eigenvalues(n, seed):
    rng = np.random.default_rng(seed)
    d, e = _random_tridiagonal(rng, n)
    k = min(n, 5)
    a = _kernels_py.bisect_eigenvalues(d, e, 0, k - 1, -50.0, 50.0, 1e-13)
    b = compiled.bisect_eigenvalues(d, e, 0, k - 1, -50.0, 50.0, 1e-13)
    np.testing.assert_allclose(a, b, atol=1e-12)


@needs_compiled
def test_backends_agree_on_series():
    rng = np.random.default_rng(3)
    ratios = rng.normal(size=12) + 1j * rng.normal(size=12)
    z = rng.normal(size=50) + 1j * rng.normal(size=50)
    va, sa = _kernels_py.terminating_series(ratios, z)
    vb, sb = compiled.terminating_series(ratios, z)
    np.testing.assert_allclose(va, vb, rtol=1e-14)
    np.testing.assert_allclose(sa, sb, rtol=1e-14)


def test_series_kernel_definition():
    ratios = np.array([2.0, -0.5, 3.0], dtype=complex)
    z = np.array([0.5, -1.0], dtype=complex)
    vals, abssum = backend.terminating_series(ratios, z)
    for zi, v, s in zip(z, vals, abssum):
        terms = [1.0, 2.0 * zi, 2.0 * -0.5 * zi**2, 2.0 * -0.5 * 3.0 * zi**3]
        assert v == pytest.approx(sum(terms), rel=1e-15)
        assert s == pytest.approx(sum(abs(t) for t in terms), rel=1e-15)


def test_compensated_summation_beats_naive():
    # terms 1, 1e16, -1e16: a left-to-right float sum returns 0
    ratios = np.array([1e16, -1.0], dtype=complex)
    assert (1.0 + 1e16) - 1e16 == 0.0
    vals, abssum = backend.terminating_series(ratios, np.array([1.0 + 0j]))
    assert vals[0] == 1.0
    assert abssum[0] == pytest.approx(2e16)


def test_environment_forces_fallback(monkeypatch):
    monkeypatch.setenv("MICZ_PURE_PYTHON", "1")
    mod = importlib.reload(backend)
    try:
        assert mod.BACKEND == "python"
        assert mod.sturm_count is _kernels_py.sturm_count
    finally:
        monkeypatch.delenv("MICZ_PURE_PYTHON")
        importlib.reload(backend)


@needs_compiled
def test_compiled_backend_selected_by_default():
    assert backend.BACKEND == "cython"


def test_empty_and_single_element():
    d = np.array([2.0])
    e = np.empty(0)
    assert backend.sturm_count(d, e, 3.0) == 1
    assert backend.sturm_count(d, e, 1.0) == 0
    vals = backend.bisect_eigenvalues(d, e, 0, 0, 0.0, 5.0, 1e-15)
    assert math.isclose(vals[0], 2.0, rel_tol=1e-14)
