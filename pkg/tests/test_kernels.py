import numpy as np
import pytest
from hypothesis import given, strategies as st

from kloosterman_lab import _kernels_py, kernels
from kloosterman_lab.schwartz import random_closed_form

compiled = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")


def test_default_backend_is_compiled_when_available():
    expect = "cython" if "cython" in kernels.available_backends() else "numpy"
    assert kernels.backend_name() == expect
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_switch_restores():
    prev = kernels.use_backend("numpy")
    try:
        assert kernels.backend_name() == "numpy"
    finally:
        kernels.use_backend(prev)


@compiled
@given(st.integers(0, 2 ** 31), st.sampled_from(["SplitRR", "ComplexC"]), st.sampled_from([1, 2, 3]))
def test_poly_gauss_backends_agree(seed, tag, n):
    rng = np.random.default_rng(seed)
    b = random_closed_form(tag, n, rng, degree=3).body
    X = rng.standard_normal((257, n * n)) * 1.5
    exps, coeffs = b.poly.arrays()
    ref = _kernels_py.poly_gauss_eval(X, exps, coeffs, b.Q, b.mu, b.xi)
    from kloosterman_lab import _kernels
    out = _kernels.poly_gauss_eval(X, exps, coeffs, b.Q, b.mu, b.xi)
    np.testing.assert_allclose(out, ref, rtol=1e-12, atol=1e-15)


@compiled
@given(st.integers(0, 2 ** 31), st.integers(1, 4))
def test_congruence_backends_agree(seed, n):
    from kloosterman_lab import _kernels
    rng = np.random.default_rng(seed)
    L = rng.standard_normal((33, n, n)) + 1j * rng.standard_normal((33, n, n))
    R = rng.standard_normal((33, n, n)) + 1j * rng.standard_normal((33, n, n))
    g = rng.standard_normal((n, n)) + 0j
    ref = _kernels_py.congruence(L, g, R)
    np.testing.assert_allclose(_kernels.congruence(L, g, R), ref, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(ref, L @ g @ R, rtol=1e-12, atol=1e-12)
