import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from kloosterman_lab.quadrature import (QuadSpec, integrate, integrate_oscillatory_1d, iterated,
                                        richardson_zero)


def gauss(X):
    return np.exp(-0.5 * np.sum(X * X, axis=1)).astype(complex)


def test_gaussian_2d_adaptive():
    r = integrate(gauss, QuadSpec(dim=2, rel_tol=1e-10))
    assert r.converged
    assert r.value == pytest.approx(2 * np.pi, rel=1e-10)


def test_modulated_gaussian_1d():
    r = integrate(lambda X: np.exp(-0.5 * X[:, 0] ** 2 + 1j * X[:, 0]), QuadSpec(dim=1, rel_tol=1e-12))
    assert r.value == pytest.approx(np.sqrt(2 * np.pi) * np.exp(-0.5), abs=1e-11)


def test_quarter_plane():
    spec = QuadSpec(bounds=((0, 8), (0, 8)), rel_tol=1e-10)
    r = integrate(lambda X: np.exp(-np.sum(X * X, axis=1)).astype(complex), spec)
    assert r.value == pytest.approx(np.pi / 4, rel=1e-9)


@pytest.mark.parametrize("scheme", ["tensor", "qmc"])
def test_other_schemes(scheme):
    spec = QuadSpec(dim=3, scheme=scheme, rel_tol=1e-6, qmc_points=2 ** 14)
    r = integrate(gauss, spec)
    assert abs(r.value - (2 * np.pi) ** 1.5) <= max(3 * r.err_est, 1e-6 * (2 * np.pi) ** 1.5)


def test_high_dimension_switches_to_lattice():
    r = integrate(gauss, QuadSpec(dim=4, rel_tol=1e-4, qmc_points=2 ** 13))
    assert any("lattice" in n for n in r.notes)
    assert r.value == pytest.approx((2 * np.pi) ** 2, rel=1e-3)


def test_budget_exhaustion_reports_nonconvergence():
    f = lambda X: np.exp(1j * 40 * X[:, 0] * X[:, 1]) * gauss(X)
    r = integrate(f, QuadSpec(dim=2, rel_tol=1e-12, abs_tol=1e-14, max_evals=2000))
    assert not r.converged


def test_deterministic_and_worker_independent():
    f = lambda X: np.cos(X[:, 0] * X[:, 1]) * gauss(X)
    for scheme in ("adaptive", "qmc"):
        spec = QuadSpec(dim=3, scheme=scheme, rel_tol=1e-7, qmc_points=2 ** 13, seed=3)
        a, b, c = integrate(f, spec), integrate(f, spec), integrate(f, spec.replace(workers=4))
        assert a.value == b.value == c.value
        assert a.err_est == c.err_est


def test_iterated_matches_joint():
    f = lambda X: np.exp(-X[:, 0] ** 2 - 2 * X[:, 1] ** 2 + 1j * X[:, 0] * X[:, 1]).astype(complex)
    line = QuadSpec(dim=1, truncation_radius=7, rel_tol=1e-11)
    it = iterated(f, [1, 0], [line, line])
    joint = integrate(f, QuadSpec(dim=2, truncation_radius=7, rel_tol=1e-11))
    assert it.converged
    assert it.value == pytest.approx(joint.value, abs=1e-9)
    with pytest.raises(ValueError):
        iterated(f, [0, 0], [line, line])


def test_damping_extrapolation_recovers_value():
    spec = QuadSpec(dim=1, rel_tol=1e-10, regularization="gaussian_damping")
    r = integrate(lambda X: np.exp(-0.5 * X[:, 0] ** 2).astype(complex), spec)
    assert r.value == pytest.approx(np.sqrt(2 * np.pi), rel=1e-6)


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_richardson_exact_on_quadratics(c):
    eps = (0.1, 0.05, 0.01)
    vals = [c[0] + c[1] * e + c[2] * e * e for e in eps]
    assert richardson_zero(eps, vals) == pytest.approx(c[0], abs=1e-9)


def _osc_oracle(alpha, beta):
    # split at |t| = 1; the inner part becomes a Fourier tail in u = 1 / t
    mpmath.mp.dps = 20
    g = lambda t: mpmath.exp(-t * t + 1j * (alpha * t + beta / t))
    outer = mpmath.quad(g, [-12, -1]) + mpmath.quad(g, [1, 12])
    h = lambda u: mpmath.exp(-1 / (u * u)) / (u * u)
    inner = 0
    for s in (1, -1):
        amp = lambda u, s=s: h(u) * mpmath.exp(1j * alpha * s / u)
        inner += mpmath.quadosc(lambda u: amp(u) * mpmath.exp(1j * beta * s * u), [1, mpmath.inf],
                                omega=abs(beta))
    return complex(outer + inner)


@pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (1.3, 0.0), (0.5, 2.0), (-1.0, -0.7), (0.0, 5.0)])
def test_oscillatory_against_oracle(alpha, beta):
    f = lambda T: np.exp(-T * T).astype(complex)
    r = integrate_oscillatory_1d(f, alpha, beta, QuadSpec(dim=1, rel_tol=1e-10, abs_tol=1e-12), radius=7)
    ref = np.sqrt(np.pi) * np.exp(-alpha ** 2 / 4) if beta == 0 else _osc_oracle(alpha, beta)
    assert r.converged
    assert r.value == pytest.approx(ref, abs=1e-8)


@pytest.mark.parametrize("kw", [dict(rel_tol=0), dict(scheme="mc"), dict(regularization="cut"),
                                dict(damping_schedule=(0.1, 0.2)), dict(workers=0),
                                dict(qmc_transform="sobol")])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        QuadSpec(**kw)
