import numpy as np
import pytest
from scipy import integrate as sint

from kloosterman_lab.algebra import AlgebraTag, HermitianMatrix, TorusPoint, chart_to_matrices, matrices_to_chart
from kloosterman_lab.orbital import (WeilConstantError, default_spec, omega, omega_singular, omega_tilde,
                                     period8_table, transfer_factor, transfer_factor_extended,
                                     verify_factorization, weil_constant, weil_value)
from kloosterman_lab.orbital import weil_pairing_closed, weil_pairing_ratio
from kloosterman_lab.orbits import OrbitRep
from kloosterman_lab.schwartz import gaussian, pullback_linear, random_closed_form
from kloosterman_lab.unipotent import act_batch, chi_batch, n_dim

from conftest import TAGS


def dblquad_oracle(tag, a, sign, R=9.0):
    # standard Gaussian f = exp(-|chart|^2 / 2) in plain N coordinates
    a1, a2 = a
    if tag == "SplitRR":
        def val(s, t):
            x = np.array([a1, a1 * t, a1 * s, a1 * s * t + a2])
            return np.exp(-0.5 * x @ x + 1j * sign * (s + t)) / (2 * np.pi)
    else:
        def val(s, t):
            # z = s + i t; x11, x22 real and x12 = a1 z, counted as (Re, Im)
            x = np.array([a1, a1 * (s * s + t * t) + a2, a1 * s, a1 * t])
            return np.exp(-0.5 * x @ x + 2j * sign * s) / np.pi
    re = sint.dblquad(lambda t, s: val(s, t).real, -R, R, -R, R, epsabs=1e-12)[0]
    im = sint.dblquad(lambda t, s: val(s, t).imag, -R, R, -R, R, epsabs=1e-12)[0]
    return re + 1j * im


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("a", [(1.0, 1.0), (0.7, -1.3)])
def test_omega_against_dblquad(tag, sign, a):
    r = omega(gaussian(tag, 2), a, sign)
    assert r.converged
    assert r.value == pytest.approx(dblquad_oracle(tag, a, sign), abs=1e-8)


def test_omega_n1_is_evaluation(rng):
    for tag in TAGS:
        f = random_closed_form(tag, 1, rng)
        assert omega(f, (1.7,)).value == pytest.approx(f.eval_chart([[1.7]])[0])


def action_chart_map(tag, n, v):
    t = AlgebraTag.parse(tag)
    basis = chart_to_matrices(t, n, np.eye(n * n))
    return np.stack([act_batch(t, n, v[None], M)[0] for M in basis], axis=1)


@pytest.mark.parametrize("tag", TAGS)
def test_equivariance(tag, rng):
    f = random_closed_form(tag, 2, rng, degree=1)
    a = (0.9, -1.2)
    base = omega(f, a)
    for _ in range(3):
        v = rng.uniform(-0.8, 0.8, n_dim(2))
        g = pullback_linear(f, action_chart_map(tag, 2, v))
        r = omega(g, a)
        chi = chi_batch(AlgebraTag.parse(tag), 2, v[None])[0]
        assert abs(r.value - base.value / chi) <= 3 * (r.err_est + base.err_est) + 1e-12


def test_linearity(rng):
    f, g = random_closed_form("ComplexC", 2, rng), random_closed_form("ComplexC", 2, rng)
    a = (1.1, 0.6)
    both = omega(f, a).value + 2.0 * omega(g, a).value
    h_vals = lambda X: f.eval_chart(X) + 2.0 * g.eval_chart(X)
    from kloosterman_lab.schwartz import BlackBox
    h = f.with_body(BlackBox(h_vals, 4, 9.0))
    assert omega(h, a).value == pytest.approx(both, abs=1e-6)


def test_omega_tilde_factor(rng):
    f = random_closed_form("ComplexC", 2, rng)
    a = (-0.8, 1.5)
    # sigma = a_1, eta = sign for C
    assert omega_tilde(f, a).value == pytest.approx(-0.8 * omega(f, a).value)


@pytest.mark.parametrize("tag", TAGS)
def test_singular_with_regular_rep_equals_omega(tag, rng):
    f = random_closed_form(tag, 2, rng, degree=1)
    rep = OrbitRep(tag, [(1, 0.9), (1, -1.4)])
    assert omega_singular(f, rep).value == pytest.approx(omega(f, (0.9, -1.4)).value, abs=1e-7)


def test_singular_orbit_converges():
    for tag in TAGS:
        r = omega_singular(gaussian(tag, 2), OrbitRep(tag, [(1, 1.0), (1, 0.0)], True))
        assert r.converged and np.isfinite(r.value)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("sign", [1, -1])
def test_weil_constants(tag, sign):
    # the full eps sweep runs in the acceptance suite
    c = weil_constant(tag, sign, eps_values=(1.0,))
    assert c.value == weil_value(tag, sign)
    assert abs(c.raw - c.value) < 1e-6
    for a in (1.3, -0.7):
        assert weil_pairing_ratio(tag, a, 1.0, sign)[0] == pytest.approx(weil_pairing_closed(tag, a, 1.0, sign),
                                                                         abs=1e-8)


def test_weil_rejects_bad_values():
    with pytest.raises(WeilConstantError):
        weil_constant("ComplexC", 1, a_values=(1.3,), spec=default_spec(2, max_evals=50, rel_tol=1e-1))


def test_transfer_factor_regular():
    assert transfer_factor((1.0, -2.0, 3.0)) == -1
    assert transfer_factor((-1.0, -2.0, 3.0)) == -1
    assert transfer_factor((2.0,)) == 1
    for a in [(1.0, -2.0, 3.0), (-1.0, -2.0, 0.5, 4.0)]:
        rep = OrbitRep("SplitRR", [(1, v) for v in a])
        assert transfer_factor_extended(rep) == transfer_factor(a)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("a", [1.0, -1.0, 2.5, -0.3])
def test_period8_table(sign, a):
    table = period8_table(a, sign)
    for n in range(1, 17):
        g = transfer_factor_extended(OrbitRep("ComplexC", [(n, a)]), sign)
        assert g == pytest.approx(table[(n - 1) % 8], abs=1e-12)
        assert abs(g ** 4 - 1) < 1e-12


@pytest.mark.parametrize("tag", TAGS)
def test_factorization_n2(tag, rng):
    f = random_closed_form(tag, 2, rng, degree=1)
    rep = verify_factorization(f, 1, [(0.9, 1.3), (-1.1, 0.7)])
    assert rep.converged
    assert rep.max_rel_residual <= 1e-4
