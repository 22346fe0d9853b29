"""One-dimensional integrals with phase exp(i (a t + b / t)).

The line is split at -1, 0 and 1.  On |t| >= 1 the integrand is smooth and
handled by the adaptive Gauss-Kronrod engine.  On 0 < |t| < 1 the map
u = 1/t turns the accumulating 1/t oscillation into a Fourier integral over
[1, inf) with amplitude decaying like u^-2, which QUADPACK's QAWF routine
(scipy.integrate.quad with a cos/sin weight) sums cycle by cycle.
"""
import warnings

import numpy as np
from scipy import integrate as sint

from . import QuadResult, integrate, richardson_zero


def _fourier_tail(g, beta, epsabs):
    """Integral over [1, inf) of g(u) exp(i beta u) for complex scalar g."""
    w = abs(beta)
    s = 1.0 if beta > 0 else -1.0
    cache = {}
    raw = g

    def g(u):  # the cos and sin passes visit the same nodes
        if u not in cache:
            cache[u] = raw(u)
        return cache[u]

    total, err, ok, evals = 0j, 0.0, True, 0
    parts = (
        (lambda u: g(u).real, "cos", 1.0), (lambda u: g(u).imag, "cos", 1j),
        (lambda u: g(u).real, "sin", 1j * s), (lambda u: g(u).imag, "sin", -s),
    )
    for fun, weight, coef in parts:
        with warnings.catch_warnings():
            warnings.simplefilter("error", sint.IntegrationWarning)
            try:
                val, e, info = sint.quad(fun, 1.0, np.inf, weight=weight, wvar=w,
                                         epsabs=epsabs, limlst=200, limit=200, full_output=1)[:3]
            except sint.IntegrationWarning:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    val, e, info = sint.quad(fun, 1.0, np.inf, weight=weight, wvar=w,
                                             epsabs=epsabs, limlst=200, limit=200, full_output=1)[:3]
                ok = False
        evals += int(info.get("neval", 0)) if isinstance(info, dict) else 0
        total += coef * val
        err += abs(e)
    return total, err, ok, evals


def _once(f, alpha, beta, spec, radius):
    def phased(T):
        T = T[:, 0]
        return f(T) * np.exp(1j * (alpha * T + beta / T))

    if beta == 0:
        return integrate(lambda X: f(X[:, 0]) * np.exp(1j * alpha * X[:, 0]),
                         spec.with_bounds([(-radius, radius)], regularization="none"))

    def g_pos(u):
        return complex(f(np.array([1.0 / u]))[0]) * np.exp(1j * alpha / u) / (u * u)

    def g_neg(u):
        return complex(f(np.array([-1.0 / u]))[0]) * np.exp(-1j * alpha / u) / (u * u)

    def pieces(rel_tol, abs_tol):
        sub = spec.replace(regularization="none", rel_tol=rel_tol, abs_tol=abs_tol)
        outer = [integrate(phased, sub.with_bounds([b])) for b in ((-radius, -1.0), (1.0, radius))] \
            if radius > 1 else []
        scale = max([abs(r.value) for r in outer] + [abs(complex(f(np.array([0.5]))[0]))])
        # half the tolerance goes to the tails, shared by eight QAWF calls
        epsabs = 0.5 * max(abs_tol, rel_tol * scale) / 8
        value = sum((r.value for r in outer), 0j)
        err = sum(r.err_est for r in outer)
        evals = sum(r.evals for r in outer)
        ok = all(r.converged for r in outer)
        for g, b in ((g_pos, beta), (g_neg, -beta)):
            v, e, conv, ne = _fourier_tail(g, b, epsabs)
            value += v
            err += e
            evals += ne
            ok = ok and conv
        return value, err, evals, ok, scale

    notes = ["truncation radius <= 1: tails omitted"] if radius <= 1 else []
    value, err, evals, ok, scale = pieces(spec.rel_tol, spec.abs_tol)
    if err > spec.tol_for(value) and 0 < abs(value) < scale:
        # the pieces cancel: tighten them relative to the total once
        shrink = max(abs(value) / scale, 1e-4)
        value, err, more, ok, _ = pieces(max(spec.rel_tol * shrink, 1e-14), max(spec.abs_tol * shrink, 1e-300))
        evals += more
        notes.append("pieces cancel: tolerance tightened")
    return QuadResult(value, err, evals, ok and err <= spec.tol_for(value), notes)


def integrate_oscillatory_1d(f, alpha, beta, spec, radius=None):
    """Integral over R of f(t) exp(i (alpha t + beta / t)).

    ``f`` maps a 1-d array of points to complex values; ``radius`` bounds
    the region |t| <= radius outside which f is negligible.
    """
    radius = float(spec.box()[0, 1]) if radius is None else float(radius)
    if spec.regularization == "none":
        return _once(f, alpha, beta, spec, radius)
    vals, errs, evals, ok = [], [], 0, True
    for eps in spec.damping_schedule:
        r = _once(lambda T, eps=eps: f(T) * np.exp(-eps * T * T), alpha, beta, spec, radius)
        vals.append(r.value)
        errs.append(r.err_est)
        evals += r.evals
        ok = ok and r.converged
    value = richardson_zero(spec.damping_schedule, vals)
    err = max(errs) + abs(value - richardson_zero(spec.damping_schedule[1:], vals[1:]))
    return QuadResult(value, err, evals, ok and err <= spec.tol_for(value),
                      ("gaussian damping extrapolated",))
