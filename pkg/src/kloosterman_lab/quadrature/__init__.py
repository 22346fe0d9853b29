"""Numerical integration engine.

``integrate`` handles absolutely convergent integrands on a truncated box,
``integrate_oscillatory_1d`` handles phases a t + b / t on the real line,
and ``iterated`` evaluates nested integrals in a prescribed axis order.
"""
import numpy as np

from .adaptive import adaptive, csum
from .qmc import lattice, tensor
from .spec import QuadResult, QuadSpec, exact


def richardson_zero(eps, values):
    """Value at eps = 0 of the interpolating polynomial (Neville)."""
    eps = [float(e) for e in eps]
    P = [complex(v) for v in values]
    n = len(P)
    for k in range(1, n):
        for i in range(n - k):
            P[i] = (eps[i + k] * P[i] - eps[i] * P[i + 1]) / (eps[i + k] - eps[i])
    return P[0]


def _raw(f, spec, box):
    d = box.shape[0]
    if d == 0:
        return QuadResult(complex(np.asarray(f(np.zeros((1, 0))))[0]), 0.0, 1, True)
    scheme = spec.scheme
    notes = []
    if scheme == "adaptive" and d >= 4:
        scheme = "qmc"
        notes.append("dimension >= 4: lattice rule used")
    if scheme == "adaptive":
        res = adaptive(f, spec, box)
    elif scheme == "tensor":
        res = tensor(f, spec, box)
    else:
        res = lattice(f, spec, box)
    return QuadResult(res.value, res.err_est, res.evals, res.converged, tuple(notes) + res.notes)


def integrate(f, spec):
    """Integrate a vectorized f: (N, d) -> (N,) complex over the spec's box."""
    box = spec.box()
    if spec.regularization == "none":
        res = _raw(f, spec, box)
    else:
        vals, errs, evals, conv = [], [], 0, True
        for eps in spec.damping_schedule:
            def g(X, eps=eps):
                return f(X) * np.exp(-eps * np.sum(X * X, axis=1))
            r = _raw(g, spec, box)
            vals.append(r.value)
            errs.append(r.err_est)
            evals += r.evals
            conv = conv and r.converged
        value = richardson_zero(spec.damping_schedule, vals)
        err = max(errs) + abs(value - richardson_zero(spec.damping_schedule[1:], vals[1:]))
        res = QuadResult(value, err, evals, conv and err <= spec.tol_for(value),
                         ("gaussian damping extrapolated",))
    if spec.tail_bound:
        err = res.err_est + spec.tail_bound
        res = QuadResult(res.value, err, res.evals,
                         res.converged and err <= spec.tol_for(res.value), res.notes)
    return res


from .oscillatory import integrate_oscillatory_1d  # noqa: E402
from .iterated import iterated  # noqa: E402

__all__ = ["QuadSpec", "QuadResult", "exact", "integrate", "integrate_oscillatory_1d",
           "iterated", "richardson_zero", "csum"]
