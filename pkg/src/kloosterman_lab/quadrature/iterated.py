"""Iterated (nested one-dimensional) integration in a prescribed order."""
import numpy as np

from . import QuadResult, integrate

MAX_AXES = 3


def iterated(f, order, inner_specs):
    """Integrate f: (N, k) -> (N,) one axis at a time.

    ``order`` lists the axes innermost first; ``inner_specs[j]`` is the
    one-dimensional QuadSpec (with bounds) used for axis ``order[j]``.
    The innermost integral is vectorized over its quadrature nodes; every
    outer node triggers a full inner integration.
    """
    order = list(order)
    k = len(order)
    if sorted(order) != list(range(k)) or len(inner_specs) != k:
        raise ValueError("order must be a permutation matching inner_specs")
    if k > MAX_AXES:
        return QuadResult(0.0, float("inf"), 0, False, ("too many axes for iterated mode",))
    state = {"evals": 0, "ok": True, "err": 0.0}

    def level(j, fixed):
        # integrate axes order[j:] ... order[0] is innermost; we recurse from the outermost
        axis = order[j]
        spec = inner_specs[j]

        if j == 0:
            def g(T):
                X = np.repeat(fixed[None], T.shape[0], axis=0)
                X[:, axis] = T[:, 0]
                return f(X)
        else:
            def g(T):
                out = np.empty(T.shape[0], dtype=np.complex128)
                for r, t in enumerate(T[:, 0]):
                    pt = fixed.copy()
                    pt[axis] = t
                    out[r] = level(j - 1, pt)
                return out

        res = integrate(g, spec)
        state["evals"] += res.evals if j == 0 else 0
        state["ok"] = state["ok"] and res.converged
        if j == k - 1:
            state["err"] = res.err_est
        return res.value

    value = level(k - 1, np.zeros(k))
    return QuadResult(value, state["err"], state["evals"], state["ok"],
                      () if state["ok"] else ("an inner integral did not converge",))
