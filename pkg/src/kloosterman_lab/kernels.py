"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
reference implementation is used.  ``use_backend`` switches explicitly.
"""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _kernels_py


def available_backends():
    return ["numpy"] + (["cython"] if _compiled is not None else [])


def backend_name():
    return "cython" if _active is _compiled and _compiled is not None else "numpy"


def use_backend(name):
    """Select ``"cython"`` or ``"numpy"``; returns the previous name."""
    global _active
    prev = backend_name()
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    elif name == "numpy":
        _active = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    return prev


def poly_gauss_eval(X, exps, coeffs, Q, mu, xi):
    return _active.poly_gauss_eval(X, exps, coeffs, Q, mu, xi)


def congruence(L, g, R):
    return _active.congruence(L, g, R)
