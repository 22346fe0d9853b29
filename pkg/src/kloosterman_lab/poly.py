"""Sparse multivariate polynomials with complex coefficients."""
from functools import reduce

import numpy as np


class Poly:
    """Immutable polynomial in ``dim`` real variables.

    Stored as a mapping exponent-tuple -> complex coefficient.  Exact zeros
    are dropped.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = int(dim)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != self.dim or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for dim {self.dim}")
            c = complex(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def const(cls, dim, c=1.0):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def var(cls, dim, j, c=1.0):
        e = [0] * dim
        e[j] = 1
        return cls(dim, {tuple(e): c})

    @classmethod
    def linear(cls, coeffs, const=0.0):
        coeffs = np.asarray(coeffs)
        dim = len(coeffs)
        terms = {(0,) * dim: const}
        for j, c in enumerate(coeffs):
            e = [0] * dim
            e[j] = 1
            terms[tuple(e)] = complex(c)
        return cls(dim, terms)

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.dim, 0j)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.dim, other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.dim, t)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -complex(other))

    def scale(self, c):
        return Poly(self.dim, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.dim, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        return reduce(lambda a, b: a * b, [self] * k, Poly.const(self.dim))

    def derivative(self, j):
        t = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                t[tuple(e2)] = t.get(tuple(e2), 0) + c * e[j]
        return Poly(self.dim, t)

    def compose_linear(self, L):
        """The polynomial r -> p(L r) for a (dim x m) matrix L."""
        L = np.asarray(L)
        m = L.shape[1]
        rows = [Poly.linear(L[j]) for j in range(self.dim)]
        out = Poly(m)
        cache = {}
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for j, k in enumerate(e):
                if k:
                    key = (j, k)
                    if key not in cache:
                        cache[key] = rows[j] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def embed(self, dim, positions):
        """View as a polynomial in ``dim`` variables; variable j -> positions[j]."""
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * dim
            for j, k in enumerate(e):
                e2[positions[j]] += k
            t[tuple(e2)] = t.get(tuple(e2), 0) + c
        return Poly(dim, t)

    def arrays(self):
        if not self.terms:
            return np.zeros((1, self.dim), dtype=np.int64), np.zeros(1, dtype=np.complex128)
        keys = sorted(self.terms)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.dim)
        coeffs = np.array([self.terms[k] for k in keys], dtype=np.complex128)
        return exps, coeffs

    def __call__(self, R):
        R = np.atleast_2d(np.asarray(R))
        R = R.astype(np.complex128 if np.iscomplexobj(R) else float)
        exps, coeffs = self.arrays()
        if self.dim == 0:
            return np.full(R.shape[0], coeffs.sum())
        return np.prod(R[:, None, :] ** exps[None], axis=2) @ coeffs

    def abs_coeff_sum(self):
        return sum(abs(c) for c in self.terms.values())

    def to_json(self):
        return {",".join(map(str, e)): [c.real, c.imag] for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, dim, obj):
        terms = {}
        for key, val in obj.items():
            e = tuple(int(v) for v in key.split(",")) if key else ()
            if isinstance(val, (list, tuple)):
                if len(val) != 2:
                    raise ValueError(f"coefficient for {key!r} must be [re, im]")
                val = complex(val[0], val[1])
            terms[e] = complex(val)
        return cls(dim, terms)

    def __repr__(self):
        return f"Poly({self.dim}, {self.terms})"


def gaussian_moment_poly(P, A):
    """R(k) with P(-i d/dk) exp(-k.A.k/2) = R(k) exp(-k.A.k/2).

    Each -i d/dk_j acts on R exp(-k.A.k/2) as R -> -i (dR/dk_j - (A k)_j R).
    """
    d = P.dim
    A = np.asarray(A)
    Ak = [Poly.linear(A[j]) for j in range(d)]

    def step(R, j):
        return (R.derivative(j) - Ak[j] * R).scale(-1j)

    out = Poly(d)
    for e, c in P.terms.items():
        R = Poly.const(d, c)
        for j, k in enumerate(e):
            for _ in range(k):
                R = step(R, j)
        out = out + R
    return out
