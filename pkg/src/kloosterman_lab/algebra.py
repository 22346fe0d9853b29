"""Hermitian matrices over D = R+R or C, their coordinate chart and minors.

A point of H^n(D) is stored as one n x n array: for ``SPLIT`` the real
matrix x1 of the pair (x1, x1^t), for ``COMPLEX`` a complex Hermitian
matrix.  The chart identifies H^n(D) with R^(n^2):

* SPLIT: the entries of x1, row-major.
* COMPLEX: the n diagonal entries, then (Re x_ij, Im x_ij) for i < j
  in row-major order.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

ZPRIME_TOL = 1e-10


class AlgebraTag(Enum):
    SPLIT = "SplitRR"
    COMPLEX = "ComplexC"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for tag in cls:
            if value in (tag.value, tag.name, tag.name.lower()):
                return tag
        raise ValueError(f"unknown algebra tag {value!r}")


SPLIT = AlgebraTag.SPLIT
COMPLEX = AlgebraTag.COMPLEX


def involve(tag, x):
    """The involution of D applied entrywise.

    For C this is complex conjugation.  Elements of R+R are given as arrays
    whose leading axis has length 2 (the two components), which are swapped.
    """
    x = np.asarray(x)
    if tag is COMPLEX:
        return np.conj(x)
    if x.shape[0] != 2:
        raise ValueError("R+R elements need a leading axis of length 2")
    return x[::-1].copy()


def trace_D(tag, z):
    """Tr_{D/R}: 2 Re z on C, a + b on R+R (leading axis of length 2)."""
    z = np.asarray(z)
    if tag is COMPLEX:
        return 2.0 * np.real(z)
    return z[0] + z[1]


def chart_dim(n):
    return n * n


@lru_cache(maxsize=None)
def _upper_pairs(n):
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def chart_to_matrices(tag, n, X):
    """Batch of chart points (N, n^2) -> batch of stored matrices (N, n, n)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    N = X.shape[0]
    if tag is SPLIT:
        return X.reshape(N, n, n).copy()
    M = np.zeros((N, n, n), dtype=np.complex128)
    idx = np.arange(n)
    M[:, idx, idx] = X[:, :n]
    for k, (i, j) in enumerate(_upper_pairs(n)):
        z = X[:, n + 2 * k] + 1j * X[:, n + 2 * k + 1]
        M[:, i, j] = z
        M[:, j, i] = np.conj(z)
    return M


def matrices_to_chart(tag, M):
    """Batch of stored matrices (N, n, n) -> chart points (N, n^2)."""
    M = np.asarray(M)
    if M.ndim == 2:
        M = M[None]
    N, n, _ = M.shape
    if tag is SPLIT:
        return np.real(M).reshape(N, n * n).copy()
    X = np.empty((N, n * n), dtype=np.float64)
    idx = np.arange(n)
    X[:, :n] = np.real(M[:, idx, idx])
    for k, (i, j) in enumerate(_upper_pairs(n)):
        X[:, n + 2 * k] = np.real(M[:, i, j])
        X[:, n + 2 * k + 1] = np.imag(M[:, i, j])
    return X


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    tag: AlgebraTag
    entries: np.ndarray

    def __post_init__(self):
        tag = AlgebraTag.parse(self.tag)
        object.__setattr__(self, "tag", tag)
        a = np.array(self.entries, dtype=np.complex128 if tag is COMPLEX else np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if tag is COMPLEX:
            if not np.array_equal(a, a.conj().T):
                raise ValueError("ComplexC entries must be exactly Hermitian")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self):
        return self.entries.shape[0]

    def chart(self):
        return matrices_to_chart(self.tag, self.entries)[0]

    @classmethod
    def from_chart(cls, tag, n, x):
        tag = AlgebraTag.parse(tag)
        return cls(tag, chart_to_matrices(tag, n, x)[0])

    @classmethod
    def hermitize(cls, tag, a):
        """Build from a nearly Hermitian complex matrix by averaging."""
        tag = AlgebraTag.parse(tag)
        a = np.asarray(a)
        if tag is COMPLEX:
            a = 0.5 * (a + np.conj(a).T)
        return cls(tag, a)

    def to_json(self):
        if self.tag is SPLIT:
            entries = [float(v) for v in self.entries.ravel()]
        else:
            entries = [[float(v.real), float(v.imag)] for v in self.entries.ravel()]
        return {"tag": self.tag.value, "n": self.n, "entries": entries}

    @classmethod
    def from_json(cls, obj):
        tag = AlgebraTag.parse(obj["tag"])
        n = int(obj["n"])
        vals = obj["entries"]
        if len(vals) != n * n:
            raise ValueError("entries length does not match n")
        if tag is SPLIT:
            a = np.array(vals, dtype=float)
        else:
            a = np.array([complex(*v) if isinstance(v, (list, tuple)) else complex(v) for v in vals])
        return cls(tag, a.reshape(n, n))

    def __eq__(self, other):
        return (isinstance(other, HermitianMatrix) and self.tag is other.tag
                and np.array_equal(self.entries, other.entries))

    __hash__ = None


def minor_delta(x, i):
    """Leading principal minor of size i (real for Hermitian input)."""
    n = x.n
    if not 0 <= i <= n:
        raise ValueError("minor index out of range")
    if i == 0:
        return 1.0
    d = np.linalg.det(x.entries[:i, :i])
    if x.tag is COMPLEX:
        assert abs(np.imag(d)) <= 1e-12 * max(1.0, abs(d)), "non-real minor"
    return float(np.real(d))


def deltas(x):
    return [minor_delta(x, i) for i in range(1, x.n + 1)]


def sigma(x):
    """Product of the leading minors of size 1..n-1."""
    out = 1.0
    for i in range(1, x.n):
        out *= minor_delta(x, i)
    return out


def weyl_longest(n):
    return np.fliplr(np.eye(n))


def bilinear_B(x, y):
    """B(x, y) = Re tr(x w y w) on the stored representation."""
    if x.tag is not y.tag or x.n != y.n:
        raise ValueError("B needs two points of the same H^n(D)")
    w = weyl_longest(x.n)
    return float(np.real(np.trace(x.entries @ w @ y.entries @ w)))


def trace_pairing(x, y):
    """The trace form Re tr(x y); on R+R this is tr(x1 y1)."""
    if x.tag is not y.tag or x.n != y.n:
        raise ValueError("trace form needs two points of the same H^n(D)")
    if x.tag is SPLIT:
        return float(np.trace(x.entries @ y.entries))
    return float(np.real(np.trace(x.entries @ y.entries)))


def _basis(tag, n):
    return chart_to_matrices(tag, n, np.eye(n * n))


@lru_cache(maxsize=None)
def _gram(tag, n, kind):
    E = _basis(tag, n)
    w = weyl_longest(n)
    d = n * n
    G = np.empty((d, d))
    for a in range(d):
        for b in range(d):
            if kind == "B":
                G[a, b] = np.real(np.trace(E[a] @ w @ E[b] @ w))
            else:
                G[a, b] = np.real(np.trace(E[a] @ E[b]))
    G.setflags(write=False)
    return G


def gram_B(tag, n):
    """Gram matrix of B in the chart."""
    return _gram(AlgebraTag.parse(tag), n, "B")


def gram_trace(tag, n):
    """Gram matrix of the trace form in the chart."""
    return _gram(AlgebraTag.parse(tag), n, "trace")


@lru_cache(maxsize=None)
def weyl_chart_map(tag, n):
    """Chart matrix of x -> w x w."""
    tag = AlgebraTag.parse(tag)
    w = weyl_longest(n)
    E = _basis(tag, n)
    cols = matrices_to_chart(tag, np.einsum("ij,njk,kl->nil", w, E, w))
    W = cols.T.copy()
    W.setflags(write=False)
    return W


@dataclass(frozen=True)
class RegionFlags:
    delta: tuple
    in_O: tuple
    in_U: bool
    in_Z: bool
    in_Zprime: bool


def region_classify(x, tol=ZPRIME_TOL):
    n = x.n
    scale = max(1.0, float(np.max(np.abs(x.entries))))
    delta = tuple(deltas(x))
    in_O = tuple(abs(delta[i - 1]) > tol * scale ** i for i in range(1, n))
    in_U = any(in_O)
    a = x.entries
    above = all(abs(a[i, j]) <= tol for i in range(n) for j in range(n) if i + j < n - 1)
    anti = [a[i, n - 1 - i] for i in range(n)]
    if x.tag is SPLIT:
        real = all(abs(a[i, n - 1 - i] - a[n - 1 - i, i]) <= tol for i in range(n))
    else:
        real = all(abs(np.imag(v)) <= tol for v in anti)
    equal = all(abs(v - anti[0]) <= tol for v in anti)
    in_Zprime = (not in_U) and above and real and equal
    return RegionFlags(delta, in_O, in_U, not in_U, in_Zprime)


def block_embed(s, h):
    """diag(s, h) for s in H^i and h in H^(n-i)."""
    if s.tag is not h.tag:
        raise ValueError("blocks must share the algebra tag")
    i, m = s.n, h.n
    dtype = np.complex128 if s.tag is COMPLEX else np.float64
    out = np.zeros((i + m, i + m), dtype=dtype)
    out[:i, :i] = s.entries
    out[i:, i:] = h.entries
    return HermitianMatrix(s.tag, out)


def diag_matrix(tag, a):
    tag = AlgebraTag.parse(tag)
    return HermitianMatrix(tag, np.diag(np.asarray(a, dtype=float)))


@dataclass(frozen=True)
class TorusPoint:
    diag: tuple

    def __post_init__(self):
        d = tuple(float(v) for v in self.diag)
        if not d or any(v == 0.0 for v in d):
            raise ValueError("torus point entries must be nonzero")
        object.__setattr__(self, "diag", d)

    @property
    def n(self):
        return len(self.diag)

    def matrix(self, tag):
        return diag_matrix(tag, self.diag)
