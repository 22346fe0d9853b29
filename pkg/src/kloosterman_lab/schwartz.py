"""Schwartz test functions on H^n(D) and their Fourier transforms.

All transforms use psi(t) = exp(i t) (``sign=-1`` selects the conjugate
character) and the self-dual measure |det M|^(1/2) (2 pi)^(-d/2) dx of the
pairing with chart Gram matrix M, so that transforming twice gives the
pullback by -1.
"""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .algebra import AlgebraTag, gram_B, gram_trace, weyl_chart_map
from .poly import Poly, gaussian_moment_poly


class FunctionFileError(ValueError):
    """Malformed serialized test function; ``key`` names the bad field."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True, eq=False)
class ClosedForm:
    """p(x - mu) exp(-(x-mu).Q.(x-mu)/2) exp(i xi.x) on the chart."""

    poly: Poly
    Q: np.ndarray
    mu: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        d = self.poly.dim
        Q = np.array(self.Q, dtype=float).reshape(d, d)
        if not np.allclose(Q, Q.T, rtol=0, atol=1e-13 * max(1.0, np.abs(Q).max())):
            raise ValueError("Q must be symmetric")
        Q = 0.5 * (Q + Q.T)
        np.linalg.cholesky(Q)  # raises if not positive definite
        for name, v in (("Q", Q), ("mu", self.mu), ("xi", self.xi)):
            a = np.array(v, dtype=float).reshape(-1) if name != "Q" else v
            if name != "Q" and a.shape != (d,):
                raise ValueError(f"{name} must have length {d}")
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        exps, coeffs = self.poly.arrays()
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "_coeffs", coeffs)

    @property
    def dim(self):
        return self.poly.dim

    def eval_chart(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return kernels.poly_gauss_eval(X, self._exps, self._coeffs, self.Q, self.mu, self.xi)

    def box(self, tol):
        """Per-axis box (center, half width) outside which |f| < tol."""
        lam = np.linalg.eigvalsh(self.Q)
        cov = np.linalg.inv(self.Q)
        smax = 1.0 / np.sqrt(lam[0])
        C = max(self.poly.abs_coeff_sum(), 1e-300)
        deg = self.poly.degree()
        tau = 1.0
        for _ in range(200):
            if np.log(C) + deg * np.log(max(tau * smax, 1.0)) - 0.5 * tau ** 2 < np.log(tol):
                break
            tau *= 1.05
        return self.mu.copy(), tau * np.sqrt(np.diag(cov))

    def entry_bound(self, tol):
        c, h = self.box(tol)
        return float(np.max(np.abs(c) + h))


@dataclass(frozen=True, eq=False)
class BlackBox:
    """A vectorized callable on chart points plus declared decay data.

    The callable maps an (N, d) array to N complex values and must be
    re-entrant.  ``radius`` and ``bound`` declare
    |f(x)| <= bound (1 + |x|)^-(d+2) for |x| > radius.
    """

    func: object
    dim: int
    radius: float
    bound: float = 1.0

    def eval_chart(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.asarray(self.func(X), dtype=np.complex128).reshape(X.shape[0])

    def box(self, tol):
        return np.zeros(self.dim), np.full(self.dim, float(self.radius))

    def entry_bound(self, tol):
        return float(self.radius)

    def tail_bound(self):
        return float(self.bound) * (1.0 + self.radius) ** -2


@dataclass(frozen=True, eq=False)
class SchwartzFn:
    tag: AlgebraTag
    n: int
    body: object
    notes: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "tag", AlgebraTag.parse(self.tag))
        if self.body.dim != self.n * self.n:
            raise ValueError("body dimension must be n^2")

    @property
    def dim(self):
        return self.n * self.n

    @property
    def closed(self):
        return isinstance(self.body, ClosedForm)

    def eval_chart(self, X):
        return self.body.eval_chart(X)

    def __call__(self, x):
        """Evaluate at a HermitianMatrix."""
        if x.tag is not self.tag or x.n != self.n:
            raise ValueError("point lies in a different H^n(D)")
        return complex(self.eval_chart(x.chart()[None])[0])

    def with_body(self, body, note=None):
        notes = self.notes + ((note,) if note else ())
        return SchwartzFn(self.tag, self.n, body, notes)

    def to_json(self):
        if not self.closed:
            raise TypeError("only closed-form functions serialize")
        b = self.body
        return {
            "tag": self.tag.value,
            "n": self.n,
            "poly": b.poly.to_json(),
            "Q": b.Q.tolist(),
            "mu": b.mu.tolist(),
            "xi": b.xi.tolist(),
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise FunctionFileError("<root>", "expected a JSON object")
        unknown = set(obj) - {"tag", "n", "poly", "Q", "mu", "xi"}
        if unknown:
            raise FunctionFileError(sorted(unknown)[0], "unknown key")
        for key in ("tag", "n", "Q"):
            if key not in obj:
                raise FunctionFileError(key, "missing")
        try:
            tag = AlgebraTag.parse(obj["tag"])
        except ValueError as exc:
            raise FunctionFileError("tag", str(exc)) from None
        try:
            n = int(obj["n"])
            if n < 1:
                raise ValueError
        except (TypeError, ValueError):
            raise FunctionFileError("n", "must be a positive integer") from None
        d = n * n
        try:
            poly = Poly.from_json(d, obj.get("poly", {",".join("0" * d): [1.0, 0.0]}))
        except (ValueError, TypeError, AttributeError) as exc:
            raise FunctionFileError("poly", str(exc)) from None
        vals = {}
        for key, shape in (("Q", (d, d)), ("mu", (d,)), ("xi", (d,))):
            raw = obj.get(key, np.zeros(shape).tolist())
            try:
                a = np.array(raw, dtype=float)
            except (TypeError, ValueError):
                raise FunctionFileError(key, "must be numeric") from None
            if a.shape != shape:
                raise FunctionFileError(key, f"expected shape {shape}, got {a.shape}")
            vals[key] = a
        try:
            body = ClosedForm(poly, vals["Q"], vals["mu"], vals["xi"])
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise FunctionFileError("Q", f"not symmetric positive definite ({exc})") from None
        return cls(tag, n, body)


def gaussian(tag, n, Q=None, mu=None, xi=None, poly=None):
    """Closed-form test function; defaults give the standard Gaussian."""
    d = n * n
    Q = np.eye(d) if Q is None else Q
    mu = np.zeros(d) if mu is None else mu
    xi = np.zeros(d) if xi is None else xi
    poly = Poly.const(d) if poly is None else poly
    return SchwartzFn(tag, n, ClosedForm(poly, Q, mu, xi))


def random_closed_form(tag, n, rng, degree=2, spread=1.0, phase=True):
    """A random member of the closed-form family (for tests)."""
    d = n * n
    G = rng.normal(size=(d, d)) * 0.3
    Q = G @ G.T + np.diag(rng.uniform(0.6, 1.6, size=d))
    mu = rng.normal(size=d) * 0.4 * spread
    xi = rng.normal(size=d) * 0.5 if phase else np.zeros(d)
    terms = {(0,) * d: complex(rng.normal(), rng.normal())}
    for _ in range(degree):
        e = [0] * d
        e[rng.integers(d)] += 1
        if rng.random() < 0.5:
            e[rng.integers(d)] += 1
        terms[tuple(e)] = complex(rng.normal(), rng.normal()) * 0.5
    return gaussian(tag, n, Q, mu, xi, Poly(d, terms))


def pullback_linear(f, L, note=None):
    """The function x -> f(L x) for an invertible chart map L."""
    L = np.asarray(L, dtype=float)
    b = f.body
    if isinstance(b, ClosedForm):
        mu = np.linalg.solve(L, b.mu)
        body = ClosedForm(b.poly.compose_linear(L), L.T @ b.Q @ L, mu, L.T @ b.xi)
    else:
        inner = b
        body = BlackBox(lambda X: inner.eval_chart(X @ L.T), b.dim,
                        b.radius * np.linalg.norm(np.linalg.inv(L), 2), b.bound)
    return f.with_body(body, note)


def reflect(f):
    """x -> f(-x)."""
    return pullback_linear(f, -np.eye(f.dim))


def ad_w(f):
    """x -> f(w x w)."""
    return pullback_linear(f, weyl_chart_map(f.tag, f.n))


def _closed_subset_fourier(b, S, M, sign):
    d = b.dim
    S = list(S)
    T = [j for j in range(d) if j not in S]
    QS = b.Q[np.ix_(S, S)]
    A = np.linalg.inv(QS)
    MAM = M @ A @ M
    Q2 = b.Q.copy()
    Q2[np.ix_(S, S)] = 0.5 * (MAM + MAM.T)
    mu2 = b.mu.copy()
    mu2[S] = sign * np.linalg.solve(M, b.xi[S])
    xi2 = b.xi.copy()
    xi2[S] = -sign * (M @ b.mu[S])
    const = (np.sqrt(abs(np.linalg.det(M))) / np.sqrt(np.linalg.det(QS))
             * np.exp(1j * (b.xi[S] @ b.mu[S])))
    sub = -sign * M
    cache = {}
    out = Poly(d)
    for e, c in b.poly.terms.items():
        eS = tuple(e[j] for j in S)
        if eS not in cache:
            R = gaussian_moment_poly(Poly(len(S), {eS: 1.0}), A)
            cache[eS] = R.compose_linear(sub).embed(d, S)
        eT = [0] * d
        for j in T:
            eT[j] = e[j]
        out = out + cache[eS] * Poly(d, {tuple(eT): c * const})
    return ClosedForm(out, Q2, mu2, xi2)


def _numeric_subset_fourier(f, S, M, sign, spec):
    from .quadrature import QuadSpec, integrate

    body = f.body
    S = np.array(list(S))
    k = len(S)
    if spec is None:
        spec = QuadSpec(dim=k, rel_tol=1e-9, abs_tol=1e-12, max_evals=400000)
    c, h = body.box(spec.abs_tol * 1e-2)
    bounds = [(c[j] - h[j], c[j] + h[j]) for j in S]
    meas = np.sqrt(abs(np.linalg.det(M))) * (2 * np.pi) ** (-k / 2)

    def func(Y):
        Y = np.atleast_2d(Y)
        vals = np.empty(Y.shape[0], dtype=np.complex128)
        for r, y in enumerate(Y):
            My = M @ y[S]

            def g(U, y=y, My=My):
                X = np.repeat(y[None], U.shape[0], axis=0)
                X[:, S] = U
                return body.eval_chart(X) * np.exp(-1j * sign * (U @ My))

            vals[r] = meas * integrate(g, spec.with_bounds(bounds)).value
        return vals

    radius = float(np.max(np.abs(c) + h)) if k else 0.0
    return BlackBox(func, body.dim, max(radius, 1.0), getattr(body, "bound", 1.0))


def fourier_subset(f, S, M, sign=1, spec=None):
    """Fourier transform in the chart coordinates S with pairing matrix M.

    Closed-form inputs whose quadratic part does not couple S with the
    other coordinates are transformed exactly; anything else goes through
    numeric quadrature and carries a note saying so.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    S = list(S)
    M = np.asarray(M, dtype=float)
    b = f.body
    if isinstance(b, ClosedForm):
        T = [j for j in range(b.dim) if j not in S]
        coupling = np.abs(b.Q[np.ix_(S, T)]).max() if T and S else 0.0
        if coupling <= 1e-14 * np.abs(b.Q).max():
            return f.with_body(_closed_subset_fourier(b, S, M, sign))
        note = "numeric Fourier: quadratic part couples transformed coordinates"
    else:
        note = "numeric Fourier of a black-box function"
    return f.with_body(_numeric_subset_fourier(f, S, M, sign, spec), note)


def fourier_B(f, sign=1, spec=None):
    """Fourier transform on H^n(D) attached to B."""
    return fourier_subset(f, range(f.dim), gram_B(f.tag, f.n), sign, spec)


def fourier_trace(f, sign=1, spec=None):
    """Fourier transform attached to the trace form."""
    return fourier_subset(f, range(f.dim), gram_trace(f.tag, f.n), sign, spec)


@dataclass(frozen=True)
class BlockSplit:
    """Chart index sets of H^i x H^(n-i) (block diagonal) and its complement."""

    tag: AlgebraTag
    n: int
    i: int

    def __post_init__(self):
        object.__setattr__(self, "tag", AlgebraTag.parse(self.tag))
        if not 1 <= self.i <= self.n - 1:
            raise ValueError("block split needs 1 <= i <= n-1")

    def _coords(self):
        n, i = self.n, self.i
        if self.tag is AlgebraTag.SPLIT:
            return [(r, c) for r in range(n) for c in range(n)]
        pairs = [(r, r) for r in range(n)]
        for r in range(n):
            for c in range(r + 1, n):
                pairs += [(r, c), (r, c)]
        return pairs

    def diagonal(self):
        i = self.i
        return [k for k, (r, c) in enumerate(self._coords()) if (r < i) == (c < i)]

    def off_diagonal(self):
        i = self.i
        return [k for k, (r, c) in enumerate(self._coords()) if (r < i) != (c < i)]


def partial_fourier(f, split, which, sign=1, spec=None):
    """Trace-form Fourier transform along the blocks or along their complement."""
    if which in ("diagonal", "diagonal-blocks"):
        S = split.diagonal()
    elif which in ("off", "off-diagonal"):
        S = split.off_diagonal()
    else:
        raise ValueError(f"unknown block selection {which!r}")
    G = gram_trace(f.tag, f.n)
    return fourier_subset(f, S, G[np.ix_(S, S)], sign, spec)
