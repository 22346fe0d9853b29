"""Jacquet transforms on the torus and the inversion identities.

Torus functions carry an optional declared phase exp(i beta / a_n) in the
last coordinate (this is what the J' layers produce), so that the next
Fourier layer can see it.  For n = 2 and closed-form f the p-integral of
Omega-tilde(f)(b, p) psi(-xi p) is a Gaussian integral in the variables
(x_12, x_22) and is done exactly; only the b-integral is numeric.  In
that integrand the psi(1/(a_1 b)) phase cancels the stationary phase of
the inner integral, so the b-integrand is smooth at b = 0.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import COMPLEX, SPLIT, HermitianMatrix, TorusPoint, gram_B, matrices_to_chart, weyl_longest
from .gaussian import closed_form_affine_integral
from .orbital import (default_spec, omega, omega_singular, omega_tilde, omega_tilde_intermediate,
                      weil_value)
from .orbits import OrbitRep
from .quadrature import QuadResult, QuadSpec, exact, integrate, integrate_oscillatory_1d
from .report import IdentityReport, fit_constant, identity_row
from .schwartz import ClosedForm, fourier_B
from .unipotent import SD, haar_density, psi


def line_spec(**kw):
    base = dict(dim=1, rel_tol=1e-10, abs_tol=1e-13, max_evals=400_000)
    base.update(kw)
    return QuadSpec(**base)


@dataclass(frozen=True, eq=False)
class TorusFunction:
    """F on regular diagonal points, as ``func``: (N, n) -> (values, errs).

    ``last_phase`` maps the first n-1 coordinates to beta; the full value
    is func(a) exp(i beta / a_n).  ``radius`` bounds the region outside
    which F is negligible in each coordinate.
    """

    n: int
    func: object
    radius: float = 8.0
    last_phase: object = None
    note: str = ""

    @classmethod
    def from_callable(cls, n, g, radius=8.0, note=""):
        return cls(n, lambda A: (np.asarray(g(A), dtype=np.complex128), 0.0), radius, None, note)

    def evaluate(self, A):
        A = np.atleast_2d(np.asarray(A, dtype=float))
        v, e = self.func(A)
        v = np.asarray(v, dtype=np.complex128)
        e = np.broadcast_to(np.asarray(e, dtype=float), v.shape)
        if self.last_phase is not None:
            if np.any(A[:, -1] == 0):
                raise ValueError("declared phase is singular at a_n = 0")
            v = v * np.exp(1j * self.last_phase(A[:, :-1]) / A[:, -1])
        return v, e

    def __call__(self, a):
        v, e = self.evaluate(np.asarray(a, dtype=float)[None])
        return QuadResult(v[0], e[0], 0, True)


def torus_omega(f, sign=1, spec=None, tilde=True):
    """a -> Omega-tilde^psi(f)(a) as a TorusFunction (one quadrature per point)."""
    op = omega_tilde if tilde else omega

    def func(A):
        rs = [op(f, tuple(row), sign, spec) for row in A]
        return np.array([r.value for r in rs]), np.array([r.err_est for r in rs])

    return TorusFunction(f.n, func, f.body.entry_bound(1e-14), None, "orbital integral")


def fn_last(F, sign=1, spec=None):
    """1D self-dual Fourier transform in the last coordinate.

    A declared phase exp(i beta / a_n) is handed to the oscillatory rule.
    """
    spec = spec or line_spec()
    R = F.radius
    bare = TorusFunction(F.n, F.func, R)

    def func(A):
        vals, errs = [], []
        for row in A:
            worst = [0.0]

            def amp(T, row=row):
                T = np.atleast_1d(T)
                pts = np.column_stack([np.repeat(row[None, :-1], T.shape[0], 0), T])
                v, e = bare.evaluate(pts)
                worst[0] = max(worst[0], float(e.max(initial=0.0)))
                return v * SD

            if F.last_phase is None:
                r = integrate(lambda X: amp(X[:, 0]) * psi(-row[-1] * X[:, 0], sign),
                              spec.with_bounds([(-R, R)]))
            else:
                beta = float(F.last_phase(row[None, :-1])[0])
                r = integrate_oscillatory_1d(amp, -sign * row[-1], beta, spec, radius=R)
            vals.append(r.value)
            errs.append(r.err_est + worst[0] * 2 * R * SD)
        return np.array(vals), np.array(errs)

    return TorusFunction(F.n, func, F.radius, None, "fourier in last coordinate")


def jprime_torus(F, i, sign=1):
    """a -> F(a_1..a_{i-1}, a_n, a_i..a_{n-1}) psi(1/(a_n a_{n-1}))  (1-based i)."""
    n = F.n
    if not 1 <= i < n:
        raise ValueError("need 1 <= i < n")
    perm = list(range(i - 1)) + [n - 1] + list(range(i - 1, n - 1))

    def func(A):
        if np.any(A[:, -1] * A[:, -2] == 0):
            raise ValueError("a_{n-1} a_n = 0 is outside the domain")
        return F.evaluate(A[:, perm])

    return TorusFunction(n, func, F.radius, lambda H: sign / H[:, -1], "permuted with phase")


def jn_i(F, i, sign=1, spec=None):
    return jprime_torus(fn_last(F, sign, spec), i, sign)


def jacquet_full(F, sign=1, spec=None):
    """The full transform: F_n o J^(n-1) o ... o J^(1)."""
    if F.n > 3:
        raise NotImplementedError("jacquet_full is limited to n <= 3")
    G = F
    for i in range(1, F.n):
        G = jn_i(G, i, sign, spec)
    return fn_last(G, sign, spec)


# block functions on H^i x H^(n-i)

@dataclass(frozen=True, eq=False)
class BlockFunction:
    """F(A, B) with A in H^p, B in H^q, vectorized on charts: (N, p^2), (N, q^2) -> values."""

    tag: object
    p: int
    q: int
    func: object
    radius: float = 8.0

    def __call__(self, A, B):
        return complex(np.asarray(self.func(A.chart()[None], B.chart()[None]))[0])


def _inverse_corner(tag, n, X, first):
    """Diagonal entry (0,0) or (n-1,n-1) of the inverse of each chart matrix."""
    from .algebra import chart_to_matrices
    M = chart_to_matrices(tag, n, X)
    Minv = np.linalg.inv(M)
    k = 0 if first else n - 1
    return np.real(Minv[:, k, k])


def _check_split(F, i):
    if i is not None and i != F.p:
        raise ValueError(f"block function splits at {F.p}, not {i}")


def jprime_i(F, i=None, sign=1):
    """F(A, B) psi((A^-1)_{ii} (B^-1)_{mm}): the trace of w B^-1 w eps A^-1 eps^t.

    Only the last diagonal entries of the two inverses enter.
    """
    _check_split(F, i)
    tag, p, q = F.tag, F.p, F.q

    def func(A, B):
        ph = _inverse_corner(tag, p, A, False) * _inverse_corner(tag, q, B, False)
        return np.asarray(F.func(A, B)) * psi(ph, sign)

    return BlockFunction(tag, p, q, func, F.radius)


def t_swap(F, i=None):
    """(A, B) -> F(B, A); a function on H^(n-i) x H^i."""
    _check_split(F, i)
    return BlockFunction(F.tag, F.q, F.p, lambda A, B: F.func(B, A), F.radius)


def _fourier_second(F, sign, spec):
    """Fourier transform of a BlockFunction in its second argument."""
    tag, k = F.tag, F.q
    G = gram_B(tag, k)
    norm = np.sqrt(abs(np.linalg.det(G))) * SD ** (k * k)
    R = F.radius
    spec = (spec or default_spec(k * k)).with_bounds([(-R, R)] * (k * k))

    def func(A, Y):
        out = []
        for a, y in zip(A, Y):
            def g(X, a=a, y=y):
                v = F.func(np.repeat(a[None], X.shape[0], 0), X)
                return np.asarray(v) * psi(-(X @ G @ y), sign) * norm

            out.append(integrate(g, spec).value)
        return np.array(out)

    return BlockFunction(tag, F.p, F.q, func, R)


def partial_jacquet(F, i=None, sign=1, spec=None):
    """J_i = F_{H^i} o T_i o J'_i o F_{H^(n-i)}, by nested quadrature.

    F is a BlockFunction on H^i x H^(n-i); the result lives on H^(n-i) x H^i.
    """
    _check_split(F, i)
    G = _fourier_second(F, sign, spec)
    G = t_swap(jprime_i(G, None, sign))
    return _fourier_second(G, sign, spec)


# n = 2 closed-form layer

def _require_closed(f):
    if not isinstance(f.body, ClosedForm):
        raise NotImplementedError("the n = 2 fast path needs a closed-form function")


def h_layer(f, B, xi, sign=1, extra=0.0, tilde=True):
    """int dp/sqrt(2 pi) psi(-xi p) Omega-tilde(f)(b, p) for each b in B (n = 2).

    ``extra`` is added to the exponent before exponentiation.
    """
    _require_closed(f)
    if f.n != 2:
        raise ValueError("h_layer is the n = 2 layer")
    tag, s = f.tag, sign
    B = np.asarray(B, dtype=float)
    N = B.size
    x0 = np.zeros((N, 4))
    x0[:, 0] = B
    L = np.zeros((4, 3))
    Ae = np.zeros((N, 3, 3), dtype=np.complex128)
    be = np.zeros((N, 3), dtype=np.complex128)
    if tag is COMPLEX:  # r = (Re x12, Im x12, x22), u = x12 / b
        L[2, 0] = L[3, 1] = L[1, 2] = 1.0
        be[:, 0] = 2j * s / B
        Ae[:, 0, 0] = Ae[:, 1, 1] = -2j * s * xi / B
    else:  # r = (x12, x21, x22), u2 = x12 / b, u1 = x21 / b
        L[1, 0] = L[2, 1] = L[3, 2] = 1.0
        be[:, 0] = be[:, 1] = 1j * s / B
        Ae[:, 0, 1] = Ae[:, 1, 0] = -1j * s * xi / B
    be[:, 2] = -1j * s * xi
    I = closed_form_affine_integral(f.body, x0, L, Ae, be, extra)
    fac = haar_density(tag, 2) * SD / B ** 2
    if tilde:
        fac = fac * (np.sign(B) if tag is COMPLEX else 1.0) * np.abs(B)
    return fac * I


def _b_bounds(f):
    c, h = f.body.box(1e-16)
    return [(c[0] - h[0], c[0] + h[0])]


def jacquet_of_omega(f, a, sign=1, spec=None):
    """J(Omega-tilde^psi f)(a) for n = 1 (numeric Fourier) and n = 2 (fast path)."""
    a = tuple(a.diag) if isinstance(a, TorusPoint) else tuple(float(v) for v in a)
    spec = spec or line_spec()
    if f.n == 1:
        c, h = f.body.box(1e-16)
        return integrate(lambda X: f.eval_chart(X) * psi(-a[0] * X[:, 0], sign) * SD,
                         spec.with_bounds([(c[0] - h[0], c[0] + h[0])]))
    if f.n != 2:
        raise NotImplementedError("the inversion check is quantitative for n <= 2")
    a1, a2 = a

    def g(X):
        b = X[:, 0]
        return SD * h_layer(f, b, a1, sign, 1j * sign * (-a2 * b + 1.0 / (a1 * b)))

    return integrate(g, spec.with_bounds(_b_bounds(f)))


def inversion_rhs(f, a, sign=1, spec=None):
    """The iterated p-integral of Omega-tilde(f), normalized to match Omega-tilde^psibar(F f).

    The iterated integral itself equals c^{n(n-1)/2} times that value, so
    it is divided by the constant here.
    """
    k = f.n * (f.n - 1) // 2
    return jacquet_of_omega(f, a, sign, spec).scaled(weil_value(f.tag, sign) ** -k)


def verify_inversion(f, samples, sign=1, spec=None, rhs_spec=None):
    """J(Omega-tilde^psi f)(a) against c^{n(n-1)/2} Omega-tilde^psibar(F f)(a)."""
    k = f.n * (f.n - 1) // 2
    const = weil_value(f.tag, sign) ** k
    Ff = fourier_B(f, sign)
    rows, L, R = [], [], []
    for a in samples:
        a = tuple(float(v) for v in (a.diag if isinstance(a, TorusPoint) else a))
        lhs = jacquet_of_omega(f, a, sign, spec)
        rhs = omega_tilde(Ff, a, -sign, rhs_spec)
        rows.append(identity_row(a, lhs, rhs, const))
        L.append(lhs.value)
        R.append(rhs.value)
    return IdentityReport(rows, fit_constant(L, R), const)


def verify_partial_inversion(f, i, samples, sign=1, spec=None, rhs_spec=None):
    """J_i(Omega-tilde_i^psi f)(X, Y) against c^{i(n-i)} Omega-tilde_{n-i}^psibar(F f)(X, Y).

    Samples are pairs (X, Y) with X in H^{n-i}, Y in H^i, given as reals
    for n = 2.
    """
    n = f.n
    if n != 2 or i != 1:
        raise NotImplementedError("partial inversion is implemented for n = 2, i = 1")
    const = weil_value(f.tag, sign) ** (i * (n - i))
    Ff = fourier_B(f, sign)
    rows, L, R = [], [], []
    for X, Y in samples:
        lhs = jacquet_of_omega(f, (X, Y), sign, spec)
        s = HermitianMatrix(f.tag, np.array([[float(X)]]))
        h = HermitianMatrix(f.tag, np.array([[float(Y)]]))
        rhs = omega_tilde_intermediate(Ff, n - i, s, h, -sign, rhs_spec)
        rows.append(identity_row((X, Y), lhs, rhs, const))
        L.append(lhs.value)
        R.append(rhs.value)
    return IdentityReport(rows, fit_constant(L, R), const)


# f_Phi by its definition and by two change-of-variable forms

def _antidiag_chart(tag, n, keep):
    """Chart indices (and the number of complex pairs) of entries (i, j) with keep(i, j), 0-based."""
    cols, pairs = [], 0
    for k in range(n * n):
        e = np.zeros(n * n)
        e[k] = 1.0
        from .algebra import chart_to_matrices
        M = chart_to_matrices(tag, n, e[None])[0]
        i, j = np.argwhere(np.abs(M) > 0)[0]
        if keep(i, j):
            cols.append(k)
    if tag is COMPLEX:
        pairs = sum(1 for k in cols if k >= n) // 2
    return cols, pairs


def _e_matrix(n):
    e = np.zeros((n, n))
    e[:n - 1, :n - 1] = weyl_longest(n - 1)  # e_ij = delta_{i+j, n}, 1-based
    return e


def _linear_slice(f, base, cols, pair_count, phase_vec, sign, spec, prefactor):
    tag = f.tag
    dens = SD ** len(cols) * (2.0 ** pair_count if tag is COMPLEX else 1.0)
    c, h = f.body.box(1e-16)
    bounds = [(c[k] - h[k] - abs(base[k]), c[k] + h[k] + abs(base[k])) for k in cols]

    def g(V):
        X = np.repeat(base[None], V.shape[0], 0)
        X[:, cols] += V
        return f.eval_chart(X) * psi(V @ phase_vec, sign) * dens

    return integrate(g, (spec or default_spec(len(cols))).with_bounds(bounds)).scaled(prefactor)


def f_phi(f, a, mode="definition", sign=1, spec=None, method="auto"):
    """f_Phi(a) = Omega(Phi, a w_n) by one of three equal formulas.

    ``definition`` integrates over N / N_g, ``v_formula`` over the space V
    of entries strictly below the antidiagonal, and ``inversion`` uses the
    Fourier transform of Phi and the orbits of diag(-a^-1 w_{n-1}, b);
    its b-integral is closed-form for n = 2 unless ``method="nested"``.
    """
    tag, n = f.tag, f.n
    a = float(a)
    if n < 2 or a == 0:
        raise ValueError("f_phi needs n >= 2 and a != 0")
    if mode == "definition":
        return omega_singular(f, OrbitRep(tag, [(n, a)]), sign, spec)
    if mode == "v_formula":
        cols, pairs = _antidiag_chart(tag, n, lambda i, j: i + j >= n)
        base = matrices_to_chart(tag, a * weyl_longest(n))[0]
        G = gram_B(tag, n)
        ev = matrices_to_chart(tag, _e_matrix(n) / a)[0]
        phase_vec = (ev @ G)[cols]
        return _linear_slice(f, base, cols, pairs, phase_vec, sign, spec, abs(a) ** ((n - n * n) / 2))
    if mode == "inversion":
        Ff = fourier_B(f, sign)
        pref = abs(a) ** (1 - n * n)
        if n == 2 and method == "auto" and isinstance(Ff.body, ClosedForm):
            b = -1.0 / a
            v = h_layer(Ff, np.array([b]), 0.0, -sign, tilde=False)[0]
            return exact(v * pref, "closed-form b-integral")
        return _inversion_nested(Ff, a, -sign, spec).scaled(pref)
    raise ValueError(f"unknown mode {mode!r}")


def _inversion_nested(Ff, a, sign, spec):
    """int db/sqrt(2 pi) Omega(F f, diag(-a^-1 w_{n-1}, b)), nested quadrature."""
    n, tag = Ff.n, Ff.tag
    c, h = Ff.body.box(1e-16)
    R = float(np.max(np.abs(c) + h))
    R = R * (1.0 + R * abs(a))  # b = x_nn - (off-diagonal quadratic) * (-a)
    head = [(n - 1, -1.0 / a)]
    spec = spec or default_spec(rel_tol=1e-6, abs_tol=1e-10)

    def g(X):
        vals = []
        for b in X[:, 0]:
            rep = OrbitRep(tag, head + [(1, float(b))]) if b != 0 else OrbitRep(tag, head + [(1, 0.0)], True)
            vals.append(omega_singular(Ff, rep, sign, spec).value)
        return np.array(vals) * SD

    return integrate(g, line_spec(rel_tol=1e-6, abs_tol=1e-10).with_bounds([(-R, R)]))


def second_int(f, a, sign=1, spec=None, method="closed"):
    """Both sides of the b-integrated intermediate orbital integral identity.

    Returns (direct, formula): the integral over b of
    Omega(f, diag(a w_{n-1}, b)) and the integral over V-perp.
    """
    tag, n = f.tag, f.n
    a = float(a)
    if n != 2:
        raise NotImplementedError("second_int is implemented for n = 2")
    if method == "closed":
        direct = exact(h_layer(f, np.array([a]), 0.0, sign, tilde=False)[0], "closed-form b-integral")
    else:
        c, h = f.body.box(1e-16)
        R = float(np.max(np.abs(c) + h))
        R = R * (1.0 + R / abs(a))
        inner = spec or default_spec(rel_tol=1e-6, abs_tol=1e-10)

        def g(X):
            return np.array([omega(f, (a, float(b)), sign, inner).value for b in X[:, 0]]) * SD

        direct = integrate(g, line_spec(rel_tol=1e-6, abs_tol=1e-10).with_bounds([(-R, R)]))
    cols, pairs = _antidiag_chart(tag, n, lambda i, j: i + j >= n - 1)
    base = matrices_to_chart(tag, a * _e_matrix(n))[0]
    G = gram_B(tag, n)
    wv = matrices_to_chart(tag, weyl_longest(n) / a)[0]
    phase_vec = (wv @ G)[cols]
    formula = _linear_slice(f, base, cols, pairs, phase_vec, sign, spec,
                            abs(a) ** (1 - (n + n * n) / 2))
    return direct, formula


def verify_simple_inversion(f, a_values, sign=1, spec=None):
    """f_phi in all three modes at each a; residuals are pairwise differences."""
    rows = []
    for a in a_values:
        r = {m: f_phi(f, a, m, sign, spec) for m in ("definition", "v_formula", "inversion")}
        vals = [x.value for x in r.values()]
        errs = [x.err_est for x in r.values()]
        spread = max(abs(x - y) for x in vals for y in vals)
        rows.append({"a": [a], **{m: x.value for m, x in r.items()},
                     "residual": spread, "err": sum(errs),
                     "rel_residual": spread / max(abs(vals[0]), 1e-300),
                     "converged": all(x.converged for x in r.values())})
    return IdentityReport(rows, 1.0 + 0j, 1.0 + 0j)
