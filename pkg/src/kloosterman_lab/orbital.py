"""Kloosterman orbital integrals and the constants attached to them.

Omega(f)(a) = int_N f(conj(u)^t a u) chi(u) du over the upper unipotent
group, with the Haar measure described in ``unipotent``.  For a regular
torus point the integration runs over coordinates w in which the strict
upper entries of conj(u)^t a u are a_i w_ij; the change of variables is
unipotent-triangular (Jacobian 1) and turns the decay of f into a box.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import COMPLEX, SPLIT, AlgebraTag, HermitianMatrix, TorusPoint, _upper_pairs, block_embed
from .gaussian import complex_gaussian_integral
from .orbits import OrbitRep, is_relevant, stabilizer_lie
from .quadrature import QuadResult, QuadSpec, exact, integrate
from . import kernels
from .algebra import chart_to_matrices, matrices_to_chart
from .unipotent import SD, act_batch, chi_batch, d_density, haar_density, n_dim, psi, unipotent_mats

BOX_FACTOR = 1e-3


def default_spec(dim=2, **kw):
    base = dict(dim=dim, rel_tol=1e-8, abs_tol=1e-13, max_evals=3_000_000)
    base.update(kw)
    return QuadSpec(**base)


def _torus(a):
    return a if isinstance(a, TorusPoint) else TorusPoint(tuple(a))


def eta(tag, t):
    """eta_D: the sign character for C, trivial for R+R."""
    return float(np.sign(t)) if AlgebraTag.parse(tag) is COMPLEX else 1.0


def sigma_torus(a):
    d = np.cumprod(_torus(a).diag)
    return float(np.prod(d[:-1]))


def _box(f, spec):
    return f.body.box(spec.abs_tol * BOX_FACTOR)


def _w_to_u(tag, n, a, W):
    """Map w-coordinates to N-chart coordinates (see module docstring)."""
    pairs = _upper_pairs(n)
    e = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    N = W.shape[0]
    U = np.empty_like(W)
    if tag is SPLIT:
        u1 = np.zeros((N, n, n))
        u2 = np.zeros((N, n, n))
        for i in range(n):
            for j in range(i + 1, n):
                k = index[(i, j)]
                s2 = sum(u1[:, q, i] * a[q] * u2[:, q, j] for q in range(i)) if i else 0.0
                s1 = sum(u1[:, q, j] * a[q] * u2[:, q, i] for q in range(i)) if i else 0.0
                u2[:, i, j] = W[:, e + k] - s2 / a[i]
                u1[:, i, j] = W[:, k] - s1 / a[i]
                U[:, k] = u1[:, i, j]
                U[:, e + k] = u2[:, i, j]
        return U
    u = np.zeros((N, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(i + 1, n):
            k = index[(i, j)]
            s = sum(np.conj(u[:, q, i]) * a[q] * u[:, q, j] for q in range(i)) if i else 0.0
            u[:, i, j] = W[:, 2 * k] + 1j * W[:, 2 * k + 1] - s / a[i]
            U[:, 2 * k] = u[:, i, j].real
            U[:, 2 * k + 1] = u[:, i, j].imag
    return U


def _w_bounds(tag, n, a, center, half):
    """Box for the w-coordinates from the chart box of the integrand."""
    pairs = _upper_pairs(n)
    e = len(pairs)
    out = [None] * n_dim(n)

    def span(idx, ai):
        lo, hi = (center[idx] - half[idx]) / ai, (center[idx] + half[idx]) / ai
        return (min(lo, hi), max(lo, hi))

    for k, (i, j) in enumerate(pairs):
        if tag is SPLIT:
            out[k] = span(j * n + i, a[i])
            out[e + k] = span(i * n + j, a[i])
        else:
            out[2 * k] = span(n + 2 * k, a[i])
            out[2 * k + 1] = span(n + 2 * k + 1, a[i])
    return out


def omega(f, a, sign=1, spec=None):
    """Omega^psi(f)(a) for a regular torus point a."""
    a = _torus(a)
    n, tag = f.n, f.tag
    if a.n != n:
        raise ValueError("torus point has the wrong size")
    if n == 1:
        return exact(f(a.matrix(tag)), "N trivial")
    av = np.array(a.diag)
    g = np.diag(av)
    c, h = _box(f, spec or default_spec())
    spec = (spec or default_spec()).with_bounds(_w_bounds(tag, n, av, c, h))
    dens = haar_density(tag, n)

    def integrand(W):
        U = _w_to_u(tag, n, av, W)
        return f.eval_chart(act_batch(tag, n, U, g)) * chi_batch(tag, n, U, sign) * dens

    return integrate(integrand, spec)


def omega_tilde(f, a, sign=1, spec=None):
    a = _torus(a)
    s = sigma_torus(a)
    return omega(f, a, sign, spec).scaled(eta(f.tag, s) * abs(s))


def _offblock_layout(tag, n, i):
    """Chart indices in H^n of the off-diagonal block entries (Y variables)."""
    m = n - i
    pairs = _upper_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    cols = []
    if tag is SPLIT:
        for r in range(i):
            for c in range(m):
                cols.append((i + c) * n + r)  # Y1[r, c] = x1[i + c, r]
        for r in range(i):
            for c in range(m):
                cols.append(r * n + i + c)  # Y2[r, c] = x1[r, i + c]
    else:
        for r in range(i):
            for c in range(m):
                k = index[(r, i + c)]
                cols += [n + 2 * k, n + 2 * k + 1]
    return cols


def _intermediate_batch(tag, n, i, S, H, V, sign):
    """Stored matrices of conj(u)^t diag(s, h) u and the chi phase.

    ``S`` (N, i, i) and ``H`` (N, m, m) are per-point blocks, ``V`` carries
    the off-diagonal block Y = s X in the layout of ``_offblock_layout``.
    """
    m = n - i
    N = V.shape[0]
    Sinv = np.linalg.inv(S)
    if tag is SPLIT:
        Y1 = V[:, :i * m].reshape(N, i, m)
        Y2 = V[:, i * m:].reshape(N, i, m)
        M = np.empty((N, n, n))
        M[:, :i, :i] = S.real
        M[:, :i, i:] = Y2
        M[:, i:, :i] = np.transpose(Y1, (0, 2, 1))
        M[:, i:, i:] = H.real + np.einsum("nrc,nrq,nqd->ncd", Y1, Sinv.real, Y2)
        X1 = np.einsum("nqr,nqc->nrc", Sinv.real, Y1)  # s^-t Y1
        X2 = np.einsum("nrq,nqc->nrc", Sinv.real, Y2)
        phase = X1[:, i - 1, 0] + X2[:, i - 1, 0]
    else:
        Y = (V[:, 0::2] + 1j * V[:, 1::2]).reshape(N, i, m)
        M = np.empty((N, n, n), dtype=np.complex128)
        M[:, :i, :i] = S
        M[:, :i, i:] = Y
        M[:, i:, :i] = np.conj(np.transpose(Y, (0, 2, 1)))
        M[:, i:, i:] = H + np.einsum("nrc,nrq,nqd->ncd", np.conj(Y), Sinv, Y)
        phase = 2.0 * np.einsum("nq,nq->n", Sinv[:, i - 1, :], Y[:, :, 0]).real
    return M, psi(phase, sign)


def _inner_density(tag, i, m):
    return d_density(tag, i * m) * SD ** (2 * i * m)


def omega_intermediate(f, i, s, h, sign=1, spec=None):
    """Omega_i^psi(f)(s, h): integral over N_i = [[1, X], [0, 1]].

    The integration variable is the off-diagonal block Y = s X of
    conj(u)^t diag(s, h) u, so the Jacobian |det s|^(-2(n-i)) appears.
    """
    tag, n = f.tag, f.n
    m = n - i
    if not 1 <= i <= n - 1 or s.n != i or h.n != m:
        raise ValueError("block sizes do not match n and i")
    det_s = float(np.real(np.linalg.det(s.entries)))
    if det_s == 0:
        raise ValueError("s must be invertible")
    cols = _offblock_layout(tag, n, i)
    c, hw = _box(f, spec or default_spec())
    spec = (spec or default_spec()).with_bounds([(c[k] - hw[k], c[k] + hw[k]) for k in cols])
    dens = _inner_density(tag, i, m) / abs(det_s) ** (2 * m)
    S0 = np.asarray(s.entries, dtype=np.complex128)[None]
    H0 = np.asarray(h.entries, dtype=np.complex128)[None]

    def integrand(V):
        N = V.shape[0]
        M, ph = _intermediate_batch(tag, n, i, np.repeat(S0, N, 0), np.repeat(H0, N, 0), V, sign)
        return f.eval_chart(matrices_to_chart(tag, M)) * ph * dens

    return integrate(integrand, spec)


def omega_tilde_intermediate(f, i, s, h, sign=1, spec=None):
    d = float(np.real(np.linalg.det(s.entries)))
    k = f.n - i
    return omega_intermediate(f, i, s, h, sign, spec).scaled((eta(f.tag, d) * abs(d)) ** k)


def omega_composed(f, i, a, sign=1, spec=None):
    """Omega-tilde^{i, n-i} applied to Omega-tilde_i(f), at the torus point a.

    Evaluated as one joint integral: w-coordinates on the two diagonal
    blocks outside, the off-diagonal block Y = s X inside.
    """
    a = _torus(a)
    tag, n = f.tag, f.n
    m = n - i
    av = np.array(a.diag)
    a1, a2 = av[:i], av[i:]
    c, hw = _box(f, spec or default_spec())
    # outer boxes from the block entries of x (h gets twice the room)
    D = n_dim(i) + n_dim(m)
    idx1 = _block_chart(tag, n, 0, i)
    idx2 = _block_chart(tag, n, i, m)
    bounds = []
    if i > 1:
        bounds += _w_bounds(tag, i, a1, c[idx1], hw[idx1])
    if m > 1:
        bounds += _w_bounds(tag, m, a2, c[idx2], 2 * hw[idx2])
    cols = _offblock_layout(tag, n, i)
    bounds += [(c[k] - hw[k], c[k] + hw[k]) for k in cols]
    det_a1 = float(np.prod(a1))
    dens = (haar_density(tag, i) * haar_density(tag, m) * _inner_density(tag, i, m)
            / abs(det_a1) ** (2 * m))
    scale = 1.0
    for p in (a1, a2):
        sg = float(np.prod(np.cumprod(p)[:-1]))
        scale *= eta(tag, sg) * abs(sg)
    scale *= (eta(tag, det_a1) * abs(det_a1)) ** m
    d1 = n_dim(i)

    def block(na, ad, W):
        N = W.shape[0]
        if na == 1:
            return np.full((N, 1, 1), ad[0], dtype=np.complex128), np.ones(N, dtype=np.complex128)
        U = _w_to_u(tag, na, ad, W)
        L, R = unipotent_mats(tag, na, U)
        return kernels.congruence(L, np.diag(ad).astype(np.complex128), R), chi_batch(tag, na, U, sign)

    def integrand(Z):
        S, p1 = block(i, a1, Z[:, :d1])
        H, p2 = block(m, a2, Z[:, d1:D])
        M, p3 = _intermediate_batch(tag, n, i, S, H, Z[:, D:], sign)
        return f.eval_chart(matrices_to_chart(tag, M)) * p1 * p2 * p3 * dens

    return integrate(integrand, (spec or default_spec()).with_bounds(bounds)).scaled(scale)


def _block_chart(tag, n, start, size):
    """Chart indices in H^n of the diagonal block [start:start+size]^2, in H^size order."""
    out = []
    for k in range(size * size):
        e = np.zeros((1, size * size))
        e[0, k] = 1.0
        Msub = chart_to_matrices(tag, size, e)[0]
        Mfull = np.zeros((n, n), dtype=np.complex128)
        Mfull[start:start + size, start:start + size] = Msub
        v = matrices_to_chart(tag, Mfull)[0]
        out.append(int(np.argmax(np.abs(v))))
    return np.array(out)


def omega_multi(F, tag, points, sign=1, spec=None, entry_bound=8.0, tilde=False):
    """Product-group integral over N^{n_1} x ... x N^{n_k}.

    ``F`` maps an (N, sum n_j^2) array of concatenated block charts to
    complex values; ``points`` are torus points of sizes n_1..n_k.  With
    ``tilde`` the result carries the product of the blockwise Omega-tilde
    factors.
    """
    tag = AlgebraTag.parse(tag)
    points = [_torus(p) for p in points]
    sizes = [p.n for p in points]
    offsets = np.cumsum([0] + [n_dim(n) for n in sizes])
    bounds = []
    for p in points:
        av = np.array(p.diag)
        d = p.n * p.n
        if p.n > 1:
            bounds += _w_bounds(tag, p.n, av, np.zeros(d), np.full(d, float(entry_bound)))
    dens = np.prod([haar_density(tag, n) for n in sizes])
    scale = 1.0
    if tilde:
        for p in points:
            sg = sigma_torus(p)
            scale *= eta(tag, sg) * abs(sg)

    def integrand(W):
        N = W.shape[0]
        charts, phase = [], np.ones(N, dtype=np.complex128)
        for k, p in enumerate(points):
            av = np.array(p.diag)
            Wk = W[:, offsets[k]:offsets[k + 1]]
            if p.n == 1:
                charts.append(np.repeat(av[None], N, axis=0))
                continue
            U = _w_to_u(tag, p.n, av, Wk)
            charts.append(act_batch(tag, p.n, U, np.diag(av)))
            phase = phase * chi_batch(tag, p.n, U, sign)
        return np.asarray(F(np.concatenate(charts, axis=1))) * phase * dens

    if not bounds:
        return exact(complex(integrand(np.zeros((1, 0)))[0]) * scale, "pointwise evaluation")
    spec = (spec or default_spec()).with_bounds(bounds)
    return integrate(integrand, spec).scaled(scale)


def _probe_bounds(f, tag, n, g, comp, tol, directions=512):
    """Symmetric box for the quotient coordinates.

    The radius is the first T on a doubling ladder, past every shell where
    mass was seen, such that |f| < tol on the shell T <= |v|_max <= 8T.
    Shells are probed along the axes and along a fixed set of directions
    (mass can sit on curved sets away from every axis, and away from the
    origin when the representative is large).
    """
    D = n_dim(n)
    d = len(comp)
    rng = np.random.default_rng(0)
    dirs = rng.uniform(-1.0, 1.0, (directions, d))
    dirs /= np.abs(dirs).max(axis=1, keepdims=True)
    dirs = np.vstack([dirs, np.eye(d), -np.eye(d)])
    radii = np.linspace(1.0, 8.0, 15)
    ladder = 0.25 * 2.0 ** np.arange(24)
    chosen, seen = None, False
    for T in ladder:
        V = (dirs[:, None, :] * (T * radii)[None, :, None]).reshape(-1, d)
        U = np.zeros((V.shape[0], D))
        U[:, comp] = V
        if np.abs(f.eval_chart(act_batch(tag, n, U, g))).max() >= tol:
            seen = True
        elif seen:
            chosen = T
            break
    if chosen is None:  # nothing above tol anywhere, or mass at every scale
        chosen = ladder[0] if not seen else ladder[-1]
    return [(-chosen, chosen)] * d


def omega_singular(f, rep, sign=1, spec=None):
    """Omega(f, g) over N / N_g for a relevant block representative g.

    The quotient is parametrized by the chart coordinates complementary to
    the row-echelon pivots of Lie(N_g), with the N density restricted to
    them.
    """
    tag, n = f.tag, f.n
    if rep.n != n or rep.tag is not tag:
        raise ValueError("representative does not match the function")
    gm = rep.materialize()
    if not is_relevant(gm):
        raise IrrelevantOrbitError(f"representative {rep.blocks} is not relevant")
    g = rep.matrix()
    if n == 1:
        return exact(f(gm), "N trivial")
    st = stabilizer_lie(gm)
    comp = st.complement()
    D = n_dim(n)
    dens = d_density(tag, n * (n - 1) // 2) * SD ** len(comp)
    spec = spec or default_spec()
    bounds = _probe_bounds(f, tag, n, g, comp, spec.abs_tol * BOX_FACTOR)

    def integrand(V):
        U = np.zeros((V.shape[0], D))
        U[:, comp] = V
        return f.eval_chart(act_batch(tag, n, U, g)) * chi_batch(tag, n, U, sign) * dens

    if not comp:
        return exact(complex(integrand(np.zeros((1, 0)))[0]), "quotient is a point")
    return integrate(integrand, spec.with_bounds(bounds))


class IrrelevantOrbitError(ValueError):
    pass


def transfer_factor(a):
    """gamma(a) = prod over k < n of sign(a_1 ... a_k)."""
    a = _torus(a)
    return int(np.prod(np.sign(np.cumprod(a.diag)[:-1]))) if a.n > 1 else 1


def weil_value(tag, sign=1):
    """The Weil constant attached to psi^sign (exact value)."""
    tag = AlgebraTag.parse(tag)
    return 1.0 + 0j if tag is SPLIT else 1j * sign


def _gamma_blocks(blocks, sign):
    n = sum(m for m, _ in blocks)
    if len(blocks) == 1:
        m, a = blocks[0]
        if m == 1:
            return 1.0 + 0j
        inner = _gamma_blocks([(m - 1, -1.0 / a)], -sign)
        det = (-1.0 / a) ** (m - 1) * (-1) ** ((m - 1) * (m - 2) // 2)
        return inner * weil_value(COMPLEX, sign) ** (m * (m - 1) // 2) * np.sign(det)
    (m, a), rest = blocks[0], blocks[1:]
    det_x = a ** m * (-1) ** (m * (m - 1) // 2)
    return _gamma_blocks([(m, a)], sign) * _gamma_blocks(rest, sign) * np.sign(det_x) ** (n - m)


def transfer_factor_extended(rep, sign=1):
    """gamma(g) for a block representative, by recursion on the blocks."""
    if not isinstance(rep, OrbitRep):
        raise TypeError("expected an OrbitRep")
    val = complex(_gamma_blocks(list(rep.blocks), sign))
    assert abs(val ** 4 - 1) < 1e-12, "extended transfer factor is not a fourth root of unity"
    return val


def period8_table(a, sign=1):
    """The closed-form values of gamma(a w_n) for n = 1..8."""
    c = weil_value(COMPLEX, sign)
    s = float(np.sign(a))
    return [1, c * -s, s, 1, -1, c * -s, -s, 1]


@dataclass(frozen=True)
class WeilConstant:
    tag: AlgebraTag
    value: complex
    determined_numerically: bool
    raw: complex = 0j
    residual: float = 0.0
    spread: float = 0.0

    def to_json(self):
        return {"tag": self.tag.value, "value": [self.value.real, self.value.imag],
                "raw": [self.raw.real, self.raw.imag], "residual": self.residual,
                "spread": self.spread, "determined_numerically": self.determined_numerically}


def _d_form(tag):
    """Chart data of D: (Gram of Tr(x conj y), norm form x conj x as a matrix)."""
    if tag is COMPLEX:
        return 2.0 * np.eye(2), np.eye(2)
    return np.array([[0.0, 1.0], [1.0, 0.0]]), np.array([[0.0, 0.5], [0.5, 0.0]])


class WeilConstantError(RuntimeError):
    pass


def weil_pairing_ratio(tag, a, eps, sign=1, spec=None):
    """Numeric c from the pairing of F(psi(a x xbar)) with a Gaussian of width eps."""
    tag = AlgebraTag.parse(tag)
    G, Nq = _d_form(tag)
    meas = np.sqrt(abs(np.linalg.det(G))) / (2 * np.pi)
    GG = G @ G
    R = 10.0 * np.sqrt(max(eps, 1.0 / eps))
    spec = (spec or default_spec(2, rel_tol=1e-10)).with_bounds([(-R, R), (-R, R)])

    def q(X):
        return np.einsum("ni,ij,nj->n", X, Nq, X)

    def lhs_f(X):  # psi(a q(x)) times the transform of exp(-eps |x|^2 / 2)
        phi_hat = np.sqrt(abs(np.linalg.det(G))) / eps * np.exp(-0.5 * np.einsum("ni,ij,nj->n", X, GG, X) / eps)
        return psi(a * q(X), sign) * phi_hat * meas

    def rhs_f(X):
        return psi(-q(X) / a, sign) * np.exp(-0.5 * eps * np.sum(X * X, axis=1)) * meas

    lhs = integrate(lhs_f, spec)
    rhs = integrate(rhs_f, spec)
    pref = eta(tag, a) / abs(a)
    return lhs.value / (pref * rhs.value), lhs, rhs


def weil_pairing_closed(tag, a, eps, sign=1):
    """Closed-form version of ``weil_pairing_ratio`` (test oracle)."""
    tag = AlgebraTag.parse(tag)
    G, Nq = _d_form(tag)
    meas = np.sqrt(abs(np.linalg.det(G))) / (2 * np.pi)
    amp = np.sqrt(abs(np.linalg.det(G))) / eps
    lhs = amp * meas * complex_gaussian_integral(G @ G / eps - 2j * sign * a * Nq, np.zeros(2))
    rhs = meas * complex_gaussian_integral(eps * np.eye(2) + 2j * sign * Nq / a, np.zeros(2))
    return lhs / (eta(tag, a) / abs(a) * rhs)


def weil_constant(tag, sign=1, a_values=(1.3, -0.7), eps_values=(1.0, 0.5, 0.25), spec=None):
    """Determine c(D, psi^sign) numerically and snap it to a fourth root of unity."""
    tag = AlgebraTag.parse(tag)
    vals = [weil_pairing_ratio(tag, a, e, sign, spec)[0] for a in a_values for e in eps_values]
    raw = complex(np.mean(vals))
    spread = float(max(abs(v - raw) for v in vals))
    if tag is SPLIT:
        snapped = 1.0 + 0j
        residual = abs(raw - 1.0)
    else:
        snapped = min((1j, -1j), key=lambda c: abs(raw - c))
        residual = abs(raw * raw + 1.0)
    if residual > 1e-3:
        raise WeilConstantError(f"numeric Weil constant {raw} is not a valid value (residual {residual:.2e})")
    return WeilConstant(tag, snapped, True, raw, float(residual), spread)


def verify_factorization(f, i, samples, sign=1, spec=None, composed_spec=None, method="auto"):
    """Omega-tilde(f)(a) against Omega-tilde^{i,n-i}(Omega-tilde_i f)(a).

    ``nested`` evaluates the inner intermediate integral once per outer
    quadrature node (practical when the outer blocks are 1x1); ``joint``
    uses one integral over all variables.  ``auto`` picks nested for n <= 2.
    """
    from .report import IdentityReport, identity_row
    tag, n = f.tag, f.n
    if not 1 <= i < n:
        raise ValueError("need 1 <= i < n")
    if method == "auto":
        method = "nested" if n <= 2 else "joint"
    rows = []
    for a in samples:
        a = _torus(a)
        lhs = omega_tilde(f, a, sign, spec)
        if method == "joint":
            rhs = omega_composed(f, i, a, sign, composed_spec)
        else:
            a1, a2 = TorusPoint(a.diag[:i]), TorusPoint(a.diag[i:])

            def inner(Z):
                out = []
                for z in Z:
                    s_ = HermitianMatrix.from_chart(tag, i, z[:i * i])
                    h_ = HermitianMatrix.from_chart(tag, n - i, z[i * i:])
                    out.append(omega_tilde_intermediate(f, i, s_, h_, sign, composed_spec).value)
                return np.array(out)

            rhs = omega_multi(inner, tag, [a1, a2], sign, composed_spec,
                              f.body.entry_bound(1e-14), tilde=True)
        rows.append(identity_row(a.diag, lhs, rhs, 1.0))
    return IdentityReport(rows, None, 1.0 + 0j)


def match_residual(phi, psi_fn, samples, spec=None):
    """Per-sample |Omega(Phi)(a) - gamma(a) Omega(Psi)(a)| for SPLIT Phi and COMPLEX Psi."""
    if phi.tag is not SPLIT or psi_fn.tag is not COMPLEX or phi.n != psi_fn.n:
        raise ValueError("need a SplitRR and a ComplexC function of the same size")
    rows = []
    for a in samples:
        a = _torus(a)
        r1 = omega(phi, a, 1, spec)
        r2 = omega(psi_fn, a, 1, spec)
        g = transfer_factor(a)
        rows.append({"a": list(a.diag), "omega_split": r1, "omega_complex": r2, "gamma": g,
                     "residual": abs(r1.value - g * r2.value), "err": r1.err_est + r2.err_est,
                     "converged": r1.converged and r2.converged})
    return {"samples": rows, "max_residual": max((r["residual"] for r in rows), default=0.0)}


__all__ = [
    "omega", "omega_tilde", "omega_intermediate", "omega_tilde_intermediate", "omega_multi",
    "omega_singular", "transfer_factor", "transfer_factor_extended", "weil_constant",
    "weil_value", "match_residual", "verify_factorization", "eta", "sigma_torus", "default_spec", "WeilConstant",
    "IrrelevantOrbitError", "WeilConstantError", "QuadSpec", "QuadResult", "HermitianMatrix",
]
