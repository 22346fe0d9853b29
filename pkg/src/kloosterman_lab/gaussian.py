"""Closed-form Gaussian integrals with complex symmetric quadratic part."""
import numpy as np


def sqrt_det(A):
    """Branch of det(A)^(1/2) continuous along A_t = Re A + t i Im A.

    Requires Re A positive definite.  With Re A = L L^t the eigenvalues
    k of L^-1 (Im A) L^-t are real and det A = det(Re A) prod(1 + i k).
    """
    A = np.asarray(A, dtype=np.complex128)
    P = 0.5 * (A.real + A.real.T)
    S = 0.5 * (A.imag + A.imag.T)
    L = np.linalg.cholesky(P)
    K = np.linalg.solve(L, np.linalg.solve(L, S).T)
    kappa = np.linalg.eigvalsh(0.5 * (K + K.T))
    return np.prod(np.diag(L)) * np.prod(np.sqrt(1.0 + 1j * kappa))


def complex_gaussian_integral(A, b, c=0.0):
    """Integral over R^k of exp(-v.A.v/2 + b.v + c), Re A positive definite."""
    A = np.asarray(A, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    k = A.shape[0]
    if k == 0:
        return complex(np.exp(c))
    x = np.linalg.solve(A, b)
    return complex((2 * np.pi) ** (k / 2) / sqrt_det(A) * np.exp(0.5 * b @ x + c))


def sqrt_det_batch(A):
    """``sqrt_det`` over a stack (N, k, k)."""
    A = np.asarray(A, dtype=np.complex128)
    if A.shape[-1] == 0:
        return np.ones(A.shape[0], dtype=np.complex128)
    P = 0.5 * (A.real + np.swapaxes(A.real, 1, 2))
    S = 0.5 * (A.imag + np.swapaxes(A.imag, 1, 2))
    L = np.linalg.cholesky(P)
    K = np.linalg.solve(L, np.swapaxes(np.linalg.solve(L, S), 1, 2))
    kappa = np.linalg.eigvalsh(0.5 * (K + np.swapaxes(K, 1, 2)))
    diag = np.diagonal(L, axis1=1, axis2=2)
    return np.prod(diag, axis=1) * np.prod(np.sqrt(1.0 + 1j * kappa), axis=1)


def symmetric_factor(C):
    """M with M M^t = C for a stack of complex symmetric C (unpivoted LDL^t).

    The leading minors are nonzero whenever Re C is positive definite.
    """
    C = np.array(C, dtype=np.complex128)
    N, k, _ = C.shape
    L = np.zeros_like(C)
    d = np.zeros((N, k), dtype=np.complex128)
    for j in range(k):
        d[:, j] = C[:, j, j] - np.einsum("nq,nq,nq->n", L[:, j, :j], L[:, j, :j], d[:, :j])
        L[:, j, j] = 1.0
        for r in range(j + 1, k):
            L[:, r, j] = (C[:, r, j] - np.einsum("nq,nq,nq->n", L[:, r, :j], L[:, j, :j], d[:, :j])) / d[:, j]
    return L * np.sqrt(d)[:, None, :]


def hermite_nodes(k, degree):
    """Tensor Gauss-Hermite (probabilists') nodes and weights, exact to ``degree``."""
    m = degree // 2 + 1
    x, w = np.polynomial.hermite_e.hermegauss(m)
    w = w / w.sum()
    grids = np.meshgrid(*([x] * k), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1) if k else np.zeros((1, 0))
    W = np.ones(1)
    for _ in range(k):
        W = np.multiply.outer(W, w).ravel()
    return nodes, W


def closed_form_affine_integral(cf, x0, L, A_e=None, b_e=None, c_e=None):
    """Integral over r in R^k of cf(x0 + L r) exp(-r.A_e.r/2 + b_e.r + c_e).

    ``cf`` is a ClosedForm on R^d; x0 is (N, d), L is (N, d, k) and the
    extra Gaussian data are batched likewise.  Re of the total quadratic
    part must be positive definite at every batch entry.
    """
    x0 = np.asarray(x0, dtype=float)
    N, d = x0.shape
    L = np.broadcast_to(np.asarray(L, dtype=float), (N, d, np.shape(L)[-1]))
    k = L.shape[2]
    A_e = np.zeros((N, k, k)) if A_e is None else np.broadcast_to(A_e, (N, k, k))
    b_e = np.zeros((N, k)) if b_e is None else np.broadcast_to(b_e, (N, k))
    c_e = np.zeros(N) if c_e is None else np.broadcast_to(c_e, (N,))
    Q, mu, xi = cf.Q, cf.mu, cf.xi
    z0 = x0 - mu
    LtQ = np.einsum("ndk,de->nke", L, Q)
    A = np.einsum("nke,nej->nkj", LtQ, L) + A_e
    b = -np.einsum("nke,ne->nk", LtQ, z0) + 1j * np.einsum("ndk,d->nk", L, xi) + b_e
    c = -0.5 * np.einsum("nd,de,ne->n", z0, Q, z0) + 1j * (x0 @ xi) + c_e
    rstar = np.linalg.solve(A, b[..., None])[..., 0]
    gauss = (2 * np.pi) ** (k / 2) / sqrt_det_batch(A) * np.exp(0.5 * np.einsum("nk,nk->n", b, rstar) + c)
    if cf.poly.is_constant():
        return gauss * cf.poly.constant_term()
    M = symmetric_factor(np.linalg.inv(A))
    nodes, W = hermite_nodes(k, cf.poly.degree())
    centre = z0 + np.einsum("ndk,nk->nd", L, rstar)
    LM = np.einsum("ndk,nkj->ndj", L, M)
    pts = centre[:, None, :] + np.einsum("ndj,mj->nmd", LM, nodes)
    vals = cf.poly(pts.reshape(-1, d)).reshape(N, -1)
    return gauss * (vals @ W)
