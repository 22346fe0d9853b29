"""Reference numpy implementations of the hot kernels."""
import numpy as np


def poly_gauss_eval(X, exps, coeffs, Q, mu, xi):
    """Evaluate sum_a c_a r^a * exp(-r.Q.r/2) * exp(i xi.x) with r = x - mu."""
    X = np.asarray(X, dtype=np.float64)
    R = X - mu
    quad = np.einsum("ni,ij,nj->n", R, Q, R)
    if exps.shape[1] == 0:
        poly = np.full(X.shape[0], coeffs.sum(), dtype=np.complex128)
    else:
        mono = np.prod(R[:, None, :] ** exps[None, :, :], axis=2)
        poly = mono @ coeffs
    return poly * np.exp(-0.5 * quad + 1j * (X @ xi))


def congruence(L, g, R):
    """Batched triple product L[k] @ g @ R[k]."""
    return np.einsum("nij,jk,nkl->nil", L, g, R)
