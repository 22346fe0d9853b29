"""Upper unipotent matrices over D, the character chi and the twisted action.

Chart of N^n(D) (real dimension n(n-1)), with the strict upper positions
(i, j) taken row-major:

* SPLIT: the entries of u1, then the entries of u2; the action is
  x1 -> u1^t x1 u2.
* COMPLEX: (Re u_ij, Im u_ij) per position; the action is x -> conj(u)^t x u.

The Haar measure used throughout is the self-dual one for psi(t) = e^{it}:
(2 pi)^(-1/2) per real chart coordinate, times 2 per complex entry (the
density of |dz ^ d zbar| on C).
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import COMPLEX, SPLIT, AlgebraTag, HermitianMatrix, _upper_pairs, matrices_to_chart

SD = (2 * np.pi) ** -0.5


def n_dim(n):
    return n * (n - 1)


def d_density(tag, entries):
    """Density of the D-Haar measure on ``entries`` copies of D."""
    return 2.0 ** entries if tag is COMPLEX else 1.0


def haar_density(tag, n):
    """Density of the Haar measure of N^n(D) against chart Lebesgue measure."""
    e = n * (n - 1) // 2
    return d_density(tag, e) * SD ** (2 * e)


def psi(t, sign=1):
    return np.exp(1j * sign * np.asarray(t))


def unipotent_mats(tag, n, U):
    """Chart batch (N, n(n-1)) -> left and right factors (L, R), each (N, n, n).

    The action is x -> L x R.
    """
    U = np.atleast_2d(np.asarray(U, dtype=float))
    N = U.shape[0]
    pairs = _upper_pairs(n)
    e = len(pairs)
    eye = np.broadcast_to(np.eye(n, dtype=np.complex128), (N, n, n))
    A = eye.copy()
    B = eye.copy()
    for k, (i, j) in enumerate(pairs):
        if tag is SPLIT:
            A[:, i, j] = U[:, k]
            B[:, i, j] = U[:, e + k]
        else:
            z = U[:, 2 * k] + 1j * U[:, 2 * k + 1]
            A[:, i, j] = np.conj(z)
            B[:, i, j] = z
    return np.transpose(A, (0, 2, 1)), B


def superdiag_trace(tag, n, U):
    """Sum over i of Tr_{D/R}(u_{i,i+1}) for each chart row."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    pairs = _upper_pairs(n)
    e = len(pairs)
    out = np.zeros(U.shape[0])
    for k, (i, j) in enumerate(pairs):
        if j == i + 1:
            out += U[:, k] + U[:, e + k] if tag is SPLIT else 2.0 * U[:, 2 * k]
    return out


def chi_batch(tag, n, U, sign=1):
    return psi(superdiag_trace(tag, n, U), sign)


def act_batch(tag, n, U, g):
    """Chart points of act(u, g) for every chart row u; g an (n, n) array."""
    L, R = unipotent_mats(tag, n, U)
    M = kernels.congruence(L, np.asarray(g, dtype=np.complex128), R)
    return matrices_to_chart(tag, M)


@dataclass(frozen=True)
class UnipotentCoord:
    tag: AlgebraTag
    n: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "tag", AlgebraTag.parse(self.tag))
        v = tuple(float(x) for x in self.values)
        if len(v) != n_dim(self.n):
            raise ValueError(f"expected {n_dim(self.n)} real coordinates")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_matrices(cls, tag, u1, u2=None):
        """From the strict upper entries of u (COMPLEX) or of (u1, u2) (SPLIT)."""
        tag = AlgebraTag.parse(tag)
        u1 = np.asarray(u1)
        n = u1.shape[0]
        pairs = _upper_pairs(n)
        if tag is SPLIT:
            vals = [u1[i, j].real for i, j in pairs] + [np.asarray(u2)[i, j].real for i, j in pairs]
        else:
            vals = []
            for i, j in pairs:
                vals += [u1[i, j].real, u1[i, j].imag]
        return cls(tag, n, vals)

    def array(self):
        return np.array(self.values)

    def matrices(self):
        """(u1, u2) for SPLIT, (u, u) for COMPLEX."""
        L, R = unipotent_mats(self.tag, self.n, self.array()[None])
        if self.tag is SPLIT:
            return L[0].T.real, R[0].real
        return R[0], R[0]

    def compose(self, other):
        """Coordinates of the product self * other."""
        a1, a2 = self.matrices()
        b1, b2 = other.matrices()
        return UnipotentCoord.from_matrices(self.tag, a1 @ b1, a2 @ b2)


def chi(tag, u, sign=1):
    return complex(chi_batch(AlgebraTag.parse(tag), u.n, u.array()[None], sign)[0])


def act(tag, u, x):
    """The twisted action of u on a HermitianMatrix x."""
    tag = AlgebraTag.parse(tag)
    L, R = unipotent_mats(tag, x.n, u.array()[None])
    M = kernels.congruence(L, x.entries.astype(np.complex128), R)[0]
    if tag is SPLIT:
        return HermitianMatrix(tag, M.real)
    dev = np.abs(M - M.conj().T).max()
    assert dev <= 1e-12 * max(1.0, np.abs(M).max()), "twisted action lost Hermitian symmetry"
    return HermitianMatrix.hermitize(tag, M)
