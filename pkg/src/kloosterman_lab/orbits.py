"""Stabilizers, relevance and canonical representatives of N-orbits.

Relevance is tested on the Lie algebra: stabilizers of unipotent group
actions are connected, so chi is trivial on N_g exactly when its
differential vanishes on Lie(N_g).
"""
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import least_squares

from .algebra import COMPLEX, SPLIT, AlgebraTag, HermitianMatrix, matrices_to_chart, weyl_longest
from .unipotent import UnipotentCoord, act_batch, n_dim, superdiag_trace, unipotent_mats

RANK_TOL = 1e-10
CANON_TOL = 1e-9


@dataclass(frozen=True)
class OrbitRep:
    """Block anti-diagonal representative diag(a_1 w_{m_1}, ..., a_k w_{m_k})."""

    tag: AlgebraTag
    blocks: tuple
    singular: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tag", AlgebraTag.parse(self.tag))
        blocks = tuple((int(m), float(a)) for m, a in self.blocks)
        if not blocks or any(m < 1 for m, _ in blocks):
            raise ValueError("blocks must be a nonempty list of (size >= 1, value)")
        zeros = [k for k, (m, a) in enumerate(blocks) if a == 0.0]
        if zeros:
            if zeros != [len(blocks) - 1] or blocks[-1][0] != 1 or len(blocks) < 2:
                raise ValueError("only a trailing 1x1 zero block is allowed (n >= 2)")
            if not self.singular:
                raise ValueError("zero block requires the singular flag")
        elif self.singular:
            raise ValueError("singular flag set without a zero block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self):
        return sum(m for m, _ in self.blocks)

    def matrix(self):
        n = self.n
        out = np.zeros((n, n))
        k = 0
        for m, a in self.blocks:
            out[k:k + m, k:k + m] = a * weyl_longest(m)
            k += m
        return out

    def materialize(self):
        return HermitianMatrix(self.tag, self.matrix())

    def isclose(self, other, tol=1e-8):
        """Same tag, shapes and singular flag; values equal to ``tol`` (relative)."""
        if self.tag is not other.tag or self.singular != other.singular:
            return False
        if [m for m, _ in self.blocks] != [m for m, _ in other.blocks]:
            return False
        return all(abs(a - b) <= tol * max(1.0, abs(a)) for (_, a), (_, b) in zip(self.blocks, other.blocks))

    def to_json(self):
        return {"tag": self.tag.value, "blocks": [[m, a] for m, a in self.blocks],
                "singular": self.singular}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["tag"], [tuple(b) for b in obj["blocks"]], bool(obj.get("singular", False)))


@dataclass(frozen=True, eq=False)
class StabilizerBasis:
    """Basis of Lie(N_g) as rows in the N chart, plus the same as matrices."""

    tag: AlgebraTag
    n: int
    chart: np.ndarray

    @property
    def dim(self):
        return self.chart.shape[0]

    def matrices(self):
        """Strict upper matrices: X for COMPLEX, (X1, X2) pairs for SPLIT."""
        out = []
        for row in self.chart:
            L, R = unipotent_mats(self.tag, self.n, row[None])
            X = R[0] - np.eye(self.n)
            if self.tag is SPLIT:
                out.append((L[0].T.real - np.eye(self.n), X.real))
            else:
                out.append(X)
        return out

    def pivots(self):
        """Pivot columns of a row echelon form of the basis (partial pivoting)."""
        A = self.chart.copy()
        piv = []
        r = 0
        for c in range(A.shape[1]):
            if r == A.shape[0]:
                break
            k = r + int(np.argmax(np.abs(A[r:, c])))
            if abs(A[k, c]) <= 1e-9:
                continue
            A[[r, k]] = A[[k, r]]
            A[r] /= A[r, c]
            for q in range(A.shape[0]):
                if q != r:
                    A[q] -= A[q, c] * A[r]
            piv.append(c)
            r += 1
        return piv

    def complement(self):
        piv = set(self.pivots())
        return [c for c in range(self.chart.shape[1]) if c not in piv]


def _lie_map(tag, n, g):
    """Real matrix of X -> conj(X)^t g + g X from the N chart to the H chart."""
    D = n_dim(n)
    g = np.asarray(g, dtype=np.complex128)
    cols = []
    for k in range(D):
        e = np.zeros((1, D))
        e[0, k] = 1.0
        L, R = unipotent_mats(tag, n, e)
        XL = L[0] - np.eye(n)
        XR = R[0] - np.eye(n)
        cols.append(matrices_to_chart(tag, XL @ g + g @ XR)[0])
    return np.array(cols).T if cols else np.zeros((n * n, 0))


def stabilizer_lie(g):
    tag, n = g.tag, g.n
    A = _lie_map(tag, n, g.entries)
    D = A.shape[1]
    if D == 0:
        return StabilizerBasis(tag, n, np.zeros((0, 0)))
    _, s, Vt = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > RANK_TOL * smax)) if smax > 0 else 0
    basis = Vt[rank:]
    return StabilizerBasis(tag, n, basis.copy())


def is_relevant(g):
    st = stabilizer_lie(g)
    if st.dim == 0:
        return True
    dchi = superdiag_trace(g.tag, g.n, st.chart)
    return bool(np.all(np.abs(dchi) <= 1e-9))


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def relevant_representatives(tag, n, grid, include_singular=False):
    """All block-form representatives with values from ``grid``.

    Singular variants are compositions of n-1 followed by a 1x1 zero block
    (none for n = 1).
    """
    tag = AlgebraTag.parse(tag)
    grid = [float(v) for v in grid]
    if not grid or any(v == 0 for v in grid):
        raise ValueError("grid must be a nonempty list of nonzero reals")
    reps = []
    for comp in compositions(n):
        for vals in product(grid, repeat=len(comp)):
            reps.append(OrbitRep(tag, tuple(zip(comp, vals))))
    if include_singular and n >= 2:
        for comp in compositions(n - 1):
            for vals in product(grid, repeat=len(comp)):
                reps.append(OrbitRep(tag, tuple(zip(comp, vals)) + ((1, 0.0),), True))
    for r in reps:
        if not is_relevant(r.materialize()):
            raise AssertionError(f"block representative {r.blocks} is not relevant")
    return reps


def duplicate_reps(reps):
    """Pairs of indices whose representatives materialize to the same matrix."""
    seen = {}
    dups = []
    for k, r in enumerate(reps):
        key = (r.tag, r.matrix().tobytes())
        if key in seen:
            dups.append((seen[key], k))
        else:
            seen[key] = k
    return dups


def lpu(x, tol=None):
    """x = L P U with L lower unipotent, U upper unipotent, P partial monomial.

    Row pass from the top: the leftmost surviving entry of each row is a
    pivot; later columns of that row are cleared by column operations and
    later rows of that column by row operations.
    """
    A = np.array(x, dtype=np.complex128)
    n = A.shape[0]
    scale = max(1.0, np.abs(A).max())
    tol = CANON_TOL * scale if tol is None else tol
    L = np.eye(n, dtype=np.complex128)
    U = np.eye(n, dtype=np.complex128)
    for i in range(n):
        nz = np.flatnonzero(np.abs(A[i]) > tol)
        if nz.size == 0:
            A[i] = 0
            continue
        j = nz[0]
        A[i, :j] = 0
        p = A[i, j]
        for k in range(j + 1, n):
            c = A[i, k] / p
            if c != 0:
                A[:, k] -= c * A[:, j]
                U[j] += c * U[k]
        for r in range(i + 1, n):
            c = A[r, j] / p
            if c != 0:
                A[r] -= c * A[i]
                L[:, i] += c * L[:, r]
    A[np.abs(A) <= tol] = 0
    return L, A, U


def _parse_blocks(P, tol):
    n = P.shape[0]
    blocks = []
    i = 0
    while i < n:
        nz = np.flatnonzero(np.abs(P[i]) > tol)
        if nz.size == 0:
            if i != n - 1 or np.any(np.abs(P[:, i]) > tol) or n < 2:
                return None
            blocks.append((1, 0.0))
            i += 1
            continue
        if nz.size != 1 or nz[0] < i:
            return None
        m = nz[0] - i + 1
        a = P[i, nz[0]]
        if abs(a.imag) > tol:
            return None
        expect = np.zeros((n, n), dtype=np.complex128)
        expect[i:i + m, i:i + m] = a.real * weyl_longest(m)
        rows = slice(i, i + m)
        if np.abs(P[rows] - expect[rows]).max() > tol:
            return None
        blocks.append((m, float(a.real)))
        i += m
    return blocks


def find_conjugator(rep, x, guess=None):
    """u with act(u, rep) close to x, by least squares; returns (u, residual)."""
    tag, n = x.tag, x.n
    g = rep.matrix()
    target = x.chart()
    D = n_dim(n)
    u0 = np.zeros(D) if guess is None else np.asarray(guess, dtype=float)

    def resid(u):
        return act_batch(tag, n, u[None], g)[0] - target

    if D == 0:
        return UnipotentCoord(tag, n, ()), float(np.abs(resid(u0)).max())
    sol = least_squares(resid, u0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    return UnipotentCoord(tag, n, sol.x), float(np.abs(resid(sol.x)).max())


def _guess_from_lpu(tag, L, U):
    n = U.shape[0]
    if tag is SPLIT:
        return UnipotentCoord.from_matrices(tag, L.T.real, U.real).array()
    return UnipotentCoord.from_matrices(tag, U).array()


def canonical_form(x):
    """The block representative in the N-orbit of x, or None if x is irrelevant."""
    if x.n > 3:
        raise NotImplementedError("canonical_form is implemented for n <= 3")
    scale = max(1.0, float(np.abs(x.entries).max()))
    tol = CANON_TOL * scale
    L, P, U = lpu(x.entries, tol)
    blocks = _parse_blocks(P, tol)
    if blocks is None:
        return None
    singular = blocks[-1][1] == 0.0
    rep = OrbitRep(x.tag, blocks, singular)
    if not is_relevant(rep.materialize()):
        return None
    _, res = find_conjugator(rep, x, _guess_from_lpu(x.tag, L, U))
    if res > 1e-8 * scale:
        raise RuntimeError(f"orbit reduction failed to reproduce the input (residual {res:.2e})")
    return rep
