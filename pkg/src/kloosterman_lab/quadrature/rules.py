"""Basic cubature rules on [-1, 1]^d."""
from functools import lru_cache
from itertools import combinations, product

import numpy as np

# Gauss-Kronrod 7/15 on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])


@lru_cache(maxsize=None)
def gauss_kronrod15():
    """Nodes, Kronrod weights and embedded Gauss weights (zero off-grid)."""
    x = np.concatenate([-_XGK[:-1], _XGK[::-1]])
    wk = np.concatenate([_WGK[:-1], _WGK[::-1]])
    wg = np.zeros(15)
    # Gauss nodes are the odd-indexed Kronrod nodes 1, 3, 5 and the centre
    g_full = np.concatenate([_WG[:-1], _WG[::-1]])
    wg[1::2] = g_full
    return x, wk, wg


@lru_cache(maxsize=None)
def genz_malik(d):
    """Genz-Malik degree 7 rule with embedded degree 5 rule on [-1,1]^d.

    Returns nodes (m, d), normalized weights w7 and w5 (each summing to 1)
    and the index groups used for the fourth-difference axis choice.
    """
    l2 = np.sqrt(9 / 70)
    l3 = np.sqrt(9 / 10)
    l4 = np.sqrt(9 / 10)
    l5 = np.sqrt(9 / 19)
    pts = [np.zeros(d)]
    w7 = [(12824 - 9120 * d + 400 * d * d) / 19683]
    w5 = [(729 - 950 * d + 50 * d * d) / 729]
    plus2, minus2, plus3, minus3 = [], [], [], []
    for i in range(d):
        for lam, wa, wb, pl, mi in ((l2, 980 / 6561, 245 / 486, plus2, minus2),
                                    (l3, (1820 - 400 * d) / 19683, (265 - 100 * d) / 1458, plus3, minus3)):
            for s, lst in ((1, pl), (-1, mi)):
                p = np.zeros(d)
                p[i] = s * lam
                lst.append(len(pts))
                pts.append(p)
                w7.append(wa)
                w5.append(wb)
    for i, j in combinations(range(d), 2):
        for si, sj in product((1, -1), repeat=2):
            p = np.zeros(d)
            p[i] = si * l4
            p[j] = sj * l4
            pts.append(p)
            w7.append(200 / 19683)
            w5.append(25 / 729)
    for signs in product((1, -1), repeat=d):
        pts.append(l5 * np.array(signs, dtype=float))
        w7.append(6859 / 19683 / 2 ** d)
        w5.append(0.0)
    groups = (np.array(plus2), np.array(minus2), np.array(plus3), np.array(minus3))
    return np.array(pts), np.array(w7), np.array(w5), groups, (l2 / l3) ** 2


@lru_cache(maxsize=None)
def gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


def _bernoulli2(x):
    return x * x - x + 1.0 / 6.0


@lru_cache(maxsize=None)
def korobov_vector(N, d, budget=400_000_000):
    """Korobov generating vector (1, a, a^2, ...) mod N minimizing P_2.

    The candidate search is deterministic; its length is capped so that
    the cost stays near ``budget`` point-coordinate evaluations.
    """
    if d == 1:
        return np.array([1], dtype=np.int64)
    k = np.arange(N, dtype=np.int64)
    ncand = int(max(32, min(N // 2, 512, budget // max(1, N * d))))
    cands = np.unique(np.linspace(2, N - 1, ncand).astype(np.int64))
    best, best_a = np.inf, 1
    for a in cands:
        if np.gcd(a, N) != 1:
            a = a + 1 if np.gcd(a + 1, N) == 1 else a
            if np.gcd(a, N) != 1:
                continue
        z = np.array([pow(int(a), j, N) for j in range(d)], dtype=np.int64)
        prod = np.ones(N)
        for zj in z:
            x = (k * zj % N) / N
            prod *= 1.0 + 2 * np.pi ** 2 * _bernoulli2(x)
        val = prod.mean() - 1.0
        if val < best:
            best, best_a = val, int(a)
    return np.array([pow(best_a, j, N) for j in range(d)], dtype=np.int64)
