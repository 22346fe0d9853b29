"""Globally adaptive subdivision with embedded rule pairs."""
import heapq
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .rules import gauss_kronrod15, genz_malik
from .spec import QuadResult

_CHUNK = 4096


def evaluate_points(f, X, workers):
    """f on the rows of X; with workers > 1 the rows are split into chunks.

    Chunk boundaries depend only on the number of rows, so the returned
    array is the same for every worker count.
    """
    N = X.shape[0]
    if N <= _CHUNK:
        out = np.asarray(f(X), dtype=np.complex128).reshape(N)
    else:
        parts = [X[s:s + _CHUNK] for s in range(0, N, _CHUNK)]

        def run(P):
            return np.asarray(f(P), dtype=np.complex128).reshape(P.shape[0])

        if workers <= 1:
            vals = [run(P) for P in parts]
        else:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                vals = list(ex.map(run, parts))
        out = np.concatenate(vals)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("integrand returned non-finite values")
    return out


def csum(values):
    """Exactly rounded complex sum (independent of summation order)."""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


class _Rule:
    def __init__(self, d):
        self.d = d
        if d == 1:
            x, wk, wg = gauss_kronrod15()
            self.nodes = x[:, None]
            self.w_hi, self.w_lo = wk / 2, wg / 2
            self.groups = None
        else:
            pts, w7, w5, groups, ratio = genz_malik(d)
            self.nodes, self.w_hi, self.w_lo = pts, w7, w5
            self.groups, self.ratio = groups, ratio

    def points(self, c, h):
        return c[None, :] + self.nodes * h[None, :]

    def apply(self, vals, h):
        vol = np.prod(2 * h)
        hi = vol * (vals @ self.w_hi)
        lo = vol * (vals @ self.w_lo)
        err = abs(hi - lo)
        if self.groups is None:
            axis = 0
        else:
            p2, m2, p3, m3 = self.groups
            c = vals[0]
            diff = np.abs(vals[p2] + vals[m2] - 2 * c - self.ratio * (vals[p3] + vals[m3] - 2 * c))
            scaled = diff * h
            top = scaled.max()
            cand = np.flatnonzero(scaled >= top * (1 - 1e-12)) if top > 0 else np.arange(self.d)
            axis = int(cand[np.argmax(h[cand])])
        return hi, err, axis


def _initial_cells(box, splits):
    d = box.shape[0]
    edges = [np.linspace(box[j, 0], box[j, 1], splits + 1) for j in range(d)]
    cells = []
    for idx in np.ndindex(*([splits] * d)):
        lo = np.array([edges[j][idx[j]] for j in range(d)])
        hi = np.array([edges[j][idx[j] + 1] for j in range(d)])
        cells.append(((lo + hi) / 2, (hi - lo) / 2))
    return cells


def default_splits(d):
    return {1: 8, 2: 4, 3: 2}.get(d, 1)


def adaptive(f, spec, box, splits=None):
    d = box.shape[0]
    rule = _Rule(d)
    splits = default_splits(d) if splits is None else splits
    m = rule.nodes.shape[0]
    heap = []
    regions = {}
    evals = 0
    next_id = 0

    def process(cells):
        nonlocal evals, next_id
        X = np.concatenate([rule.points(c, h) for c, h in cells])
        vals = evaluate_points(f, X, spec.workers)
        evals += X.shape[0]
        for k, (c, h) in enumerate(cells):
            val, err, axis = rule.apply(vals[k * m:(k + 1) * m], h)
            regions[next_id] = (c, h, val, err, axis)
            heapq.heappush(heap, (-err, next_id))
            next_id += 1

    process(_initial_cells(box, splits))
    notes = []
    while True:
        total = csum(r[2] for r in regions.values())
        err = math.fsum(r[3] for r in regions.values())
        if err <= spec.tol_for(total):
            converged = True
            break
        if evals + 2 * m > spec.max_evals:
            converged = False
            notes.append("evaluation budget exhausted")
            break
        # split the worst regions carrying the top half of the error, in heap order
        budget = (spec.max_evals - evals) // (2 * m)
        batch = []
        acc = 0.0
        while heap and len(batch) < budget and (not batch or acc < 0.5 * err):
            e, rid = heapq.heappop(heap)
            batch.append(rid)
            acc += -e
        cells = []
        for rid in batch:
            c, h, _, _, axis = regions.pop(rid)
            h2 = h.copy()
            h2[axis] /= 2
            for s in (-1, 1):
                c2 = c.copy()
                c2[axis] += s * h2[axis]
                cells.append((c2, h2))
        process(cells)
    return QuadResult(total, err, evals, converged, notes)
