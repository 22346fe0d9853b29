"""Randomly shifted rank-1 lattice rules and tensor Gauss-Legendre rules."""
import numpy as np
from scipy.special import ndtri

from .adaptive import csum, evaluate_points
from .rules import gauss_legendre, korobov_vector
from .spec import QuadResult


def _normal_map(u, centre, sd):
    u = np.clip(u, 1e-300, 1.0 - 1e-16)
    q = ndtri(u)
    jac = np.prod(sd * np.sqrt(2 * np.pi)) * np.exp(0.5 * np.sum(q * q, axis=1))
    return centre + q * sd, jac


def pilot_moments(f, spec, box, N=4096):
    """Centre and spread per axis of |f|, from a fixed lattice pilot run.

    The pilot uses the generic transform (centre of the box, sd = width/8);
    the spread is inflated by 1.25 and clipped to [width/64, width/4].
    """
    d = box.shape[0]
    z = korobov_vector(N, d)
    u = (np.arange(N)[:, None] * z[None, :] % N) / N + 0.5 / N
    width = box[:, 1] - box[:, 0]
    X, jac = _normal_map(u, box[:, 0] + width / 2, width / 8.0)
    w = np.abs(evaluate_points(f, X, spec.workers)) * jac
    tot = csum(w).real
    if not np.isfinite(tot) or tot <= 0:
        return box[:, 0] + width / 2, width / 8.0
    centre = np.array([csum(w * X[:, j]).real for j in range(d)]) / tot
    var = np.array([csum(w * (X[:, j] - centre[j]) ** 2).real for j in range(d)]) / tot
    sd = np.clip(1.25 * np.sqrt(var), width / 64.0, width / 4.0)
    return centre, sd


def _lattice_estimate(f, spec, box, N, shifts, centre=None, sd=None):
    d = box.shape[0]
    z = korobov_vector(N, d)
    base = (np.arange(N)[:, None] * z[None, :] % N) / N
    lo, width = box[:, 0], box[:, 1] - box[:, 0]
    if centre is None:
        centre, sd = lo + width / 2, width / 8.0
    ests = []
    for s in shifts:
        u = (base + s[None, :]) % 1.0
        u = 1.0 - np.abs(2.0 * u - 1.0)  # tent periodization
        if spec.qmc_transform == "normal":
            X, jac = _normal_map(u, centre, sd)
            vals = evaluate_points(f, X, spec.workers) * jac
        else:
            vals = evaluate_points(f, lo + u * width, spec.workers) * np.prod(width)
        ests.append(csum(vals) / N)
    return ests


def lattice(f, spec, box):
    d = box.shape[0]
    rng = np.random.default_rng(spec.seed)
    M = spec.qmc_shifts
    shifts = rng.random((M, d))
    N = 1 << max(4, int(np.ceil(np.log2(spec.qmc_points))))
    evals = 0
    notes = []
    centre = sd = None
    if spec.qmc_transform == "normal":
        centre, sd = pilot_moments(f, spec, box)
        evals += 4096
    while True:
        ests = _lattice_estimate(f, spec, box, N, shifts, centre, sd)
        evals += N * M
        value = csum(ests) / M
        spread = np.array(ests) - value
        err = float(np.sqrt(np.sum(np.abs(spread) ** 2) / (M * (M - 1)))) if M > 1 else float("inf")
        err *= 3.0  # standard error -> roughly 3 sigma
        if err <= spec.tol_for(value):
            return QuadResult(value, err, evals, True, notes)
        if evals + 2 * N * M > spec.max_evals:
            notes.append("evaluation budget exhausted")
            return QuadResult(value, err, evals, False, notes)
        N *= 2


def _tensor_once(f, spec, box, panels, order):
    x, w = gauss_legendre(order)
    d = box.shape[0]
    axes, weights = [], []
    for j in range(d):
        edges = np.linspace(box[j, 0], box[j, 1], panels + 1)
        h = (edges[1:] - edges[:-1]) / 2
        c = (edges[1:] + edges[:-1]) / 2
        axes.append((c[:, None] + h[:, None] * x[None, :]).ravel())
        weights.append((h[:, None] * w[None, :]).ravel())
    grids = np.meshgrid(*axes, indexing="ij")
    X = np.stack([g.ravel() for g in grids], axis=1)
    W = weights[0]
    for wj in weights[1:]:
        W = np.multiply.outer(W, wj)
    vals = evaluate_points(f, X, spec.workers)
    return csum(vals * W.ravel()), X.shape[0]


def tensor(f, spec, box):
    coarse, n1 = _tensor_once(f, spec, box, spec.tensor_panels, spec.tensor_order)
    fine, n2 = _tensor_once(f, spec, box, 2 * spec.tensor_panels, spec.tensor_order)
    err = abs(fine - coarse)
    return QuadResult(fine, err, n1 + n2, err <= spec.tol_for(fine), [])
