"""Integration requests and results."""
from dataclasses import dataclass, field, replace

import numpy as np

SCHEMES = ("adaptive", "tensor", "qmc")
DEFAULT_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class QuadSpec:
    """How to integrate over R^dim.

    ``bounds`` (per-axis (lo, hi)) overrides the symmetric box given by
    ``truncation_radius``.  ``regularization`` is ``"none"`` or
    ``"gaussian_damping"``, the latter using ``damping_schedule``.
    The lattice rule maps the box by a normal quantile transform
    (``qmc_transform="normal"``) suited to Gaussian-decaying integrands, or
    uniformly (``"box"``).  ``tail_bound`` is a declared bound on the mass
    outside the box and is added to the reported error.
    """

    dim: int = 1
    truncation_radius: object = 8.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_evals: int = 200_000
    regularization: str = "none"
    damping_schedule: tuple = DEFAULT_SCHEDULE
    scheme: str = "adaptive"
    seed: int = 0
    workers: int = 1
    tensor_order: int = 16
    tensor_panels: int = 4
    qmc_points: int = 4096
    qmc_shifts: int = 8
    qmc_transform: str = "normal"
    bounds: tuple = None
    tail_bound: float = 0.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        if self.regularization not in ("none", "gaussian_damping"):
            raise ValueError("regularization must be none or gaussian_damping")
        sched = tuple(float(e) for e in self.damping_schedule)
        if any(b >= a for a, b in zip(sched, sched[1:])) or min(sched) < 1e-6:
            raise ValueError("damping schedule must decrease strictly and stay >= 1e-6")
        object.__setattr__(self, "damping_schedule", sched)
        if self.bounds is not None:
            b = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
            object.__setattr__(self, "bounds", b)
            object.__setattr__(self, "dim", len(b))
        if self.qmc_transform not in ("normal", "box"):
            raise ValueError("qmc_transform must be normal or box")
        if self.workers < 1 or self.max_evals < 1:
            raise ValueError("workers and max_evals must be positive")

    def box(self):
        if self.bounds is not None:
            return np.array(self.bounds, dtype=float).reshape(self.dim, 2)
        r = np.broadcast_to(np.asarray(self.truncation_radius, dtype=float), (self.dim,))
        return np.stack([-r, r], axis=1)

    def with_bounds(self, bounds, **kw):
        return replace(self, bounds=tuple(bounds), **kw)

    def replace(self, **kw):
        return replace(self, **kw)

    def tol_for(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_est: float
    evals: int
    converged: bool
    notes: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "err_est", float(abs(self.err_est)))
        object.__setattr__(self, "notes", tuple(self.notes))

    def to_json(self):
        return {
            "value": [self.value.real, self.value.imag],
            "err": self.err_est,
            "evals": int(self.evals),
            "converged": bool(self.converged),
        }

    def scaled(self, c):
        return QuadResult(self.value * c, self.err_est * abs(c), self.evals, self.converged, self.notes)

    def plus(self, other, c=1.0):
        return QuadResult(self.value + c * other.value, self.err_est + abs(c) * other.err_est,
                          self.evals + other.evals, self.converged and other.converged,
                          self.notes + other.notes)


def exact(value, note=None):
    return QuadResult(value, 0.0, 0, True, (note,) if note else ())
