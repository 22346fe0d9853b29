"""Residual reports shared by the identity verifiers."""
from dataclasses import dataclass, field

import numpy as np


@dataclass
class IdentityReport:
    samples: list
    inferred_constant: object
    expected_constant: object
    notes: list = field(default_factory=list)

    @property
    def converged(self):
        return all(s.get("converged", True) for s in self.samples)

    @property
    def max_rel_residual(self):
        return max((s["rel_residual"] for s in self.samples), default=0.0)

    def to_json(self):
        return {
            "samples": [{k: (cjson(v) if isinstance(v, complex) else v) for k, v in s.items()}
                        for s in self.samples],
            "inferred_constant": cjson(self.inferred_constant),
            "expected_constant": cjson(self.expected_constant),
            "max_rel_residual": self.max_rel_residual,
            "notes": list(self.notes),
        }


def cjson(z):
    if z is None:
        return None
    z = complex(z)
    return [z.real, z.imag]


def fit_constant(lhs, rhs):
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    den = np.sum(np.abs(rhs) ** 2)
    return complex(np.sum(np.conj(rhs) * lhs) / den) if den > 0 else complex("nan")


def identity_row(a, lhs, rhs, const):
    res = abs(lhs.value - const * rhs.value)
    return {"a": list(a), "lhs": lhs.value, "rhs": rhs.value, "residual": res,
            "rel_residual": res / max(abs(rhs.value), 1e-300),
            "err": lhs.err_est + abs(const) * rhs.err_est,
            "converged": bool(lhs.converged and rhs.converged)}
