"""Time the hot kernels under each available backend."""
import argparse
import time

import numpy as np

from kloosterman_lab import kernels
from kloosterman_lab.schwartz import random_closed_form


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(points, rng):
    out = []
    for tag, n in (("SplitRR", 2), ("ComplexC", 3)):
        b = random_closed_form(tag, n, rng, degree=4).body
        X = rng.standard_normal((points, n * n))
        exps, coeffs = b.poly.arrays()
        out.append((f"poly_gauss {tag} n={n}",
                    lambda X=X, e=exps, c=coeffs, b=b: kernels.poly_gauss_eval(X, e, c, b.Q, b.mu, b.xi)))
    for n in (2, 3):
        L = rng.standard_normal((points, n, n)) + 0j
        R = rng.standard_normal((points, n, n)) + 0j
        g = np.diag(rng.standard_normal(n)).astype(complex)
        out.append((f"congruence n={n}", lambda L=L, g=g, R=R: kernels.congruence(L, g, R)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    work = cases(args.points, rng)
    backends = kernels.available_backends()
    prev = kernels.backend_name()
    results = {}
    try:
        for name in backends:
            kernels.use_backend(name)
            for label, fn in work:
                fn()  # warm up
                results[label, name] = best_of(fn, args.repeats)
    finally:
        kernels.use_backend(prev)
    print(f"{'kernel':28s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, _ in work:
        row = [results[label, b] for b in backends]
        line = f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in row)
        if len(row) > 1:
            line += f"{row[0] / row[1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
