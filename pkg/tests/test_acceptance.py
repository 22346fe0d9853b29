"""End-to-end acceptance checks; each test records one PASS/FAIL line."""
import io
import time

import numpy as np
import pytest

from kloosterman_lab.algebra import AlgebraTag
from kloosterman_lab.cli import run
from kloosterman_lab.jacquet import f_phi, verify_inversion, verify_partial_inversion, verify_simple_inversion
from kloosterman_lab.orbital import (default_spec, omega, period8_table, transfer_factor_extended,
                                     verify_factorization, weil_constant, weil_value)
from kloosterman_lab.orbits import OrbitRep, canonical_form, relevant_representatives
from kloosterman_lab.schwartz import ad_w, fourier_B, fourier_trace, gaussian, pullback_linear, random_closed_form, reflect
from kloosterman_lab.unipotent import UnipotentCoord, act, chi_batch, n_dim

from conftest import TAGS, record
from test_orbital import action_chart_map
from test_orbits import brute_relevant, involution_matrices

GRID = (-1.0, 1.0, 2.0)


def test_criterion_01_fourier():
    rng = np.random.default_rng(1)
    worst = 0.0
    for tag in TAGS:
        for n in (1, 2):
            for _ in range(20):
                f = random_closed_form(tag, n, rng)
                X = 1.2 * rng.standard_normal((8, n * n))
                scale = max(1.0, np.abs(f.eval_chart(X)).max())
                for s in (1, -1):
                    d1 = np.abs(fourier_B(fourier_B(f, s), s).eval_chart(X) - reflect(f).eval_chart(X)).max()
                    d2 = np.abs(fourier_B(f, s).eval_chart(X) - ad_w(fourier_trace(f, s)).eval_chart(X)).max()
                    worst = max(worst, d1 / scale, d2 / scale)
    ok = worst <= 1e-10
    record(1, ok, f"double transform and w-conjugation, max deviation {worst:.1e} (limit 1e-10)")
    assert ok


def test_criterion_02_weil():
    c_r = weil_constant("SplitRR")
    c_c = weil_constant("ComplexC")
    d_r, d_c = abs(c_r.raw - 1), abs(c_c.raw ** 2 + 1)
    ok = d_r <= 1e-3 and d_c <= 1e-3
    record(2, ok, f"|c(R+R) - 1| = {d_r:.1e}, |c(C)^2 + 1| = {d_c:.1e} (limit 1e-3)")
    assert ok


def test_criterion_03_inversion():
    rng = np.random.default_rng(3)
    t0 = time.time()
    worst1 = 0.0
    for k in range(10):
        f = random_closed_form(TAGS[k % 2], 1, rng)
        rep = verify_inversion(f, [(0.7,), (-1.3,), (2.2,)], 1 if k < 5 else -1)
        worst1 = max(worst1, rep.max_rel_residual)
    worst2, consts = 0.0, []
    samples = [(0.8, 1.3), (-1.1, 0.6), (1.5, -0.9), (-0.7, -1.4), (2.0, 0.5)]
    for tag in TAGS:
        f = random_closed_form(tag, 2, rng, degree=1)
        rep = verify_inversion(f, samples)
        worst2 = max(worst2, rep.max_rel_residual)
        consts.append(abs(rep.inferred_constant - weil_value(tag)) < 0.005)
    dt = time.time() - t0
    ok = worst1 <= 1e-8 and worst2 <= 1e-2 and all(consts) and dt <= 600
    record(3, ok, f"n=1 max rel {worst1:.1e} (1e-8), n=2 max rel {worst2:.1e} (1e-2), "
                  f"constants match c: {all(consts)}, {dt:.0f}s")
    assert ok


def test_criterion_04_partial_inversion():
    rng = np.random.default_rng(4)
    t0 = time.time()
    worst = 0.0
    pairs = [(0.8, 1.2), (-1.5, 0.4), (1.1, -0.9), (-0.6, -1.7), (2.0, 0.7)]
    for tag in TAGS:
        rep = verify_partial_inversion(random_closed_form(tag, 2, rng, degree=1), 1, pairs)
        worst = max(worst, rep.max_rel_residual)
    dt = time.time() - t0
    ok = worst <= 1e-3 and dt <= 300
    record(4, ok, f"n=2 i=1 max rel {worst:.1e} (1e-3), {dt:.0f}s")
    assert ok


def modulated_gaussian(tag, a):
    # frequency chosen to cancel the character along the superdiagonal
    xi = np.zeros(9)
    if tag == "ComplexC":
        xi[3], xi[7] = -2 / a[0], -2 / a[1]
    else:
        xi[[1, 3]], xi[[5, 7]] = -1 / a[0], -1 / a[1]
    return gaussian(tag, 3, xi=xi)


def test_criterion_05_factorization():
    rng = np.random.default_rng(5)
    t0 = time.time()
    worst2 = 0.0
    for tag in TAGS:
        rep = verify_factorization(random_closed_form(tag, 2, rng, degree=1), 1, [(0.9, 1.3), (-1.1, 0.7)])
        worst2 = max(worst2, rep.max_rel_residual)
    a = (1.0, -1.5, 2.0)
    N = 2 ** 19
    spec = default_spec(scheme="qmc", qmc_points=N, max_evals=N * 8 + 5000, rel_tol=1e-3)
    worst3 = 0.0
    for tag in TAGS:
        rep = verify_factorization(modulated_gaussian(tag, a), 1, [a], 1, spec, spec)
        worst3 = max(worst3, rep.max_rel_residual)
    dt = time.time() - t0
    ok = worst2 <= 1e-4 and worst3 <= 1e-2 and dt <= 1800
    record(5, ok, f"n=2 max rel {worst2:.1e} (1e-4), n=3 smoke max rel {worst3:.1e} (1e-2), {dt:.0f}s")
    assert ok


def test_criterion_06_equivariance():
    rng = np.random.default_rng(6)
    bad = 0
    for tag in TAGS:
        f = random_closed_form(tag, 2, rng, degree=1)
        a = (0.9, -1.2)
        base = omega(f, a)
        for _ in range(10):
            v = rng.uniform(-1.0, 1.0, n_dim(2))
            r = omega(pullback_linear(f, action_chart_map(tag, 2, v)), a)
            chi = chi_batch(AlgebraTag.parse(tag), 2, v[None])[0]
            bad += abs(r.value - base.value / chi) > 3 * (r.err_est + base.err_est) + 1e-12
    ok = bad == 0
    record(6, ok, f"{20 - bad}/20 translations within 3x the error estimate")
    assert ok


def test_criterion_07_orbits():
    rng = np.random.default_rng(7)
    enum_ok = True
    for tag in TAGS:
        for n in (2, 3):
            listed = {(r.matrix() + 0.0).tobytes() for r in relevant_representatives(tag, n, GRID)}
            brute = {(g + 0.0).tobytes() for g in involution_matrices(n, GRID) if brute_relevant(tag, g)}
            enum_ok = enum_ok and listed == brute
    reps = [r for tag in TAGS for n in (2, 3) for r in relevant_representatives(tag, n, GRID, True)]
    trips = 0
    for k in rng.choice(len(reps), 50, replace=False):
        rep = reps[k]
        u = UnipotentCoord(rep.tag, rep.n, tuple(rng.uniform(-1.5, 1.5, n_dim(rep.n))))
        back = canonical_form(act(rep.tag, u, rep.materialize()))
        trips += back is not None and back.isclose(rep)
    ok = enum_ok and trips == 50
    record(7, ok, f"enumeration equals brute force: {enum_ok}, round trips {trips}/50")
    assert ok


def test_criterion_08_period8():
    bad = 0
    for sign in (1, -1):
        for a in (1.0, -1.0, 2.0, -0.5):
            table = period8_table(a, sign)
            for n in range(1, 17):
                g = transfer_factor_extended(OrbitRep("ComplexC", [(n, a)]), sign)
                bad += abs(g - table[(n - 1) % 8]) > 1e-12 or abs(g ** 4 - 1) > 1e-12
    ok = bad == 0
    record(8, ok, f"gamma(a w_n) for n=1..16, both signs: {128 - bad}/128 match the period-8 table")
    assert ok


def test_criterion_09_f_phi():
    rng = np.random.default_rng(9)
    bad, total = 0, 0
    for tag in TAGS:
        f = random_closed_form(tag, 2, rng, degree=1)
        for row in verify_simple_inversion(f, [0.5, -0.5, 1.0, -1.0, 2.0]).samples:
            total += 1
            bad += not row["converged"] or row["residual"] > 3 * row["err"] + 1e-12 * abs(row["definition"])
    decay = True
    for tag in TAGS:
        g = gaussian(tag, 2)
        for seq in ((4.0, 8.0, 16.0), (0.25, 0.125, 0.0625)):
            v = [abs(f_phi(g, a, "definition").value) for a in seq]
            decay = decay and v[0] > v[1] > v[2]
    ok = bad == 0 and decay
    record(9, ok, f"three modes agree at {total - bad}/{total} points, decay monotone: {decay}")
    assert ok


def _cli(argv):
    out = io.StringIO()
    code = run(argv, out, io.StringIO())
    return code, out.getvalue()


def test_criterion_10_determinism():
    same = True
    for fmt in ("json", "csv"):
        base = ["verify", "factorization", "n=2", "tag=SplitRR", "function=random:11",
                "samples=0.9,1.3;-1.2,0.8", f"format={fmt}"]
        a, b, c = _cli(base + ["workers=1"]), _cli(base + ["workers=1"]), _cli(base + ["workers=8"])
        same = same and a == b == c and a[0] == 0
        q = ["omega", "n=3", "tag=ComplexC", "scheme=qmc", "qmc_points=8192", "samples=1,-1,2", f"format={fmt}"]
        a, c = _cli(q + ["workers=1"]), _cli(q + ["workers=8"])
        same = same and a == c
    record(10, same, f"reports byte-identical across runs and workers 1/8: {same}")
    assert same
