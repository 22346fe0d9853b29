import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sint

from kloosterman_lab.algebra import AlgebraTag, HermitianMatrix, gram_B, weyl_longest
from kloosterman_lab.schwartz import (BlackBox, BlockSplit, FunctionFileError, SchwartzFn, ad_w, fourier_B,
                                      fourier_trace, gaussian, partial_fourier, random_closed_form, reflect)

from conftest import TAGS


def chart_points(rng, d, k=6, scale=1.2):
    return scale * rng.standard_normal((k, d))


def close(f, g, X, tol):
    a, b = f.eval_chart(X), g.eval_chart(X)
    assert np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(b)))


def test_gaussian_fixed_point():
    X = np.linspace(-3, 3, 7)[:, None]
    for tag in TAGS:
        g = gaussian(tag, 1)
        close(fourier_B(g), g, X, 1e-13)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("sign", [1, -1])
def test_fourier_n1_against_quad(tag, sign, rng):
    f = random_closed_form(tag, 1, rng)
    F = fourier_B(f, sign)
    for y in (-1.3, 0.0, 0.7, 2.1):
        def part(x, fn):
            return fn(f.eval_chart([[x]])[0] * np.exp(-1j * sign * x * y))
        re = sint.quad(part, -np.inf, np.inf, args=(np.real,), epsabs=1e-13)[0]
        im = sint.quad(part, -np.inf, np.inf, args=(np.imag,), epsabs=1e-13)[0]
        assert F.eval_chart([[y]])[0] == pytest.approx((re + 1j * im) / np.sqrt(2 * np.pi), abs=1e-10)


@pytest.mark.parametrize("tag", TAGS)
def test_fourier_n2_against_grid(tag, rng):
    # trapezoid sums are spectrally accurate on Gaussians
    f = random_closed_form(tag, 2, rng, degree=1)
    G = gram_B(AlgebraTag.parse(tag), 2)
    h = 0.25
    t = np.arange(-7, 7 + h / 2, h)
    X = np.stack(np.meshgrid(t, t, t, t, indexing="ij"), -1).reshape(-1, 4)
    vals = f.eval_chart(X)
    F = fourier_B(f)
    for y in chart_points(rng, 4, k=3, scale=0.8):
        ref = np.sum(vals * np.exp(-1j * (X @ (G @ y)))) * h ** 4
        ref *= np.sqrt(abs(np.linalg.det(G))) / (2 * np.pi) ** 2
        assert F.eval_chart(y[None])[0] == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_transform_is_reflection(tag, n, rng):
    for _ in range(5):
        f = random_closed_form(tag, n, rng)
        X = chart_points(rng, n * n)
        close(fourier_B(fourier_B(f, 1), 1), reflect(f), X, 1e-10)
        close(fourier_B(fourier_B(f, 1), -1), f, X, 1e-10)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_B_transform_is_ad_w_of_trace_transform(tag, n, rng):
    for _ in range(5):
        f = random_closed_form(tag, n, rng)
        X = chart_points(rng, n * n)
        for s in (1, -1):
            close(fourier_B(f, s), ad_w(fourier_trace(f, s)), X, 1e-10)


def test_ad_w_matches_matrix_conjugation(rng):
    for tag in TAGS:
        f = random_closed_form(tag, 3, rng)
        g = ad_w(f)
        w = weyl_longest(3)
        for _ in range(3):
            x = HermitianMatrix.from_chart(tag, 3, rng.standard_normal(9))
            y = HermitianMatrix(tag, w @ x.entries @ w)
            assert g(x) == pytest.approx(f(y), abs=1e-12)


@given(st.integers(0, 2 ** 31), st.sampled_from(TAGS), st.sampled_from([1, 2]))
def test_plancherel_gaussian_pairing(seed, tag, n):
    # L2 norm on a grid at n=1, inverse transform at n=2
    rng = np.random.default_rng(seed)
    f = random_closed_form(tag, n, rng, degree=1)
    if n == 1:
        t = np.linspace(-12, 12, 2401)[:, None]
        lhs = np.sum(np.abs(fourier_B(f).eval_chart(t)) ** 2) * (t[1, 0] - t[0, 0])
        rhs = np.sum(np.abs(f.eval_chart(t)) ** 2) * (t[1, 0] - t[0, 0])
        assert lhs == pytest.approx(rhs, rel=1e-9)
    else:
        X = chart_points(rng, 4)
        close(fourier_B(fourier_B(f, -1), 1), f, X, 1e-10)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n,i", [(2, 1), (3, 1), (3, 2)])
def test_partial_transforms_compose_to_full(tag, n, i, rng):
    # diagonal Q keeps every partial transform in closed form
    d = n * n
    g = random_closed_form(tag, n, rng)
    f = gaussian(tag, n, np.diag(rng.uniform(0.6, 1.6, d)), g.body.mu, g.body.xi, g.body.poly)
    split = BlockSplit(tag, n, i)
    assert sorted(split.diagonal() + split.off_diagonal()) == list(range(n * n))
    X = chart_points(rng, n * n)
    a = partial_fourier(partial_fourier(f, split, "diagonal"), split, "off-diagonal")
    b = partial_fourier(partial_fourier(f, split, "off-diagonal"), split, "diagonal")
    close(a, fourier_trace(f), X, 1e-10)
    close(b, fourier_trace(f), X, 1e-10)


def test_numeric_path_matches_closed_form(rng):
    for tag in TAGS:
        f = random_closed_form(tag, 1, rng)
        bb = SchwartzFn(f.tag, 1, BlackBox(f.eval_chart, 1, 8.0))
        F = fourier_B(bb)
        assert F.notes
        X = np.array([[-1.0], [0.3], [1.7]])
        close(F, fourier_B(f), X, 1e-8)


def test_block_split_bounds():
    with pytest.raises(ValueError):
        BlockSplit("SplitRR", 2, 0)
    with pytest.raises(ValueError):
        BlockSplit("ComplexC", 3, 3)


def test_json_round_trip(rng):
    for tag in TAGS:
        f = random_closed_form(tag, 2, rng)
        g = SchwartzFn.from_json(json.loads(json.dumps(f.to_json())))
        close(g, f, chart_points(rng, 4), 1e-14)


@pytest.mark.parametrize("obj,key", [
    ({"tag": "SplitRR", "n": 1, "Q": [[1.0]], "bogus": 1}, "bogus"),
    ({"tag": "SplitRR", "n": 1}, "Q"),
    ({"tag": "Quaternion", "n": 1, "Q": [[1.0]]}, "tag"),
    ({"tag": "SplitRR", "n": 0, "Q": [[1.0]]}, "n"),
    ({"tag": "SplitRR", "n": 1, "Q": [[-1.0]]}, "Q"),
    ({"tag": "SplitRR", "n": 1, "Q": [[1.0]], "mu": [0.0, 1.0]}, "mu"),
    ({"tag": "SplitRR", "n": 1, "Q": [[1.0]], "xi": ["a"]}, "xi"),
])
def test_json_errors_name_key(obj, key):
    with pytest.raises(FunctionFileError) as exc:
        SchwartzFn.from_json(obj)
    assert exc.value.key == key


def test_sign_validated(rng):
    with pytest.raises(ValueError):
        fourier_B(random_closed_form("SplitRR", 1, rng), sign=2)
