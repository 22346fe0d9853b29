import numpy as np
import pytest
from hypothesis import given, strategies as st

from kloosterman_lab.algebra import (COMPLEX, SPLIT, AlgebraTag, HermitianMatrix, TorusPoint, bilinear_B,
                                     block_embed, chart_to_matrices, gram_B, involve, matrices_to_chart,
                                     minor_delta, region_classify, sigma, weyl_longest)

from conftest import TAGS, random_hermitian


def H(tag, m):
    return HermitianMatrix(tag, np.array(m))


def test_involve_examples():
    assert involve(COMPLEX, np.array([2 + 3j]))[0] == 2 - 3j
    assert involve(COMPLEX, np.array([4.0]))[0] == 4.0
    assert tuple(involve(SPLIT, np.array([5.0, 7.0]))) == (7.0, 5.0)


@given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False), min_size=1, max_size=6))
def test_involve_is_an_involution(z):
    z = np.array(z)
    np.testing.assert_array_equal(involve(COMPLEX, involve(COMPLEX, z)), z)


def test_minor_examples():
    assert minor_delta(H(SPLIT, np.diag([2.0, 3.0, 4.0])), 2) == pytest.approx(6.0)
    assert minor_delta(H(COMPLEX, np.eye(3)), 3) == pytest.approx(1.0)
    assert minor_delta(H(COMPLEX, [[1, 1j], [-1j, 2]]), 2) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        minor_delta(H(SPLIT, np.eye(2)), 3)


def test_sigma_examples():
    assert sigma(H(SPLIT, np.diag([2.0, 3.0, 4.0]))) == pytest.approx(12.0)
    assert sigma(H(COMPLEX, np.eye(3))) == 1.0
    assert sigma(H(SPLIT, [[5.0]])) == 1.0


def test_complex_hermitian_enforced():
    with pytest.raises(ValueError):
        H(COMPLEX, [[1, 2j], [2j, 1]])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_weyl_longest(n):
    w = weyl_longest(n)
    np.testing.assert_array_equal(w @ w, np.eye(n))
    np.testing.assert_array_equal(w, np.fliplr(np.eye(n)))


def test_bilinear_examples():
    # plain matrix trace, no D/R doubling
    assert bilinear_B(H(SPLIT, [[2.0]]), H(SPLIT, [[3.0]])) == pytest.approx(6.0)
    E11, E22 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    for tag in TAGS:
        assert bilinear_B(H(tag, E11), H(tag, E22)) == pytest.approx(1.0)
        assert bilinear_B(H(tag, E11), H(tag, E11)) == pytest.approx(0.0)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_bilinear_symmetric_and_gram_full_rank(tag, n, rng):
    for _ in range(100 if n == 2 else 10):
        x, y = random_hermitian(tag, n, rng), random_hermitian(tag, n, rng)
        assert bilinear_B(x, y) == pytest.approx(bilinear_B(y, x), abs=1e-12)
    G = gram_B(AlgebraTag.parse(tag), n)
    assert np.linalg.matrix_rank(G) == n * n
    x, y = random_hermitian(tag, n, rng), random_hermitian(tag, n, rng)
    assert x.chart() @ G @ y.chart() == pytest.approx(bilinear_B(x, y), abs=1e-12)


def test_region_examples():
    f = region_classify(H(SPLIT, np.eye(2)))
    assert f.in_U and not f.in_Z
    f = region_classify(H(SPLIT, [[0.0, 0.0], [0.0, 5.0]]))
    assert f.in_Z and f.in_Zprime
    f = region_classify(H(COMPLEX, [[0.0, 1.0], [1.0, 0.0]]))
    assert f.in_Z and f.in_Zprime


@pytest.mark.parametrize("tag", TAGS)
def test_region_invariants(tag, rng):
    for n in (2, 3):
        for _ in range(30):
            x = random_hermitian(tag, n, rng)
            if rng.random() < 0.5:
                e = x.entries.copy()
                e[0, 0] = 0
                x = H(tag, e)
            f = region_classify(x)
            assert f.in_U != f.in_Z
            assert f.in_U == any(f.in_O)
            assert not f.in_Zprime or f.in_Z


def test_block_embed():
    s, h = H(SPLIT, [[2.0]]), H(SPLIT, [[3.0]])
    np.testing.assert_array_equal(block_embed(s, h).entries, np.diag([2.0, 3.0]))
    x = block_embed(H(COMPLEX, np.eye(2)), H(COMPLEX, [[0.0]]))
    np.testing.assert_array_equal(x.entries, np.diag([1.0, 1.0, 0.0]))
    s = H(COMPLEX, [[2.0, 1 + 1j], [1 - 1j, 3.0]])
    assert minor_delta(block_embed(s, H(COMPLEX, [[7.0]])), 2) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        block_embed(s, H(SPLIT, [[1.0]]))


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_chart_round_trip(tag, n, rng):
    t = AlgebraTag.parse(tag)
    X = rng.standard_normal((5, n * n))
    np.testing.assert_allclose(matrices_to_chart(t, chart_to_matrices(t, n, X)), X)
    x = random_hermitian(tag, n, rng)
    assert HermitianMatrix.from_json(x.to_json()) == x


def test_sigma_is_product_of_minors(rng):
    for tag in TAGS:
        x = random_hermitian(tag, 4, rng)
        assert sigma(x) == pytest.approx(np.prod([minor_delta(x, i) for i in range(1, 4)]))


def test_torus_point_rejects_zero():
    with pytest.raises(ValueError):
        TorusPoint((1.0, 0.0))
