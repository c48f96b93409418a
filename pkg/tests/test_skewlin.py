import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlmagic.errors import InputError
from nlmagic.skewlin import (antisymmetric_canonical, as_skew, block_j, direct_sum,
                             expm_antisymmetric, haar_special_orthogonal, is_special_orthogonal,
                             principal_minor_det, random_antisymmetric)

seeds = st.integers(0, 2 ** 32 - 1)


def test_block_j_signs():
    j = block_j(2, [1.0, -0.5])
    assert j[0, 1] == 1 and j[1, 0] == -1
    assert j[2, 3] == -0.5 and j[3, 2] == 0.5


def test_as_skew_rejects_symmetric():
    with pytest.raises(InputError):
        as_skew(np.eye(2))


def test_principal_minor_conventions():
    g = block_j(2)
    assert principal_minor_det(g, ()) == 1.0
    assert principal_minor_det(g, (0,)) == 0.0
    assert principal_minor_det(g, (0, 1, 2)) == 0.0
    assert principal_minor_det(g, (0, 1)) == pytest.approx(1.0)
    with pytest.raises(InputError):
        principal_minor_det(g, (0, 0))
    with pytest.raises(InputError):
        principal_minor_det(g, (0, 7))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6), st.booleans())
def test_canonical_reconstructs(seed, n, proper):
    rng = np.random.default_rng(seed)
    k = random_antisymmetric(rng, 2 * n)
    o, eps = antisymmetric_canonical(k, proper=proper)
    assert np.allclose(o @ block_j(n, eps) @ o.T, k, atol=1e-10)
    assert np.allclose(o @ o.T, np.eye(2 * n), atol=1e-12)
    if proper:
        assert np.linalg.det(o) == pytest.approx(1.0)
        assert np.all(eps[:-1] >= 0)
    else:
        assert np.all(eps >= 0)
    assert np.all(np.diff(np.abs(eps)) <= 1e-12)


def test_canonical_odd_dimension_rejected():
    with pytest.raises(InputError):
        antisymmetric_canonical(np.zeros((3, 3)))


def test_canonical_zero_matrix():
    o, eps = antisymmetric_canonical(np.zeros((4, 4)))
    assert np.allclose(eps, 0)
    assert is_special_orthogonal(o)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 8))
def test_haar_is_special_orthogonal(seed, dim):
    assert is_special_orthogonal(haar_special_orthogonal(np.random.default_rng(seed), dim))


def test_haar_first_moment():
    # E[O_ij^2] = 1/d for Haar O(d) and SO(d)
    rng = np.random.default_rng(5)
    d = 4
    acc = sum(haar_special_orthogonal(rng, d) ** 2 for _ in range(4000)) / 4000
    assert np.allclose(acc, 1 / d, atol=0.02)


def test_expm_antisymmetric_is_rotation():
    k = random_antisymmetric(np.random.default_rng(3), 6)
    r = expm_antisymmetric(k, 0.7)
    assert is_special_orthogonal(r)
    assert np.allclose(expm_antisymmetric(k, 0.3) @ expm_antisymmetric(k, 0.4), r, atol=1e-12)


def test_direct_sum_shape():
    m = direct_sum(np.ones((1, 1)), 2 * np.ones((2, 2)))
    assert m.shape == (3, 3) and m[0, 1] == 0 and m[2, 2] == 2
