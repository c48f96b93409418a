import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlmagic import fock
from nlmagic.errors import ContractError, InputError
from nlmagic.experiments import haar_state
from nlmagic.gstate import (Bipartition, apply_orthogonal, check_pure, entanglement_entropy,
                            entanglement_spectrum, is_pure, local_orthogonal, occupations,
                            product_state, vacuum)
from nlmagic.skewlin import haar_special_orthogonal


def test_bipartition_properties():
    p = Bipartition.cut(5, 3)
    assert (p.m, p.n, p.L, p.r) == (3, 2, 5, 2)
    assert p.swapped and p.ordered() == Bipartition(2, 3)
    assert Bipartition.half(7) == Bipartition(3, 4)
    with pytest.raises(InputError):
        Bipartition(0, 3)


def test_vacuum_and_product_occupations():
    assert np.allclose(occupations(vacuum(3)), 0)
    assert np.allclose(occupations(product_state([1, 0, 1])), [1, 0, 1])


def test_occupations_match_fock():
    gamma = haar_state(3, 3, 0)
    psi = fock.gaussian_state_vector(gamma)
    for j, c in enumerate(fock.annihilators(3)):
        n = np.vdot(psi, c.conj().T @ c @ psi).real
        assert occupations(gamma)[j] == pytest.approx(n, abs=1e-12)


def test_covariance_round_trip():
    gamma = haar_state(7, 3, 1)
    assert np.allclose(fock.covariance_from_state(fock.gaussian_state_vector(gamma)), gamma,
                       atol=1e-12)


def test_impure_rejected():
    with pytest.raises(ContractError):
        check_pure(0.5 * vacuum(2))
    assert not is_pure(np.zeros((4, 4)))


def test_apply_orthogonal_dimension_mismatch():
    with pytest.raises(InputError):
        apply_orthogonal(vacuum(2), np.eye(6))


def test_product_state_has_no_entanglement():
    nus = entanglement_spectrum(product_state([1, 0, 0, 1]), Bipartition(2, 2))
    assert np.allclose(nus, 1)
    assert entanglement_entropy(nus) == 0


@pytest.mark.parametrize("L,m", [(3, 1), (4, 2), (4, 3), (5, 2)])
def test_entropy_matches_fock(L, m):
    gamma = haar_state(11, L, m)
    nus = entanglement_spectrum(gamma, Bipartition.cut(L, m))
    psi = fock.gaussian_state_vector(gamma)
    assert entanglement_entropy(nus) == pytest.approx(fock.entanglement_entropy(psi, m), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(2, 7), st.data())
def test_spectrum_properties(seed, L, data):
    m = data.draw(st.integers(1, L - 1))
    p = Bipartition.cut(L, m)
    gamma = haar_state(seed, L, 0)
    nus = entanglement_spectrum(gamma, p)
    assert nus.size == min(m, L - m)
    assert np.all((nus >= 0) & (nus <= 1))
    assert np.all(np.diff(nus) <= 0)
    # either side gives the same nontrivial spectrum
    swapped = Bipartition.cut(L, L - m)
    perm = np.r_[np.arange(2 * m, 2 * L), np.arange(2 * m)]
    assert np.allclose(entanglement_spectrum(gamma[np.ix_(perm, perm)], swapped), nus, atol=1e-10)
    # local rotations leave it unchanged
    rng = np.random.default_rng(seed)
    rot = local_orthogonal(haar_special_orthogonal(rng, 2 * m), haar_special_orthogonal(rng, 2 * (L - m)))
    assert np.allclose(entanglement_spectrum(apply_orthogonal(gamma, rot), p), nus, atol=1e-10)


def test_renyi_orders():
    nus = np.array([0.0, 0.3, 1.0])
    assert entanglement_entropy(nus, 0) == pytest.approx(2 * np.log(2))
    s1, s2 = entanglement_entropy(nus, 1), entanglement_entropy(nus, 2)
    assert s2 < s1 < entanglement_entropy(nus, 0)
    with pytest.raises(InputError):
        entanglement_entropy(nus, -1)
