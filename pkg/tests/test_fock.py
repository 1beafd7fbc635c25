"""Tests for sparse Fock states: construction, algebra, embedding, JSON."""

import math

import numpy as np
import pytest

from mzsim import (DegenerateStateError, DimensionMismatchError, FockState,
                   SectorError, basis_state, embed, inner_product, normalize,
                   vacuum)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_basis_state_and_vacuum():
    s = basis_state((0, 2, 1))
    assert s.mode_count == 3
    assert s.total_photons == 3
    assert s[(0, 2, 1)] == 1.0
    assert s[(1, 1, 1)] == 0j
    v = vacuum(4)
    assert v.total_photons == 0
    assert v[(0, 0, 0, 0)] == 1.0


def test_amplitudes_below_prune_threshold_are_dropped():
    s = FockState({(1, 0): 1.0, (0, 1): 1e-15}, 2)
    assert len(s) == 1
    assert (0, 1) not in s
    kept = FockState({(1, 0): 1.0, (0, 1): 1e-15}, 2, prune=0.0)
    assert len(kept) == 2


def test_duplicate_keys_accumulate():
    s = FockState({(1, 0): 0.5})
    t = s + s
    assert t[(1, 0)] == 1.0
    assert len(t) == 1


def test_mixed_photon_number_rejected():
    with pytest.raises(SectorError):
        FockState({(1, 0): 0.5, (1, 1): 0.5})


def test_wrong_occupation_length_rejected():
    with pytest.raises(DimensionMismatchError):
        FockState({(1, 0): 1.0, (0, 1, 0): 1.0}, 2)
    with pytest.raises(DimensionMismatchError):
        FockState({(1, 0, 0): 1.0}, 2)


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        FockState({(1, -1): 1.0}, 2)


def test_empty_state_needs_explicit_mode_count():
    with pytest.raises(ValueError):
        FockState({})
    z = FockState({}, 3)
    assert z.mode_count == 3
    assert z.total_photons == 0
    assert z.norm() == 0.0


def test_norm_and_normalized():
    s = FockState({(2, 0): 3.0, (0, 2): 4.0j})
    assert abs(s.norm() - 5.0) < 1e-15
    n = s.normalized()
    assert abs(n.norm() - 1.0) < 1e-15
    assert abs(n[(2, 0)] - 0.6) < 1e-15
    assert normalize(s).allclose(n)
    with pytest.raises(DegenerateStateError):
        FockState({}, 2).normalized()


def test_linear_algebra_ops():
    a = FockState({(1, 0): 1.0})
    b = FockState({(0, 1): 1.0})
    s = INV_SQRT2 * a + INV_SQRT2 * b
    assert abs(s.norm() - 1.0) < 1e-15
    d = s - INV_SQRT2 * b
    assert d.allclose(INV_SQRT2 * a)
    with pytest.raises(DimensionMismatchError):
        a + basis_state((1, 0, 0))


def test_scalar_multiplication_is_commutative():
    s = FockState({(1, 1): 0.5 - 0.5j})
    assert (2j * s).allclose(s * 2j)
    assert (2j * s)[(1, 1)] == 1j * (1 - 1j)


def test_items_sorted_lexicographically():
    s = FockState({(0, 2): 1.0, (2, 0): 1.0, (1, 1): 1.0})
    assert [occ for occ, _ in s.items()] == [(0, 2), (1, 1), (2, 0)]
    assert list(s) == s.occupations()


def test_inner_product_conjugates_first_argument():
    a = FockState({(1, 0): 1j})
    b = FockState({(1, 0): 1.0, (0, 1): 1.0}) * INV_SQRT2
    assert abs(inner_product(a, b) - (-1j * INV_SQRT2)) < 1e-15
    assert abs(inner_product(b, a) - (1j * INV_SQRT2)) < 1e-15
    with pytest.raises(DimensionMismatchError):
        inner_product(a, basis_state((1, 0, 0)))


def test_inner_product_of_random_states_matches_dense(seed=7):
    rng = np.random.default_rng(seed)
    keys = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    for _ in range(20):
        amps_a = rng.normal(size=6) + 1j * rng.normal(size=6)
        amps_b = rng.normal(size=6) + 1j * rng.normal(size=6)
        a = FockState(dict(zip(keys, amps_a)), 3, prune=0.0)
        b = FockState(dict(zip(keys, amps_b)), 3, prune=0.0)
        expected = np.vdot(amps_a, amps_b)
        assert abs(inner_product(a, b) - expected) < 1e-12
        assert abs(a.norm() - np.linalg.norm(amps_a)) < 1e-12


def test_equality_and_allclose():
    a = FockState({(1, 0): 1.0})
    b = FockState({(1, 0): 1.0})
    c = FockState({(1, 0): 1.0 + 5e-13})
    assert a == b
    assert a != c
    assert a.allclose(c)
    assert not a.allclose(c, tol=1e-13)
    assert not a.allclose(basis_state((1, 0, 0)))
    assert a != "not a state"


def test_embed_places_modes_and_leaves_vacuum():
    small = FockState({(2, 0): INV_SQRT2, (0, 2): INV_SQRT2})
    big = embed(small, 5, (3, 1))
    assert big.mode_count == 5
    assert big[(0, 0, 0, 2, 0)] == INV_SQRT2
    assert big[(0, 2, 0, 0, 0)] == INV_SQRT2
    assert abs(big.norm() - 1.0) < 1e-15


def test_embed_validates_targets():
    s = basis_state((1, 1))
    with pytest.raises(DimensionMismatchError):
        embed(s, 5, (0, 1, 2))
    with pytest.raises(ValueError):
        embed(s, 5, (2, 2))
    with pytest.raises(ValueError):
        embed(s, 5, (0, 5))


def test_json_round_trip(seed=11):
    rng = np.random.default_rng(seed)
    keys = [(3, 0), (2, 1), (1, 2), (0, 3)]
    amps = rng.normal(size=4) + 1j * rng.normal(size=4)
    s = FockState(dict(zip(keys, amps)), 2, prune=0.0)
    back = FockState.from_json(s.to_json())
    assert back == s
    assert FockState.from_json(vacuum(3).to_json(), mode_count=3) == vacuum(3)


def test_repr_mentions_amplitudes():
    s = basis_state((1, 1))
    text = repr(s)
    assert "(1, 1)" in text
    assert "modes=2" in text
