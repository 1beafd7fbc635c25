"""Tests for detection patterns, projections, and reduced density matrices."""

import itertools
import math

import numpy as np
import pytest

from mzsim import (BALANCED, DetectionPattern, FockState,
                   UnknownDetectorError, basis_state, bs_unitary,
                   coincidence_from_density, density_from_pure, evolve,
                   mean_photon_number, partial_trace, pattern_probability,
                   projected_probability)

INV_SQRT2 = 1.0 / math.sqrt(2.0)

DETECTORS = {"Da": 0, "Db": 1, "Dc": 2}


def three_mode_state():
    # |1,1,0> and |0,0,2> with weights 1/3 and 2/3
    return FockState({(1, 1, 0): 1 / math.sqrt(3),
                      (0, 0, 2): math.sqrt(2 / 3)})


# ---------------------------------------------------------------------------
# detection patterns


def test_pattern_total_and_describe():
    p = DetectionPattern({"Da": 2, "Db": 1})
    assert p.total == 3
    assert p.exclusive
    assert p.describe() == "Da:2,Db:1"
    q = DetectionPattern({"Da": 1}, exclusive=False)
    assert q.describe() == "Da:1 (non-exclusive)"


def test_pattern_rejects_negative_counts():
    with pytest.raises(ValueError):
        DetectionPattern({"Da": -1})


def test_pattern_resolve_validates_names():
    p = DetectionPattern({"Dz": 1})
    with pytest.raises(UnknownDetectorError):
        p.resolve(DETECTORS)
    assert DetectionPattern({"Db": 2}).resolve(DETECTORS) == {1: 2}


def test_exclusive_pattern_requires_silent_other_detectors():
    state = three_mode_state()
    p_strict = DetectionPattern({"Da": 1})
    # the (1,1,0) ket has a photon at Db, so the exclusive pattern misses it
    assert pattern_probability(state, p_strict, DETECTORS) == 0.0
    p_loose = DetectionPattern({"Da": 1}, exclusive=False)
    assert abs(pattern_probability(state, p_loose, DETECTORS) - 1 / 3) < 1e-15


def test_exclusive_pattern_selects_exact_counts():
    state = three_mode_state()
    assert abs(pattern_probability(state, DetectionPattern({"Dc": 2}),
                                   DETECTORS) - 2 / 3) < 1e-15
    assert abs(pattern_probability(state, DetectionPattern({"Da": 1, "Db": 1}),
                                   DETECTORS) - 1 / 3) < 1e-15
    assert pattern_probability(state, DetectionPattern({"Dc": 1}),
                               DETECTORS) == 0.0


def test_unlisted_modes_outside_detectors_are_ignored():
    # the detector map only covers modes 0 and 1; mode 2 may hold photons
    state = three_mode_state()
    dets = {"Da": 0, "Db": 1}
    assert abs(pattern_probability(state, DetectionPattern({"Da": 1, "Db": 1}),
                                   dets) - 1 / 3) < 1e-15


def test_overfull_pattern_warns_and_returns_zero():
    state = basis_state((1, 0, 0))
    with pytest.warns(RuntimeWarning):
        value = pattern_probability(state, DetectionPattern({"Da": 1, "Db": 1}),
                                    DETECTORS)
    assert value == 0.0


def test_exclusive_patterns_partition_probability(seed=37):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        keys = [occ for occ in itertools.product(range(3), repeat=3)
                if sum(occ) == 2]
        amps = {occ: complex(rng.normal(), rng.normal()) for occ in keys}
        state = FockState(amps, 3).normalized()
        total = 0.0
        for occ in keys:
            pattern = DetectionPattern({"Da": occ[0], "Db": occ[1],
                                        "Dc": occ[2]})
            total += pattern_probability(state, pattern, DETECTORS)
        assert abs(total - 1.0) < 1e-12


def test_projected_probability():
    state = evolve(basis_state((1, 1)), bs_unitary(BALANCED, 0, 1, 2))
    proj = FockState({(2, 0): INV_SQRT2, (0, 2): INV_SQRT2})
    assert abs(projected_probability(state, proj) - 1.0) < 1e-12
    anti = FockState({(2, 0): INV_SQRT2, (0, 2): -INV_SQRT2})
    assert projected_probability(state, anti) < 1e-24


# ---------------------------------------------------------------------------
# density matrices


def test_density_from_pure_basics():
    state = three_mode_state()
    rho = density_from_pure(state)
    assert rho.modes == (0, 1, 2)
    assert abs(rho.trace() - 1.0) < 1e-15
    assert rho.is_hermitian()
    assert abs(rho.entry((1, 1, 0), (1, 1, 0)) - 1 / 3) < 1e-15
    cross = rho.entry((1, 1, 0), (0, 0, 2))
    assert abs(cross - math.sqrt(2) / 3) < 1e-15
    assert rho.entry((0, 0, 2), (1, 1, 0)) == cross.conjugate()


def test_diagonal_and_dense_round_trip():
    rho = density_from_pure(three_mode_state())
    diag = rho.diagonal()
    assert abs(sum(diag.values()) - 1.0) < 1e-15
    basis, dense = rho.to_dense()
    assert dense.shape == (len(basis), len(basis))
    assert abs(np.trace(dense) - 1.0) < 1e-14
    evals = np.linalg.eigvalsh(dense)
    assert evals.min() > -1e-12                  # positive semidefinite
    assert abs(evals.max() - 1.0) < 1e-12        # pure state: rank one


def test_partial_trace_of_product_state_factors():
    # |1>_0 (x) (|1,0> + |0,1>)_{1,2} / sqrt2: each factor reduces to a pure state
    state = FockState({(1, 1, 0): INV_SQRT2, (1, 0, 1): INV_SQRT2})
    rho = density_from_pure(state)
    left = partial_trace(rho, [1, 2])
    assert left.modes == (0,)
    assert abs(left.entry((1,), (1,)) - 1.0) < 1e-15
    right = partial_trace(rho, [0])
    assert abs(right.entry((1, 0), (0, 1)) - 0.5) < 1e-15
    _, dense = right.to_dense()
    assert abs(np.linalg.eigvalsh(dense).max() - 1.0) < 1e-12


def test_partial_trace_kills_coherence_with_traced_modes():
    # (|1,0> + |0,1>)/sqrt2: tracing either mode leaves an even mixture
    state = FockState({(1, 0): INV_SQRT2, (0, 1): INV_SQRT2})
    reduced = partial_trace(density_from_pure(state), [1])
    assert abs(reduced.entry((0,), (0,)) - 0.5) < 1e-15
    assert abs(reduced.entry((1,), (1,)) - 0.5) < 1e-15
    assert reduced.entry((1,), (0,)) == 0j
    assert abs(reduced.trace() - 1.0) < 1e-15


def test_partial_trace_keeps_original_mode_labels():
    state = FockState({(1, 0, 1): INV_SQRT2, (0, 1, 1): INV_SQRT2})
    rho = density_from_pure(state)
    reduced = partial_trace(rho, [0])
    assert reduced.modes == (1, 2)
    again = partial_trace(reduced, [2])
    assert again.modes == (1,)
    assert abs(again.entry((1,), (1,)) - 0.5) < 1e-15
    assert abs(mean_photon_number(again, 1) - 0.5) < 1e-15


def test_partial_trace_preserves_coherence_within_kept_modes():
    state = FockState({(1, 0, 0): INV_SQRT2, (0, 1, 0): INV_SQRT2})
    reduced = partial_trace(density_from_pure(state), [2])
    assert abs(reduced.entry((1, 0), (0, 1)) - 0.5) < 1e-15


def test_partial_trace_validation():
    rho = density_from_pure(basis_state((1, 1)))
    with pytest.raises(ValueError):
        partial_trace(rho, [5])
    with pytest.raises(ValueError):
        partial_trace(rho, [0, 1])
    with pytest.raises(ValueError):
        partial_trace(partial_trace(rho, [0]), [0])


def test_trace_is_preserved_by_partial_trace(seed=41):
    rng = np.random.default_rng(seed)
    keys = [occ for occ in itertools.product(range(3), repeat=3)
            if sum(occ) == 2]
    for _ in range(5):
        amps = {occ: complex(rng.normal(), rng.normal()) for occ in keys}
        rho = density_from_pure(FockState(amps, 3).normalized())
        for traced in ([0], [1], [2], [0, 1], [1, 2]):
            reduced = partial_trace(rho, traced)
            assert abs(reduced.trace() - 1.0) < 1e-12
            assert reduced.is_hermitian()


def test_mean_photon_number():
    rho = density_from_pure(three_mode_state())
    assert abs(mean_photon_number(rho, 0) - 1 / 3) < 1e-15
    assert abs(mean_photon_number(rho, 2) - 4 / 3) < 1e-15
    with pytest.raises(ValueError):
        mean_photon_number(partial_trace(rho, [0]), 0)


def test_coincidence_from_density_is_a_number_operator_product():
    rho = density_from_pure(three_mode_state())
    # <n_a n_b> picks up only the (1,1,0) branch
    both = DetectionPattern({"Da": 1, "Db": 1})
    assert abs(coincidence_from_density(rho, both, DETECTORS) - 1 / 3) < 1e-15
    # <n_c> = 2 * 2/3; <n_c^2> = 4 * 2/3
    one = DetectionPattern({"Dc": 1})
    two = DetectionPattern({"Dc": 2})
    assert abs(coincidence_from_density(rho, one, DETECTORS) - 4 / 3) < 1e-15
    assert abs(coincidence_from_density(rho, two, DETECTORS) - 8 / 3) < 1e-15


def test_coincidence_ignores_the_exclusive_flag():
    rho = density_from_pure(three_mode_state())
    strict = DetectionPattern({"Da": 1, "Db": 1}, exclusive=True)
    loose = DetectionPattern({"Da": 1, "Db": 1}, exclusive=False)
    assert (coincidence_from_density(rho, strict, DETECTORS)
            == coincidence_from_density(rho, loose, DETECTORS))


def test_coincidence_agrees_with_pattern_probability_for_single_counts(seed=43):
    # with at most one photon per listed mode and all photons listed, the
    # number operator product coincides with the exact-count projector
    rng = np.random.default_rng(seed)
    keys = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    for _ in range(10):
        amps = {occ: complex(rng.normal(), rng.normal()) for occ in keys}
        state = FockState(amps, 3).normalized()
        rho = density_from_pure(state)
        for pair in (("Da", "Db"), ("Da", "Dc"), ("Db", "Dc")):
            pattern = DetectionPattern({pair[0]: 1, pair[1]: 1})
            assert abs(coincidence_from_density(rho, pattern, DETECTORS)
                       - pattern_probability(state, pattern, DETECTORS)) < 1e-12


def test_coincidence_survives_tracing_unrelated_modes():
    state = three_mode_state()
    rho = density_from_pure(state)
    reduced = partial_trace(rho, [2])
    pattern = DetectionPattern({"Da": 1, "Db": 1})
    assert abs(coincidence_from_density(reduced, pattern, DETECTORS)
               - 1 / 3) < 1e-15
    with pytest.raises(ValueError):
        coincidence_from_density(reduced, DetectionPattern({"Dc": 1}), DETECTORS)


def test_density_allclose():
    a = density_from_pure(three_mode_state())
    b = density_from_pure(three_mode_state())
    assert a.allclose(b)
    assert not a.allclose(partial_trace(b, [2]))
