import numpy as np
import pytest

from locinv.errors import SymmetryViolation, WrongQubitCount
from locinv.local import LocalUnitary
from locinv.typeii_symmetry import (
    SLOTS, RealSuperoperator, SubtypeId, adjoining_superop, adjoint_map_residual, all_subtypes,
    classify_pattern, coincidence, coincidence_count, factor_local_pair, kron_rank_gap,
    pair_superop, real_superop_of_pair, realizations, sample_template, subtype_counts,
    subtype_pattern, symmetry_class_test, symmetry_maps_to_adjoint, template_of,
    transposition_matrix, unsplit, vec_split,
)

from conftest import random_unitary


def rand_c(rng, shape=(4, 4)):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_subtype_ids():
    ids = [str(s) for s in all_subtypes()]
    assert len(ids) == 16 and len(set(ids)) == 16
    assert SubtypeId.parse("A_{+--+}") == SubtypeId("A", "+--+")
    with pytest.raises(ValueError):
        SubtypeId("E", "++++")


def test_pair_superop_identity_and_action(rng):
    eye = LocalUnitary.identity(2)
    assert np.array_equal(real_superop_of_pair(eye, eye).matrix, np.eye(32))
    for _ in range(5):
        k1, k2 = LocalUnitary.random(2, rng), LocalUnitary.random(2, rng)
        m = rand_c(rng)
        got = real_superop_of_pair(k1, k2).apply(m)
        assert np.allclose(got, k1.full() @ m @ k2.full(), atol=1e-12)


def test_diagonal_phase_pair_is_diagonal():
    d = LocalUnitary.from_axis_angles([(0, 0, 1), (0, 0, 1)], [0.4, 1.1])
    s = pair_superop(d, d)
    assert np.allclose(s, np.diag(np.diag(s)))
    r = real_superop_of_pair(d, d).matrix
    assert np.allclose(r @ r.T, np.eye(32))


def test_wrong_size_rejected():
    with pytest.raises(WrongQubitCount):
        pair_superop(np.eye(8), np.eye(8))
    with pytest.raises(ValueError):
        RealSuperoperator(np.eye(16))


def test_adjoining_superop(rng):
    adj = adjoining_superop()
    assert np.array_equal(adj.matrix @ adj.matrix, np.eye(32))
    for _ in range(1000):
        m = rand_c(rng)
        assert np.abs(adj.matrix @ vec_split(m) - vec_split(m.conj().T)).max() < 1e-12
    assert transposition_matrix()[1, 4] == 1


def test_vec_split_round_trip(rng):
    m = rand_c(rng)
    assert np.array_equal(unsplit(vec_split(m)), m)


def test_coincidence_identity_pair():
    eye = LocalUnitary.identity(2)
    c = coincidence(real_superop_of_pair(eye, eye))
    assert sorted(zip(*np.nonzero(c.block))) == sorted(SLOTS["A"])
    assert coincidence_count(real_superop_of_pair(eye, eye)) == 4


def test_coincidence_of_pattern_carries_signs():
    p = subtype_pattern("A+--+")
    c = np.diag(p)[[0, 5, 10, 15]]
    assert list(np.sign(c)) == [1, -1, -1, 1]


def test_generic_pair_has_fewer_coincidences(rng):
    k1, k2 = LocalUnitary.random(2, rng), LocalUnitary.random(2, rng)
    blk = real_superop_of_pair(k1, k2).block
    t = transposition_matrix()
    ones = np.sum(np.abs(np.abs(blk[t > 0]) - 1) < 1e-9)
    assert ones < 4


def test_patterns_negatives():
    assert np.array_equal(subtype_pattern("A++++"), -subtype_pattern("A----"))
    assert np.array_equal(subtype_pattern("B+--+"), -subtype_pattern("B-++-"))


@pytest.mark.parametrize("sid", [str(s) for s in all_subtypes()])
def test_pattern_properties(sid):
    p = subtype_pattern(sid)
    assert np.allclose(p @ p.T, np.eye(16))
    assert str(classify_pattern(p)) == sid
    assert kron_rank_gap(p) < 1e-10
    k1, k2 = factor_local_pair(p)
    assert np.linalg.norm(pair_superop(k1, k2) - p) < 1e-9


@pytest.mark.parametrize("sid", [str(s) for s in all_subtypes()])
def test_realizations(sid):
    r = realizations(sid)
    assert len(r) == 4
    assert np.array_equal(r[0][2], subtype_pattern(sid))
    for k1, k2, blk in r:
        assert np.allclose(pair_superop(k1, k2), blk)
        assert str(classify_pattern(blk)) == sid


def test_template_examples():
    m = np.diag([1, 1j, 1j, 1])
    assert symmetry_class_test(m, "A+--+")
    assert symmetry_maps_to_adjoint(m, "A+--+") < 1e-12
    assert symmetry_class_test(np.eye(4), "A++++")
    assert symmetry_maps_to_adjoint(np.eye(4), "A++++") < 1e-12
    t = template_of(subtype_pattern("A+--+"))
    assert (0, 0) in t.real and (1, 1) in t.imaginary


def test_random_matrix_fits_no_template(rng):
    m = rand_c(rng)
    assert not any(symmetry_class_test(m, s) for s in all_subtypes())
    with pytest.raises(SymmetryViolation):
        symmetry_maps_to_adjoint(m, "B+--+")


@pytest.mark.parametrize("sid", [str(s) for s in all_subtypes()])
def test_template_samples_map_to_adjoint(sid, rng):
    p = subtype_pattern(sid)
    t = template_of(p)
    for _ in range(20):
        m = sample_template(p, rng)
        assert symmetry_class_test(m, sid)
        assert symmetry_maps_to_adjoint(m, sid) < 1e-10
    for pos in t.zeros:
        bad = m.copy()
        bad[pos] += 1e-3
        assert adjoint_map_residual(bad, p) > 1e-4


def test_sampled_b_template_pointwise_inversion(rng):
    # a propagator in the B+--+ class is inverted pointwise by the factor pair
    p = subtype_pattern("B+--+")
    k1, k2 = factor_local_pair(p)
    m = sample_template(p, rng)
    assert np.allclose(k1.full() @ m @ k2.full(), m.conj().T, atol=1e-10)


def test_subtype_counts():
    assert subtype_counts(2) == (4, 4)
    assert subtype_counts(3) == (8, 8)
    assert subtype_counts(5) == (32, 32)
    with pytest.raises(ValueError):
        subtype_counts(1)
