import numpy as np
import pytest
from conftest import random_commuting_composite, random_hermitian

from detqm.epr import spin_operators
from detqm.errors import DimensionMismatchError, NonCommutingError, NonHermitianError
from detqm.spectral import (
    compose,
    joint_projector,
    observable_from_json,
    observable_to_json,
    spectral_decompose,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def family_errors(obs):
    """Max deviations from the projector-family axioms."""
    dim = obs.dim
    recon = obs.reconstruction_error()
    idem = max(np.max(np.abs(p @ p - p)) for p in obs.projectors)
    herm = max(np.max(np.abs(p - p.conj().T)) for p in obs.projectors)
    orth = 0.0
    for i, p in enumerate(obs.projectors):
        for q in obs.projectors[i + 1:]:
            orth = max(orth, np.max(np.abs(p @ q)))
    comp = np.max(np.abs(sum(obs.projectors) - np.eye(dim)))
    return recon, idem, herm, orth, comp


def test_diagonal_spin_half():
    obs = spectral_decompose(SIGMA_Z / 2)
    assert obs.spectrum == (-0.5, 0.5)
    assert np.allclose(obs.projector_for(-0.5), np.diag([0, 1]))
    assert np.allclose(obs.projector_for(0.5), np.diag([1, 0]))


def test_identity_single_cluster():
    obs = spectral_decompose(np.eye(4))
    assert obs.spectrum == (1.0,)
    assert np.allclose(obs.projectors[0], np.eye(4))


def test_total_spin_squared_multiplicities():
    obs = spectral_decompose(spin_operators()["S2"], snap=(0.0, 2.0))
    assert obs.spectrum == (0.0, 2.0)
    ranks = [int(round(np.trace(p).real)) for p in obs.projectors]
    assert ranks == [1, 3]


def test_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        spectral_decompose(np.array([[0, 1], [0, 0]], dtype=complex))


def test_random_hermitian_family_axioms(rng):
    for _ in range(200):
        dim = int(rng.integers(2, 9))
        obs = spectral_decompose(random_hermitian(rng, dim))
        for err in family_errors(obs):
            assert err <= 1e-10


def test_compose_epr_parts():
    ops = spin_operators()
    a = spectral_decompose(ops["sx1"], snap=(-0.5, 0.5))
    b = spectral_decompose(ops["sx2"], snap=(-0.5, 0.5))
    c = compose([a, b])
    assert c.outcome_space == [(-0.5, -0.5), (-0.5, 0.5), (0.5, -0.5), (0.5, 0.5)]


def test_compose_rejects_non_commuting():
    a = spectral_decompose(SIGMA_X)
    b = spectral_decompose(SIGMA_Y)
    with pytest.raises(NonCommutingError) as err:
        compose([a, b])
    assert err.value.commutator_norm > 0.4


def test_compose_rejects_dimension_mismatch():
    a = spectral_decompose(SIGMA_X)
    b = spectral_decompose(np.eye(4))
    with pytest.raises(DimensionMismatchError):
        compose([a, b])


def test_self_composition_joint_projectors():
    a = spectral_decompose(SIGMA_Z)
    c = compose([a, a])
    assert np.allclose(joint_projector(c, (1.0, 1.0)), a.projector_for(1.0))
    assert np.allclose(joint_projector(c, (1.0, -1.0)), np.zeros((2, 2)))


def test_joint_projector_epr_rank_one():
    # hand tensor algebra: P_{sx=+1/2} (x) P_{sx=-1/2}
    ops = spin_operators()
    a = spectral_decompose(ops["sx1"], snap=(-0.5, 0.5))
    b = spectral_decompose(ops["sx2"], snap=(-0.5, 0.5))
    c = compose([a, b])
    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    expected = np.kron(plus, minus)
    pi = joint_projector(c, (0.5, -0.5))
    assert np.max(np.abs(pi - expected)) <= 1e-12
    assert int(round(np.trace(pi).real)) == 1


def test_joint_projector_rejects_unknown_outcome():
    a = spectral_decompose(SIGMA_Z)
    c = compose([a])
    with pytest.raises(ValueError):
        joint_projector(c, (0.25,))


def test_joint_projector_family_properties(rng):
    for _ in range(20):
        dim = int(rng.integers(2, 9))
        c = random_commuting_composite(rng, dim)
        total = np.zeros((dim, dim), dtype=complex)
        for outcome in c.outcome_space:
            pi = joint_projector(c, outcome)
            assert np.max(np.abs(pi @ pi - pi)) <= 1e-10
            assert np.max(np.abs(pi - pi.conj().T)) <= 1e-10
            total += pi
        assert np.max(np.abs(total - np.eye(dim))) <= 1e-9


def test_degenerate_eigenvalues_cluster():
    m = np.diag([1.0, 1.0 + 5e-9, 3.0]).astype(complex)
    obs = spectral_decompose(m, degeneracy_tol=1e-8)
    assert len(obs.spectrum) == 2
    assert obs.spectrum[0] == pytest.approx(1.0, abs=1e-8)


def test_snap_to_exact_values():
    obs = spectral_decompose(spin_operators()["sx1"], snap=(-0.5, 0.5))
    assert obs.spectrum == (-0.5, 0.5)


def test_json_round_trip(rng):
    obs = spectral_decompose(random_hermitian(rng, 4))
    loaded = observable_from_json(observable_to_json(obs))
    assert np.max(np.abs(loaded.matrix - obs.matrix)) <= 1e-15
    assert loaded.spectrum == pytest.approx(obs.spectrum, abs=1e-12)
