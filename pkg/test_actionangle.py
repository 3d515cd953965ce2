import numpy as np
import pytest

from actionangle.duality import (action_angle_map, commutation_residual, dual_involution_residual,
                                 self_duality_residual)
from lax.matrices import lax_matrix_from
from lax.projection import scattering_data
from model.errors import ConfigError
from model.spec import ModelSpec, PhaseState, PotentialKind, random_cone_state

TWO_BODY = PhaseState.from_arrays([1.0, -1.0], [0.0, 0.0])
SPEC = ModelSpec(kind=PotentialKind.RATIONAL, N=4, g=1.0)


def _states(count, seed=0):
    rng = np.random.default_rng(seed)
    return [random_cone_state(SPEC, rng, min_gap=1.0) for _ in range(count)]


def test_single_particle_is_fixed():
    data = action_angle_map(PhaseState.from_arrays([0.7], [-1.2]), g=1.0)
    assert np.allclose(data.x_tilde, [0.7])
    assert np.allclose(data.p_tilde, [-1.2])


def test_two_body_dual_momenta():
    data = action_angle_map(TWO_BODY, g=1.0)
    assert np.allclose(data.p_tilde, [0.5, -0.5])
    assert self_duality_residual(TWO_BODY, g=1.0) < 1e-10


def test_commutation_relation():
    for state in _states(5):
        assert commutation_residual(state, g=1.7) < 1e-12


def test_normalizations():
    for state in _states(5, seed=1):
        data = action_angle_map(state, g=1.0)
        L = lax_matrix_from(state.xs, state.p, 1.0)
        assert np.max(np.abs(data.e_tilde - 1)) < 1e-10
        assert np.max(np.abs(data.e_check - 1)) < 1e-10
        assert np.max(np.abs(data.U @ L @ data.U.conj().T - np.diag(data.p_tilde))) < 1e-10
        assert np.all(np.diff(data.p_tilde) < 0)


def test_spectrum_and_scattering_link():
    for state in _states(3, seed=2):
        data = action_angle_map(state, g=1.0)
        spectrum = np.sort(np.linalg.eigvalsh(lax_matrix_from(state.xs, state.p, 1.0)))[::-1]
        assert np.max(np.abs(data.p_tilde - spectrum)) < 1e-12
        p_out, _ = scattering_data(state, SPEC)
        assert np.max(np.abs(data.p_tilde - p_out)) < 1e-12


@pytest.mark.parametrize('g', [0.5, 1.0, 2.0])
def test_self_duality(g):
    for state in _states(5, seed=3):
        assert self_duality_residual(state, g) < 1e-9


@pytest.mark.parametrize('g', [0.5, 1.0, 2.0])
def test_dual_involution(g):
    for state in _states(3, seed=4):
        assert dual_involution_residual(state, g) < 1e-9


def test_weak_coupling_dual_positions():
    """At tiny g the dual Ã is nearly diagonal"""
    g = 1e-6
    for state in _states(3, seed=5):
        A_tilde = action_angle_map(state, g).A_tilde
        off_diagonal = A_tilde - np.diag(np.diag(A_tilde))
        assert np.max(np.abs(off_diagonal)) < 1e-3


def test_zero_coupling_rejected():
    with pytest.raises(ConfigError):
        action_angle_map(TWO_BODY, g=0.0)
