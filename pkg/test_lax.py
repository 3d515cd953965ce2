from itertools import combinations

import numpy as np
import pytest

from dynamics.brackets import poisson_bracket
from dynamics.hamiltonians import Observable, hamiltonian_nonrel
from dynamics.integrator import integrate
from lax.matrices import (RS_BETA_DERIVATIVE, RS_LIMIT_CLOSED_FORM, characteristic_coefficients,
                          lax_equation_residual, lax_from_rs_limit, lax_limit_closed_form, lax_matrix, power_traces,
                          rational_lax_pair)
from lax.projection import projection_positions, projection_velocities, scattering_data
from model.errors import CollisionError, ConfigError, DegenerateSpectrumError
from model.spec import ModelSpec, PhaseState, PotentialKind, random_cone_state

RATIONAL = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0)
TWO_BODY = PhaseState.from_arrays([1.0, -1.0], [0.0, 0.0])


def _random_state(spec, seed):
    return random_cone_state(spec, np.random.default_rng(seed), min_gap=1.0)


# --- Пара Лакса -------------------------------------------------------------------

def test_two_body_lax_matrix():
    L, M = rational_lax_pair(TWO_BODY, g=1.0)
    assert np.allclose(L.entries, [[0, 0.5j], [-0.5j, 0]])
    assert np.allclose(L.eigenvalues(), [0.5, -0.5])
    assert L.hermitian_defect < 1e-12


def test_free_lax_pair():
    state = PhaseState.from_arrays([2.0, 0.5, -1.0], [0.3, -1.0, 2.0])
    L, M = rational_lax_pair(state, g=0.0)
    assert np.allclose(L.entries, np.diag(state.ps))
    assert np.all(M == 0)


def test_m_rows_and_columns_sum_to_zero():
    spec = RATIONAL.with_changes(N=5)
    for seed in range(5):
        _, M = rational_lax_pair(_random_state(spec, seed), g=1.3, m=2.0)
        assert np.max(np.abs(M.sum(axis=0))) < 1e-14
        assert np.max(np.abs(M.sum(axis=1))) < 1e-14


def test_collision_guard():
    with pytest.raises(CollisionError):
        rational_lax_pair(PhaseState.from_arrays([1.0, 1.0], [0.0, 0.0]), g=1.0)


def test_lax_equation():
    assert lax_equation_residual(TWO_BODY, RATIONAL) < 1e-12
    assert lax_equation_residual(TWO_BODY, RATIONAL.with_changes(g=0.0)) == 0.0
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=4, g=2.0, m=3.0)
    assert lax_equation_residual(_random_state(spec, 1), spec) < 1e-10


def test_lax_equation_needs_rational_kind():
    spec = ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=1.0, a=1.0)
    with pytest.raises(ConfigError):
        lax_equation_residual(TWO_BODY, spec)


# --- Степенные следы ---------------------------------------------------------------

def test_power_traces():
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=4, g=1.5, m=2.0)
    state = _random_state(spec, 3)
    L, _ = rational_lax_pair(state, spec.g, spec.m)
    H1, H2, H3, H4 = power_traces(L, 4)
    assert H1 == pytest.approx(float(np.sum(state.ps)), abs=1e-12)
    assert H2 == pytest.approx(spec.m * hamiltonian_nonrel(state, spec), rel=1e-12)
    assert power_traces(rational_lax_pair(TWO_BODY, 1.0)[0], 2)[1] == pytest.approx(0.25)


def test_power_traces_range():
    L, _ = rational_lax_pair(TWO_BODY, 1.0)
    with pytest.raises(ConfigError):
        power_traces(L, 3)


def test_characteristic_coefficients():
    L, _ = rational_lax_pair(TWO_BODY, 1.0)
    S1, S2 = characteristic_coefficients(L)
    assert S1 == pytest.approx(0.0, abs=1e-14)
    assert S2 == pytest.approx(-0.25)


def _trace_observables(spec):
    return [Observable(f'H{r}', lambda s, r=r: power_traces(lax_matrix(s, spec), spec.N)[r - 1])
            for r in range(1, spec.N + 1)]


def _max_trace_bracket(spec, count, momentum_scale=1.0):
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(count):
        state = random_cone_state(spec, rng, min_gap=1.0, momentum_scale=momentum_scale)
        for F, G in combinations(_trace_observables(spec), 2):
            worst = max(worst, abs(poisson_bracket(F, G, state, h=1e-5, spec=spec)))
    return worst


@pytest.mark.parametrize('spec', [
    RATIONAL.with_changes(N=3),
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=1.0, a=1.0),
    ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=1.0, a=1.0),
], ids=['I', 'II', 'III'])
def test_power_traces_in_involution(spec):
    assert _max_trace_bracket(spec, 20) < 1e-6


@pytest.mark.parametrize('spec', [
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=4, g=1.0, a=1.0, beta=0.5),
    ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=4, g=1.0, a=1.0),
], ids=['II', 'III'])
def test_four_particle_traces_in_involution(spec):
    assert _max_trace_bracket(spec, 5, momentum_scale=0.5) < 1e-6


def test_isospectrality():
    spec = RATIONAL.with_changes(N=3)
    state = _random_state(spec, 6)
    spectrum = rational_lax_pair(state, spec.g)[0].eigenvalues()
    for s in integrate(state, spec, T=5.0).states:
        assert np.max(np.abs(rational_lax_pair(s, spec.g)[0].eigenvalues() - spectrum)) < 1e-8


# --- Предел релятивистской матрицы -------------------------------------------------------

def test_rs_limit_matches_rational_lax():
    spec = RATIONAL.with_changes(N=3, g=0.7)
    state = _random_state(spec, 9)
    limit = lax_from_rs_limit(state, spec)
    assert limit.origin == RS_BETA_DERIVATIVE
    assert np.max(np.abs(limit.entries - rational_lax_pair(state, spec.g)[0].entries)) < 1e-7


@pytest.mark.parametrize('spec', [
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=1.0, a=0.9),
    ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=1.0, a=1.0),
])
def test_rs_limit_diagonal_is_momentum(spec):
    state = _random_state(spec, 4)
    L = lax_from_rs_limit(state, spec)
    assert np.max(np.abs(np.diag(L.entries) - state.ps)) < 1e-8
    assert abs(np.trace(L.entries) - np.sum(state.ps)) < 1e-8


def test_rs_limit_traces_conserved_for_hyperbolic_flow():
    spec = ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=1.0, a=0.9)
    state = _random_state(spec, 12)
    start = power_traces(lax_from_rs_limit(state, spec), 3)
    end = power_traces(lax_from_rs_limit(integrate(state, spec, T=5.0).final_state, spec), 3)
    assert np.max(np.abs(np.array(end) - start)) < 1e-6


def test_rs_limit_excludes_elliptic():
    spec = ModelSpec(kind=PotentialKind.ELLIPTIC, N=2, g=1.0, omega1=2.0, omega2_imag=4.0)
    with pytest.raises(ConfigError):
        lax_from_rs_limit(TWO_BODY, spec)


@pytest.mark.parametrize('spec, expected', [
    (ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=1.0, a=1.0), 0.5j / np.sinh(1.0)),
    (ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=2, g=1.0, a=1.0), 0.5j / np.sin(1.0)),
])
def test_closed_form_limit_two_body(spec, expected):
    L = lax_limit_closed_form(TWO_BODY, spec)
    assert L.origin == RS_LIMIT_CLOSED_FORM
    assert L.entries[0, 1] == pytest.approx(expected, abs=1e-15)
    assert L.entries[1, 0] == pytest.approx(-expected, abs=1e-15)
    assert L.hermitian_defect < 1e-15


@pytest.mark.parametrize('spec', [
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=1.0, a=0.9),
    ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=0.7, a=1.0),
])
def test_closed_form_limit_matches_beta_derivative(spec):
    for seed in range(5):
        state = _random_state(spec, seed)
        difference = lax_from_rs_limit(state, spec).entries - lax_limit_closed_form(state, spec).entries
        assert np.max(np.abs(difference)) < 1e-6
    assert lax_matrix(state, spec).origin == RS_LIMIT_CLOSED_FORM


def test_closed_form_limit_guards():
    trig = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=2, g=1.0, a=1.0)
    with pytest.raises(CollisionError):
        lax_limit_closed_form(PhaseState.from_arrays([np.pi, -np.pi], [0.0, 0.0]), trig)
    with pytest.raises(ConfigError):
        lax_limit_closed_form(TWO_BODY, RATIONAL)
    elliptic = ModelSpec(kind=PotentialKind.ELLIPTIC, N=2, g=1.0, omega1=2.0, omega2_imag=4.0)
    with pytest.raises(ConfigError):
        lax_matrix(TWO_BODY, elliptic)


# --- Метод проекции -----------------------------------------------------------------

def test_projection_free_motion():
    state = PhaseState.from_arrays([1.0, 0.0], [-1.0, 1.0])
    positions = projection_positions(state, g=0.0, m=1.0, t=2.0)
    assert np.allclose(positions, [2.0, -1.0])


@pytest.mark.parametrize('t', [0.0, 1.0, 3.0])
def test_projection_two_body(t):
    root = np.sqrt(1 + t * t / 4)
    assert np.allclose(projection_positions(TWO_BODY, 1.0, 1.0, t), [root, -root])


def test_projection_agrees_with_integration():
    traj = integrate(TWO_BODY, RATIONAL, T=5.0, tol=1e-10)
    for t, x in zip(traj.times, traj.positions):
        assert np.max(np.abs(projection_positions(TWO_BODY, 1.0, 1.0, t) - x)) < 1e-6

    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=4, g=1.0, m=2.0)
    state = _random_state(spec, 10)
    traj = integrate(state, spec, T=5.0, tol=1e-10)
    deviation = max(np.max(np.abs(projection_positions(state, spec.g, spec.m, t) - x))
                    for t, x in zip(traj.times, traj.positions))
    assert deviation < 1e-6


# --- Рассеяние -----------------------------------------------------------------------

def test_two_body_scattering():
    p_out, p_in = scattering_data(TWO_BODY, RATIONAL)
    assert np.allclose(p_out, [0.5, -0.5])
    assert np.allclose(p_in, [-0.5, 0.5])


@pytest.mark.parametrize('spec', [
    ModelSpec(kind=PotentialKind.RATIONAL, N=3, g=1.0),
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=1.0, a=0.5),
])
def test_scattering_conserves_total_momentum(spec):
    state = _random_state(spec, 21)
    p_out, p_in = scattering_data(state, spec)
    assert np.sum(p_out) == pytest.approx(np.sum(state.ps), abs=1e-10)
    assert np.sum(p_in) == pytest.approx(np.sum(state.ps), abs=1e-10)
    assert np.all(np.diff(p_out) < 0)


def test_asymptotic_velocities():
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=3, g=1.0)
    state = _random_state(spec, 14)
    p_out, p_in = scattering_data(state, spec)
    assert np.max(np.abs(projection_velocities(state, 1.0, 1.0, 1e4) - p_out)) < 1e-3
    assert np.max(np.abs(projection_velocities(state, 1.0, 1.0, -1e4) - p_in)) < 1e-3


def test_scattering_rejects_bounded_motion():
    spec = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=2, g=1.0, a=1.0)
    with pytest.raises(ConfigError):
        scattering_data(TWO_BODY, spec)


def test_degenerate_asymptotic_momenta():
    spec = RATIONAL.with_changes(g=0.0)
    with pytest.raises(DegenerateSpectrumError):
        scattering_data(PhaseState.from_arrays([1.0, -1.0], [0.5, 0.5]), spec)
