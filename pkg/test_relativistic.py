import math

import numpy as np
import pytest

from dynamics.hamiltonians import hamiltonian_rel, momentum_rel
from dynamics.integrator import integrate
from model.errors import ConfigError, PoleError
from model.spec import ModelSpec, PhaseState, PotentialKind, random_cone_state
from relativistic.integrals import (energy_from_integrals, limit_slope, nonrel_limit_residual, poincare_residuals,
                                    rs_integrals, rs_momentum_from_integrals)
from relativistic.profiles import RSProfile, fit_profile_constants, rs_profile_f
from relativistic.rs_lax import cauchy_identity_residual, principal_minor_sums, rs_lax

TWO_BODY = PhaseState.from_arrays([1.0, -1.0], [0.0, 0.0])
KINDS = [
    ModelSpec(kind=PotentialKind.RATIONAL, N=3, g=1.0, beta=0.6),
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=3, g=0.9, beta=0.5, a=1.2),
    ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=0.7, beta=0.4, a=0.8),
]
ELLIPTIC = ModelSpec(kind=PotentialKind.ELLIPTIC, N=3, g=1.0, beta=0.5, omega1=2.0, omega2_imag=4.0,
                     a_c=1.0, b_c=1.0)


def _random_state(spec, seed):
    return random_cone_state(spec, np.random.default_rng(seed), min_gap=1.0)


# --- Профили -----------------------------------------------------------------------

def test_profile_examples():
    rational = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0, beta=1.0)
    assert rs_profile_f(RSProfile.from_spec(rational), 2.0) == pytest.approx(math.sqrt(1.25))
    hyperbolic = ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=1.0, beta=1.0, a=1.0)
    expected = math.sqrt(1 + math.sin(0.5) ** 2 / math.sinh(0.5) ** 2)
    assert abs(rs_profile_f(RSProfile.from_spec(hyperbolic), 1.0) - expected) < 1e-14


@pytest.mark.parametrize('spec', KINDS)
def test_free_profile_is_one(spec):
    profile = RSProfile.from_spec(spec.with_changes(g=0.0))
    for x in (0.3, 1.0, 2.5):
        assert rs_profile_f(profile, x) == 1.0


@pytest.mark.parametrize('spec', KINDS + [ELLIPTIC])
def test_profile_is_even_and_positive(spec):
    profile = RSProfile.from_spec(spec)
    for x in (0.4, 1.1, 1.9):
        assert profile.value(x) > 0
        assert profile.value(-x) == pytest.approx(profile.value(x), rel=1e-12)


@pytest.mark.parametrize('spec', KINDS + [ELLIPTIC])
def test_log_derivative(spec):
    profile = RSProfile.from_spec(spec)
    x, h = 1.3, 1e-6
    numeric = (math.log(profile.value(x + h)) - math.log(profile.value(x - h))) / (2 * h)
    assert profile.log_derivative(x) == pytest.approx(numeric, rel=1e-6)


def test_profile_pole():
    with pytest.raises(PoleError):
        rs_profile_f(RSProfile.from_spec(KINDS[0]), 0.0)


def test_elliptic_profile_needs_constants():
    with pytest.raises(ConfigError):
        RSProfile.from_spec(ELLIPTIC.with_changes(a_c=None))


@pytest.mark.parametrize('spec', KINDS)
def test_profile_functional_equation(spec):
    """f² is affine in the kind's potential, fitted at two probes and checked at the rest"""
    scale = spec.a or 1.0
    _, _, misfit = fit_profile_constants(RSProfile.from_spec(spec), [v / scale for v in (0.7, 1.3, 2.1, 2.9)])
    assert misfit < 1e-8


def test_fit_rejects_elliptic():
    with pytest.raises(ConfigError):
        fit_profile_constants(RSProfile.from_spec(ELLIPTIC), [0.5, 1.0, 1.5])


# --- Интегралы -----------------------------------------------------------------------

def test_top_integral_is_total_momentum_exponential():
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0, beta=1.0)
    values = rs_integrals(PhaseState.from_arrays([1.0, -1.0], [1.0, 2.0]), spec)
    assert values[2] == pytest.approx(math.exp(3.0))


def test_two_body_first_integral():
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0, beta=1.0)
    assert rs_integrals(TWO_BODY, spec)[1] == pytest.approx(math.sqrt(5.0))


@pytest.mark.parametrize('spec', KINDS + [ELLIPTIC])
def test_reflected_integrals(spec):
    values = rs_integrals(_random_state(spec, 3), spec)
    N = spec.N
    for r in range(1, N + 1):
        upper = values[N - r] if r < N else 1.0
        assert values[-r] == pytest.approx(upper / values[N], rel=1e-12)


@pytest.mark.parametrize('spec', KINDS)
def test_energy_and_momentum_from_integrals(spec):
    state = _random_state(spec, 5)
    values = rs_integrals(state, spec)
    assert energy_from_integrals(values, spec) == pytest.approx(hamiltonian_rel(state, spec), rel=1e-13)
    assert rs_momentum_from_integrals(values, spec) == pytest.approx(momentum_rel(state, spec), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize('spec', KINDS)
def test_integrals_conserved(spec):
    state = _random_state(spec, 7)
    start = rs_integrals(state, spec)
    traj = integrate(state, spec, T=10.0, tol=1e-10, relativistic=True)
    end = rs_integrals(traj.final_state, spec)
    for r, value in start.items():
        assert abs(end[r] - value) / abs(value) < 1e-7


# --- Матрица Лакса ------------------------------------------------------------------

@pytest.mark.parametrize('spec', KINDS + [KINDS[0].with_changes(N=4)])
def test_principal_minors_are_integrals(spec):
    state = _random_state(spec, 8)
    values = rs_integrals(state, spec)
    sums = principal_minor_sums(rs_lax(state, spec))
    for r, total in enumerate(sums, start=1):
        assert abs(total - values[r]) < 1e-10 * max(1.0, abs(values[r]))


def test_free_lax_is_diagonal():
    spec = KINDS[1].with_changes(g=0.0)
    state = _random_state(spec, 2)
    assert np.allclose(rs_lax(state, spec), np.diag(np.exp(spec.beta * state.ps)), atol=1e-14)


@pytest.mark.parametrize('spec', KINDS)
def test_rs_lax_is_hermitian(spec):
    matrix = rs_lax(_random_state(spec, 4), spec)
    assert np.max(np.abs(matrix - matrix.conj().T)) < 1e-12


def test_elliptic_lax_not_provided():
    with pytest.raises(ConfigError):
        rs_lax(_random_state(ELLIPTIC, 1), ELLIPTIC)


@pytest.mark.parametrize('n', [2, 3, 5])
def test_cauchy_identity(n):
    rng = np.random.default_rng(n)
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    w = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert cauchy_identity_residual(z, w) < 1e-12


# --- Алгебра Пуанкаре ------------------------------------------------------------------

def test_poincare_free_representation():
    spec = KINDS[0].with_changes(g=0.0)
    assert max(poincare_residuals(_random_state(spec, 1), spec)) < 1e-9


def test_poincare_hyperbolic():
    spec = KINDS[1]
    for seed in range(5):
        assert max(poincare_residuals(_random_state(spec, seed), spec)) < 1e-6


def test_poincare_elliptic():
    assert max(poincare_residuals(_random_state(ELLIPTIC, 3), ELLIPTIC)) < 1e-5


# --- Нерелятивистский предел ------------------------------------------------------------

def test_nonrel_limit_two_body():
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0, beta=1.0)
    residuals = nonrel_limit_residual(TWO_BODY, spec, [1e-1, 1e-2, 1e-3])
    assert 50 < residuals[0] / residuals[1] < 200
    assert 50 < residuals[1] / residuals[2] < 200


def test_nonrel_limit_free_series():
    """Next order of the free case is β²Σp⁴/24"""
    spec = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=0.0, beta=1.0)
    state = PhaseState.from_arrays([1.0, -1.0], [1.0, 2.0])
    residual, = nonrel_limit_residual(state, spec, [1e-3])
    assert residual == pytest.approx(1e-6 * 17 / 24, rel=5e-3)


def test_nonrel_limit_slope_trigonometric():
    spec = KINDS[2]
    betas = [1e-1, 1e-2, 1e-3]
    residuals = nonrel_limit_residual(_random_state(spec, 6), spec, betas)
    assert 1.0 <= limit_slope(betas, residuals) <= 4.0


def test_nonrel_limit_excludes_elliptic():
    with pytest.raises(ConfigError):
        nonrel_limit_residual(_random_state(ELLIPTIC, 0), ELLIPTIC, [1e-2])
