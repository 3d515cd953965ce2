import json
import math

import numpy as np
import pytest

from model.errors import CMSError, ConfigError, PoleError
from model.potentials import measure_degeneration_constant, potential_derivative, potential_value
from model.spec import ModelSpec, PhaseState, PotentialKind, min_gap, random_cone_state, validate_state
from model.special import gamma_fn, log_gamma, trig_lattice_partial_sum, weierstrass_p, weierstrass_p_direct

RATIONAL = ModelSpec(kind=PotentialKind.RATIONAL, N=2, g=1.0)
TRIG = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=1.0, a=2.0)
ELLIPTIC = ModelSpec(kind=PotentialKind.ELLIPTIC, N=2, g=1.0, omega1=math.pi / 2, omega2_imag=20.0)


# --- ModelSpec -----------------------------------------------------------------

def test_spec_json_roundtrip():
    """Optional fields that are unset stay out of the JSON object"""
    spec = ModelSpec.load({'kind': 'II', 'N': 3, 'g': 0.5, 'a': 1.5, 'beta': 0.25})
    data = json.loads(spec.to_json())
    assert data['kind'] == 'II'
    assert 'omega1' not in data
    assert ModelSpec.load(data) == spec


def test_spec_accepts_family_names():
    assert ModelSpec.load({'kind': 'trigonometric', 'N': 2, 'g': 1, 'a': 1}).kind is PotentialKind.TRIGONOMETRIC


@pytest.mark.parametrize('data', [
    {'kind': 'I', 'N': 2, 'g': 1, 'colour': 'red'},
    {'kind': 'V', 'N': 2, 'g': 1},
    {'kind': 'I', 'N': 0, 'g': 1},
    {'kind': 'I', 'N': 2, 'g': 1, 'm': -1},
    {'kind': 'II', 'N': 2, 'g': 1},
    {'kind': 'IV', 'N': 2, 'g': 1, 'omega1': 1.0},
    {'kind': 'I', 'N': 2, 'g': 1, 'beta': 0},
])
def test_spec_rejects_bad_input(data):
    with pytest.raises(ConfigError):
        ModelSpec.load(data)


def test_with_changes_revalidates():
    assert RATIONAL.with_changes(g=3.0).g == 3.0
    with pytest.raises(ConfigError):
        RATIONAL.with_changes(m=0.0)


def test_hbar_defaults_to_one():
    assert RATIONAL.hbar_value == 1.0
    assert RATIONAL.with_changes(hbar=0.5).hbar_value == 0.5


# --- Конфигурационное пространство -----------------------------------------------------

def test_min_gap_includes_wraparound_for_periodic_kinds():
    x = np.array([2.5, 1.0, 0.0])
    assert min_gap(x, TRIG) == pytest.approx(math.pi - 2.5)
    assert min_gap(x, TRIG.with_changes(kind='I', a=None)) == pytest.approx(1.0)


def test_validate_state_rejects_unordered_positions():
    with pytest.raises(ConfigError):
        validate_state(PhaseState.from_arrays([0.0, 1.0], [0.0, 0.0]), RATIONAL)


@pytest.mark.parametrize('spec', [RATIONAL.with_changes(N=4), TRIG.with_changes(N=3, a=1.0)])
def test_random_cone_state_respects_min_gap(spec):
    rng = np.random.default_rng(7)
    for _ in range(20):
        state = random_cone_state(spec, rng, min_gap=1.0)
        validate_state(state, spec)
        assert min_gap(state.xs, spec) >= 1.0 - 1e-12


def test_random_cone_state_needs_room_on_the_circle():
    with pytest.raises(ConfigError):
        random_cone_state(TRIG.with_changes(N=4), np.random.default_rng(0), min_gap=1.0)


# --- Потенциалы -------------------------------------------------------------------

def test_potential_examples():
    assert potential_value(RATIONAL, 2.0) == pytest.approx(0.25)
    assert potential_value(TRIG, math.pi / 2) == pytest.approx(1.0)


def test_potential_pole_guard():
    with pytest.raises(PoleError):
        potential_value(RATIONAL, 1e-13)
    with pytest.raises(PoleError):
        potential_value(TRIG, math.pi)


@pytest.mark.parametrize('spec', [
    RATIONAL,
    ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=1.0, a=0.7),
    TRIG,
    ELLIPTIC,
])
def test_potential_derivative_matches_central_difference(spec):
    x, h = 0.9, 1e-5
    numeric = (potential_value(spec, x + h) - potential_value(spec, x - h)) / (2 * h)
    assert potential_derivative(spec, x) == pytest.approx(numeric, rel=1e-6)


def test_elliptic_potential_is_shifted_trigonometric():
    """℘ with ω₁ = π/2, ω₂ = 20i equals a = 2 type III up to a measured constant"""
    trig = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=2, g=1.0, a=2.0)
    constant, spread = measure_degeneration_constant(lambda x: potential_value(ELLIPTIC, x),
                                                     lambda x: potential_value(trig, x), [0.7, 1.3])
    assert spread < 1e-8
    assert potential_value(ELLIPTIC, math.pi / 2) == pytest.approx(potential_value(trig, math.pi / 2) + constant,
                                                                    abs=1e-6)


def test_hyperbolic_potential_tends_to_rational():
    spec = ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=1.0, a=1e-3)
    for x in np.linspace(0.5, 5.0, 10):
        assert abs(potential_value(spec, x) - 1 / x ** 2) < 1e-6


# --- Специальные функции ------------------------------------------------------------

def test_weierstrass_laurent_leading_term():
    assert weierstrass_p(1e-3, 1.0, 1j).real == pytest.approx(1e6, rel=1e-3)


def test_weierstrass_periodicity():
    rng = np.random.default_rng(3)
    for _ in range(10):
        z = complex(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
        for shift in (2.0, 2j, 2.0 + 2j):
            assert abs(weierstrass_p(z + shift, 1.0, 1j) - weierstrass_p(z, 1.0, 1j)) < 1e-9 * abs(weierstrass_p(z, 1.0, 1j))


def test_weierstrass_is_even():
    z = 0.3 + 0.2j
    assert abs(weierstrass_p(-z, 1.0, 1.5j) - weierstrass_p(z, 1.0, 1.5j)) < 1e-10


def test_weierstrass_agrees_with_brute_force_sum():
    """The brute-force square sum converges slowly; agreement to a few digits is all it offers"""
    z = 0.4 + 0.3j
    assert abs(weierstrass_p_direct(z, 1.0, 1j, 200) - weierstrass_p(z, 1.0, 1j)) < 1e-2


@pytest.mark.parametrize('a', [1.0, 0.5])
def test_weierstrass_degenerates_to_trigonometric(a):
    constant, spread = measure_degeneration_constant(
        lambda x: weierstrass_p(x, math.pi / a, 20j).real,
        lambda x: a * a / (4 * math.sin(a * x / 2) ** 2), [0.7, 1.3, 2.0])
    assert spread < 1e-8


def test_weierstrass_degenerates_to_hyperbolic():
    a = 1.0
    constant, spread = measure_degeneration_constant(
        lambda x: weierstrass_p(x, 20.0, 1j * math.pi / a).real,
        lambda x: a * a / (4 * math.sinh(a * x / 2) ** 2), [0.7, 1.3, 2.0])
    assert spread < 1e-8


def test_weierstrass_lattice_guard():
    with pytest.raises(PoleError):
        weierstrass_p(2.0, 1.0, 1j)


def test_measure_degeneration_constant_needs_two_probes():
    with pytest.raises(ValueError):
        measure_degeneration_constant(math.sin, math.cos, [0.5])


@pytest.mark.parametrize('x', [0.5, 1.0, 2.0])
def test_trig_lattice_sum(x):
    exact = 1 / (4 * math.sin(x / 2) ** 2)
    assert abs(trig_lattice_partial_sum(x, 100_000) - exact) < 1e-6
    # at K = 10⁴ what is left is the tail 1/(2π²K) to leading order
    K = 10_000
    assert exact - trig_lattice_partial_sum(x, K) == pytest.approx(1 / (2 * math.pi ** 2 * K), abs=1e-8)


def test_gamma_values():
    assert gamma_fn(1) == pytest.approx(1.0)
    assert gamma_fn(5) == pytest.approx(24.0)
    assert abs(gamma_fn(0.5) ** 2 - math.pi) < 1e-12 * math.pi


def test_gamma_reflection():
    z = 0.3 + 0.7j
    assert gamma_fn(z) * gamma_fn(1 - z) == pytest.approx(math.pi / complex(np.sin(math.pi * z)), rel=1e-12)


def test_gamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_fn(z)
    with pytest.raises(PoleError):
        log_gamma(-2)


def test_log_gamma_matches_gamma():
    z = 2.5 + 1.5j
    assert complex(np.exp(log_gamma(z))) == pytest.approx(gamma_fn(z), rel=1e-12)


# --- Исключения ---------------------------------------------------------------------------

def _error_classes(base):
    for sub in base.__subclasses__():
        yield sub
        yield from _error_classes(sub)


def test_every_error_is_documented():
    for error in [CMSError, *_error_classes(CMSError)]:
        assert error.__doc__, f'{error.__name__} has no docstring'
