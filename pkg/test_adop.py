import cmath
from itertools import combinations

import numpy as np
import pytest

from adop.closed_form import Coordinate, Exp, Sin, affine, menu_function, plane_wave
from adop.operators import (ShiftCoefficients, adop_apply, adop_commutator_residual, adop_compose,
                            adop_free_limit, adop_nonrel_limit, quantum_hamiltonian_action)
from model.errors import BranchError, ConfigError, PoleError
from model.spec import ModelSpec, PotentialKind, random_cone_state
from relativistic.profiles import RSProfile, rs_profile_f

RATIONAL = ModelSpec(kind=PotentialKind.RATIONAL, N=3, g=0.5, beta=0.25)
HYPERBOLIC = ModelSpec(kind=PotentialKind.HYPERBOLIC, N=2, g=0.8, beta=0.3, a=1.0)
TRIGONOMETRIC = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=3, g=0.6, beta=0.2, a=0.8)


def _points(spec, count=10, seed=0):
    rng = np.random.default_rng(seed)
    return [random_cone_state(spec, rng, min_gap=1.0).xs for _ in range(count)]


def elementary_symmetric(values, r):
    return sum(np.prod([values[i] for i in subset]) for subset in combinations(range(len(values)), r))


# --- Выражения --------------------------------------------------------------------------

def test_closed_form_derivatives():
    F = Exp(affine([1.0, 2.0])) * Sin(Coordinate(0))
    x = np.array([0.4, -0.3])
    expected = cmath.exp(0.4 - 0.6) * (cmath.sin(0.4) + cmath.cos(0.4))
    assert F.derivative(0).evaluate(x) == pytest.approx(expected)
    assert (Coordinate(1) ** 3).laplacian(2).evaluate(x) == pytest.approx(6 * -0.3)


def test_closed_form_at_complex_points():
    F = plane_wave([1.0, 2.0])
    assert F([1 - 0.5j, 0.25j]) == pytest.approx(cmath.exp(1 - 0.5j + 0.5j))


def test_unknown_menu_function():
    with pytest.raises(ConfigError):
        menu_function('bessel', 2)


# --- Множители f_± ---------------------------------------------------------------------

@pytest.mark.parametrize('spec', [RATIONAL, HYPERBOLIC, TRIGONOMETRIC])
def test_factorization_of_profile(spec):
    coefficients = ShiftCoefficients.from_spec(spec)
    profile = RSProfile.from_spec(spec)
    for x in (0.7, 1.5, 2.2):
        product = coefficients.factor(1, x) * coefficients.factor(-1, x)
        assert abs(product - rs_profile_f(profile, x)) < 1e-13


def test_factors_tend_to_one():
    coefficients = ShiftCoefficients.from_spec(TRIGONOMETRIC.with_changes(g=1e-8))
    assert abs(coefficients.factor(1, 1.3 - 0.2j) - 1) < 1e-7
    assert ShiftCoefficients.from_spec(TRIGONOMETRIC.with_changes(g=0.0)).factor(-1, 0.9) == 1


def test_branch_cut_is_refused():
    """1 + igβ/x is −1 at x = −igβ/2"""
    coefficients = ShiftCoefficients.from_spec(RATIONAL.with_changes(g=1.0, beta=1.0))
    with pytest.raises(BranchError):
        coefficients.factor(1, -0.5j)


def test_wall_is_refused():
    F = menu_function('plane-wave', 3)
    with pytest.raises(PoleError):
        adop_apply(RATIONAL, 1, F, [1.0, 0.05, 0.0])


def test_elliptic_and_bad_orders():
    elliptic = ModelSpec(kind=PotentialKind.ELLIPTIC, N=2, g=1.0, beta=0.5, omega1=2.0, omega2_imag=4.0,
                         a_c=1.0, b_c=1.0)
    F = menu_function('plane-wave', 2)
    with pytest.raises(ConfigError):
        adop_apply(elliptic, 1, F, [1.0, 0.0])
    with pytest.raises(ConfigError):
        adop_apply(HYPERBOLIC, 0, F, [1.0, 0.0])
    with pytest.raises(ConfigError):
        adop_apply(HYPERBOLIC, -3, F, [1.0, 0.0])


# --- Действие операторов -----------------------------------------------------------------

@pytest.mark.parametrize('r_signed', [1, 2, -1, -3])
def test_free_operators_on_plane_wave(r_signed):
    spec = RATIONAL.with_changes(g=0.0, beta=0.5)
    mu = [0.3, -0.2, 1.1]
    F = plane_wave(mu)
    x = np.array([1.5, 0.2, -1.0])
    direction = 1 if r_signed > 0 else -1
    shifts = [cmath.exp(-direction * 0.5j * m) for m in mu]
    expected = elementary_symmetric(shifts, abs(r_signed)) * F(x)
    assert abs(adop_apply(spec, r_signed, F, x) - expected) < 1e-13


def test_top_operator_is_full_shift():
    spec = TRIGONOMETRIC
    F = menu_function('trig-mix', 3)
    x = _points(spec, 1)[0]
    shift = 1j * spec.beta * np.ones(3)
    assert abs(adop_apply(spec, 3, F, x) - F(x - shift)) < 1e-15
    assert abs(adop_apply(spec, -3, F, x) - F(x + shift)) < 1e-15
    twice = adop_compose(spec, 3, 3, F, x)
    assert twice == pytest.approx(F(x - 2 * shift), rel=1e-13)


def test_trigonometric_two_body_value():
    """Both subsets of Ŝ₁ summed by hand"""
    spec = ModelSpec(kind=PotentialKind.TRIGONOMETRIC, N=2, g=0.5, beta=1 / 3, a=1.0, hbar=1.0)
    F = plane_wave([1.0, 2.0])
    x = np.array([1.0, 0.0])
    c, s = 0.5 / 3, 1j / 3

    def f(sign, y):
        return cmath.sqrt(cmath.sin((y + sign * 1j * c) / 2) / cmath.sin(y / 2))

    expected = 0j
    for i, j in ((0, 1), (1, 0)):
        y = x[i] - x[j]
        shifted = x.astype(complex)
        shifted[i] -= s
        expected += f(-1, y) * f(1, y - s) * cmath.exp(shifted[0] + 2 * shifted[1])
    assert abs(adop_apply(spec, 1, F, x) - expected) < 1e-12


# --- Коммутативность ------------------------------------------------------------------------

@pytest.mark.parametrize('spec, r, s', [
    (RATIONAL, 1, 2),
    (RATIONAL, 1, -1),
    (HYPERBOLIC, 1, -1),
    (TRIGONOMETRIC, 1, 2),
    (TRIGONOMETRIC, 2, -1),
])
def test_operators_commute(spec, r, s):
    F = menu_function('plane-wave', spec.N)
    assert adop_commutator_residual(spec, r, s, F, _points(spec)) < 1e-9


@pytest.mark.parametrize('name', ['trig-mix', 'polynomial', 'gaussian'])
def test_operators_commute_on_menu(name):
    F = menu_function(name, 3)
    assert adop_commutator_residual(RATIONAL, 1, 2, F, _points(RATIONAL, 5, seed=1)) < 1e-9


def test_free_operators_commute():
    spec = HYPERBOLIC.with_changes(N=3, g=0.0)
    F = menu_function('gaussian', 3)
    assert adop_commutator_residual(spec, 1, -2, F, _points(spec)) < 1e-13


# --- Пределы ------------------------------------------------------------------------------

@pytest.mark.parametrize('spec', [RATIONAL, HYPERBOLIC, TRIGONOMETRIC])
def test_free_limit_is_monotone(spec):
    F = menu_function('plane-wave', spec.N)
    x = _points(spec, 1, seed=2)[0]
    deviations = adop_free_limit(spec, 1, F, x, [1e-2, 1e-4, 1e-6])
    assert deviations[0] > deviations[1] > deviations[2]


def test_free_nonrel_limit_on_cubic():
    """Shifts of a cubic stop at second order, so the free limit is exact"""
    spec = RATIONAL.with_changes(g=0.0)
    F = menu_function('polynomial', 3)
    row, = adop_nonrel_limit(spec, F, _points(spec, 3), [1e-2])
    assert row['residual'] < 1e-8
    assert abs(row['constant']) < 1e-6


def test_rational_nonrel_limit():
    F = menu_function('gaussian', 3)
    rows = adop_nonrel_limit(RATIONAL, F, _points(RATIONAL, 3, seed=4), [1e-1, 1e-2, 1e-3])
    residuals = [row['residual'] for row in rows]
    assert residuals[0] > residuals[1] > residuals[2]
    assert residuals[2] < 1e-2


def test_quantum_hamiltonian_free_plane_wave():
    spec = RATIONAL.with_changes(g=0.0, hbar=2.0)
    F = plane_wave([1.0, 0.5, 0.0])
    x = [1.2, 0.3, -0.4]
    assert quantum_hamiltonian_action(spec, F, x) == pytest.approx(-0.5 * 4 * 1.25 * F(x))
