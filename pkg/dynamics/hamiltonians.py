"""
Hamiltonians of the nonrelativistic and relativistic systems and their vector fields.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Tuple

import numpy as np

from config.settings import GUARD_SETTINGS
from model.errors import ExpOverflowError
from model.potentials import potential_derivative, potential_value
from model.spec import ModelSpec, PhaseState
from relativistic.profiles import RSProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Observable:
    """A named real function on phase space."""
    name: str
    fn: Callable[[PhaseState], float]

    def __call__(self, state: PhaseState) -> float:
        return float(self.fn(state))


def guard_exponent(beta: float, p, limit: float = GUARD_SETTINGS['exp_limit']):
    exponent = abs(beta) * float(np.sum(np.abs(p)))
    if exponent > limit:
        raise ExpOverflowError(f'β·Σ|p| = {exponent:.3g} exceeds the exponential guard {limit}')


# --- Нерелятивистский случай -----------------------------------------------------

def potential_energy(x, spec: ModelSpec) -> float:
    """Σ_{i<j} V(x_i − x_j)."""
    x = np.asarray(x, dtype=float)
    return sum(potential_value(spec, x[i] - x[j]) for i, j in combinations(range(len(x)), 2))


def hamiltonian_nonrel(state: PhaseState, spec: ModelSpec) -> float:
    """(1/2m)Σp² + (g²/m)Σ_{i<j}V(x_i − x_j)."""
    p = state.ps
    kinetic = float(np.dot(p, p)) / (2 * spec.m)
    return kinetic + spec.g ** 2 / spec.m * potential_energy(state.xs, spec)


def _nonrel_field(state: PhaseState, spec: ModelSpec) -> Tuple[np.ndarray, np.ndarray]:
    x, p = state.xs, state.ps
    n = len(x)
    dp = np.zeros(n)
    coupling = spec.g ** 2 / spec.m
    if coupling != 0:
        for i, j in combinations(range(n), 2):
            force = coupling * potential_derivative(spec, x[i] - x[j])
            dp[i] -= force
            dp[j] += force
    return p / spec.m, dp


# --- Релятивистский случай -------------------------------------------------------

def _profile_products(x: np.ndarray, profile: RSProfile) -> np.ndarray:
    """F_i = Π_{j≠i} f(x_i − x_j)."""
    n = len(x)
    F = np.ones(n)
    for i, j in combinations(range(n), 2):
        f = profile.value(x[i] - x[j])
        F[i] *= f
        F[j] *= f
    return F


def hamiltonian_rel(state: PhaseState, spec: ModelSpec) -> float:
    """H = (1/mβ²) Σ_i cosh(βp_i) Π_{j≠i} f(x_i − x_j)."""
    beta = spec.require_beta()
    guard_exponent(beta, state.p)
    F = _profile_products(state.xs, RSProfile.from_spec(spec))
    return float(np.sum(np.cosh(beta * state.ps) * F)) / (spec.m * beta ** 2)


def momentum_rel(state: PhaseState, spec: ModelSpec) -> float:
    """P = (1/β) Σ_i sinh(βp_i) Π_{j≠i} f(x_i − x_j)."""
    beta = spec.require_beta()
    guard_exponent(beta, state.p)
    F = _profile_products(state.xs, RSProfile.from_spec(spec))
    return float(np.sum(np.sinh(beta * state.ps) * F)) / beta


def boost_generator(state: PhaseState, spec: ModelSpec) -> float:
    """B = −m Σ x_i."""
    return -spec.m * float(np.sum(state.xs))


def _rel_field(state: PhaseState, spec: ModelSpec) -> Tuple[np.ndarray, np.ndarray]:
    beta = spec.require_beta()
    guard_exponent(beta, state.p)
    profile = RSProfile.from_spec(spec)
    x, p = state.xs, state.ps
    n = len(x)
    F = _profile_products(x, profile)
    ch = np.cosh(beta * p) * F
    dx = np.sinh(beta * p) * F / (spec.m * beta)
    # dH/dx_k = (1/mβ²)[ch_k Σ_{j≠k} ℓ(x_k − x_j) − Σ_{i≠k} ch_i ℓ(x_i − x_k)], ℓ = f′/f
    grad = np.zeros(n)
    for i, j in combinations(range(n), 2):
        ell = profile.log_derivative(x[i] - x[j])
        grad[i] += (ch[i] + ch[j]) * ell
        grad[j] -= (ch[i] + ch[j]) * ell
    return dx, -grad / (spec.m * beta ** 2)


def hamilton_vector_field(state: PhaseState, spec: ModelSpec, relativistic: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """(∂H/∂p, −∂H/∂x) from closed-form derivatives of V (or of f when relativistic)."""
    if relativistic:
        return _rel_field(state, spec)
    return _nonrel_field(state, spec)


def energy_observable(spec: ModelSpec, relativistic: bool = False) -> Observable:
    if relativistic:
        return Observable('H_rel', lambda s: hamiltonian_rel(s, spec))
    return Observable('H', lambda s: hamiltonian_nonrel(s, spec))


def coordinate_observable(index: int) -> Observable:
    return Observable(f'x{index + 1}', lambda s: s.x[index])


def momentum_observable(index: int) -> Observable:
    return Observable(f'p{index + 1}', lambda s: s.p[index])


def free_energy(state: PhaseState, spec: ModelSpec) -> float:
    """Σ(cosh(βp_i) − 1)/(mβ²): the free relativistic energy minus rest energy."""
    beta = spec.require_beta()
    return float(np.sum(np.cosh(beta * state.ps) - 1)) / (spec.m * beta ** 2)


def rest_energy(spec: ModelSpec, beta: float = None) -> float:
    """N m c² = N/(mβ²)."""
    beta = spec.require_beta() if beta is None else beta
    return spec.N / (spec.m * beta * beta)
