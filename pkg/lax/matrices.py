"""
Lax matrices of the nonrelativistic systems.

    L_ij = p_i δ_ij + ig(1 − δ_ij)/(x_i − x_j)
    M_ij = (ig/m)(−δ_ij Σ_{k≠i} 1/(x_i − x_k)² + (1 − δ_ij)/(x_i − x_j)²)

For kinds II and III L is the β-derivative of the relativistic 𝓛 at β = 0, either as a central
difference or in the closed form

    II   L_ij = p_i δ_ij + ig(a/2)(1 − δ_ij)/sinh(a(x_i − x_j)/2)
    III  L_ij = p_i δ_ij + ig(a/2)(1 − δ_ij)/sin(a(x_i − x_j)/2)
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple

import numpy as np

from config.settings import GUARD_SETTINGS, LAX_SETTINGS
from dynamics.hamiltonians import hamilton_vector_field
from model.errors import CollisionError, ConfigError, VerificationError
from model.spec import ModelSpec, PhaseState, PotentialKind
from relativistic.rs_lax import rs_lax_matrix

logger = logging.getLogger(__name__)

RATIONAL_CLOSED_FORM = 'rational-closed-form'
RS_BETA_DERIVATIVE = 'rs-beta-derivative'
RS_LIMIT_CLOSED_FORM = 'rs-limit-closed-form'


@dataclass(frozen=True)
class LaxMatrix:
    entries: np.ndarray
    origin: str = RATIONAL_CLOSED_FORM

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    @property
    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        """Spectrum of the Hermitian part, sorted decreasing."""
        hermitian = (self.entries + self.entries.conj().T) / 2
        return np.sort(np.linalg.eigvalsh(hermitian))[::-1]


def _check_collisions(x: np.ndarray, pole_eps: float):
    for i, j in combinations(range(len(x)), 2):
        if abs(x[i] - x[j]) < pole_eps:
            raise CollisionError(f'particles {i + 1} and {j + 1} collide (|x_i - x_j| < {pole_eps})')


def lax_matrix_from(x, p, g: float) -> np.ndarray:
    """The rational L at arbitrary (x, p); also used with dual variables and coupling −g."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    _check_collisions(x, GUARD_SETTINGS['pole_eps'])
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    L = 1j * g / diff
    np.fill_diagonal(L, p)
    return L


def rational_lax_pair(state: PhaseState, g: float, m: float = 1.0) -> Tuple[LaxMatrix, np.ndarray]:
    x = state.xs
    L = lax_matrix_from(x, state.p, g)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    inv_sq = 1.0 / diff ** 2
    np.fill_diagonal(inv_sq, 0.0)
    M = (1j * g / m) * (inv_sq - np.diag(inv_sq.sum(axis=1)))
    return LaxMatrix(L), M


def lax_equation_residual(state: PhaseState, spec: ModelSpec) -> float:
    """‖dL/dt − (ML − LM)‖_F with dL/dt assembled from Hamilton's equations by the chain rule."""
    if spec.kind is not PotentialKind.RATIONAL:
        raise ConfigError('the explicit Lax pair exists for kind I only')
    L, M = rational_lax_pair(state, spec.g, spec.m)
    dx, dp = hamilton_vector_field(state, spec)
    x = state.xs
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    dL = -1j * spec.g * (dx[:, None] - dx[None, :]) / diff ** 2
    np.fill_diagonal(dL, dp)
    residual = dL - (M @ L.entries - L.entries @ M)
    return float(np.linalg.norm(residual, 'fro'))


def power_traces(L: LaxMatrix, upto: int, imag_tol: float = LAX_SETTINGS['imag_tol']) -> List[float]:
    """H_r = tr(L^r)/r for r = 1..upto."""
    if not 1 <= upto <= L.N:
        raise ConfigError(f'power traces run up to N={L.N}, got {upto}')
    traces = []
    power = np.eye(L.N, dtype=complex)
    for r in range(1, upto + 1):
        power = power @ L.entries
        value = np.trace(power) / r
        if abs(value.imag) > imag_tol * max(1.0, abs(value)):
            raise VerificationError(f'H_{r} has imaginary part {value.imag:.3e}; L is not Hermitian')
        traces.append(float(value.real))
    return traces


def characteristic_coefficients(L: LaxMatrix) -> List[float]:
    """S_1..S_N with det(λ − L) = Σ_r λ^{N−r}(−1)^r S_r."""
    coefficients = np.poly(L.eigenvalues())
    return [float((-1) ** r * coefficients[r]) for r in range(1, L.N + 1)]


def lax_from_rs_limit(state: PhaseState, spec: ModelSpec, beta_step: float = LAX_SETTINGS['rs_beta_step']) -> LaxMatrix:
    """(𝓛(β) − 𝓛(−β))/(2β) at the small β = beta_step."""
    if spec.kind is PotentialKind.ELLIPTIC:
        raise ConfigError('the relativistic limit defines L for kinds I-III only')
    forward = rs_lax_matrix(state.xs, state.ps, spec, beta_step)
    backward = rs_lax_matrix(state.xs, state.ps, spec, -beta_step)
    return LaxMatrix((forward - backward) / (2 * beta_step), origin=RS_BETA_DERIVATIVE)


def lax_limit_closed_form(state: PhaseState, spec: ModelSpec) -> LaxMatrix:
    """The β → 0 coefficient of 𝓛 for kinds II/III, free of finite-difference noise."""
    if spec.kind not in (PotentialKind.HYPERBOLIC, PotentialKind.TRIGONOMETRIC):
        raise ConfigError(f'closed-form limit covers kinds II and III, got {spec.kind.value}')
    x = state.xs
    pole_eps = GUARD_SETTINGS['pole_eps']
    _check_collisions(x, pole_eps)
    half = spec.a / 2
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if spec.kind is PotentialKind.HYPERBOLIC:
        denominator = np.sinh(half * diff)
    else:
        denominator = np.sin(half * diff)
        # a gap equal to a whole period is a collision on the circle
        if np.min(np.abs(denominator)) < half * pole_eps:
            raise CollisionError(f'two particles coincide modulo the period {spec.period:.6g}')
    L = 1j * spec.g * half / denominator
    np.fill_diagonal(L, state.ps)
    return LaxMatrix(L, origin=RS_LIMIT_CLOSED_FORM)


def lax_matrix(state: PhaseState, spec: ModelSpec) -> LaxMatrix:
    """Closed forms for kinds I-III; brackets and drifts of the power traces are built on these."""
    if spec.kind is PotentialKind.RATIONAL:
        return rational_lax_pair(state, spec.g, spec.m)[0]
    if spec.kind is PotentialKind.ELLIPTIC:
        raise ConfigError('the relativistic limit defines L for kinds I-III only')
    return lax_limit_closed_form(state, spec)
