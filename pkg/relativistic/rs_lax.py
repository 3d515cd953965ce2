"""
Relativistic Lax matrix 𝓛_ij = d_i C_ij d_j and its principal-minor identity.

    d_i  = exp((a x_i + βp_i)/2) Π_{j≠i} f(x_i − x_j)^{1/2}
    C_ij = exp(−a(x_i + x_j)/2) sinh(iβag/2) / sinh(a(x_i − x_j + iβg)/2)

Kind III is the same expression with a → ia; kind I is its a → 0 limit,
C_ij = iβg/(x_i − x_j + iβg) (with the exponentials dropped).
"""

import cmath
import logging
from itertools import combinations, permutations
from typing import List, Sequence

import numpy as np

from config.settings import GUARD_SETTINGS, LAX_SETTINGS
from dynamics.hamiltonians import guard_exponent
from model.errors import BranchError, ConfigError, GuardExceededError, VerificationError
from model.spec import ModelSpec, PhaseState, PotentialKind
from relativistic.profiles import RSProfile

logger = logging.getLogger(__name__)


def _radicand(x: float, g: float, beta: float, a: complex) -> complex:
    """1 + sin²(agβ/2)/sinh²(ax/2) at a possibly imaginary a."""
    return 1 + cmath.sin(a * g * beta / 2) ** 2 / cmath.sinh(a * x / 2) ** 2


def _real_part(value: complex, what: str, imag_tol: float) -> float:
    if abs(value.imag) > imag_tol * max(1.0, abs(value)):
        raise VerificationError(f'{what} has imaginary residue {value.imag:.3e}')
    return value.real


def _d_factors(x: np.ndarray, p: np.ndarray, spec: ModelSpec, beta: float, a: complex) -> np.ndarray:
    n = len(x)
    log_f = np.zeros(n)
    for i, j in combinations(range(n), 2):
        if spec.kind is PotentialKind.RATIONAL:
            f2 = RSProfile(spec, beta).squared(x[i] - x[j])
        else:
            f2 = _real_part(_radicand(x[i] - x[j], spec.g, beta, a), 'f² after a → ia', LAX_SETTINGS['imag_tol'])
        if not f2 > 0:
            raise BranchError(f'f² = {f2} under the square root in d_{i + 1} is not positive')
        half_log = 0.25 * np.log(f2)
        log_f[i] += half_log
        log_f[j] += half_log
    return np.exp(beta * p / 2 + log_f)


def rs_lax_matrix(x: Sequence[float], p: Sequence[float], spec: ModelSpec, beta: float) -> np.ndarray:
    """𝓛 at an explicit β (negative β allowed, for the β-derivative)."""
    kind = spec.kind
    if kind is PotentialKind.ELLIPTIC:
        raise ConfigError('the kind IV Lax matrix needs a spectral parameter and is not provided')
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    guard_exponent(beta, p)
    n = len(x)
    g = spec.g
    a = None
    if kind is PotentialKind.HYPERBOLIC:
        a = complex(spec.a)
    elif kind is PotentialKind.TRIGONOMETRIC:
        a = 1j * spec.a
    d = _d_factors(x, p, spec, beta, a)

    # the exp(±a x/2) factors of d and C cancel entrywise and are left out
    C = np.eye(n, dtype=complex)
    ibg = 1j * beta * g
    for i, j in permutations(range(n), 2):
        if kind is PotentialKind.RATIONAL:
            C[i, j] = ibg / (x[i] - x[j] + ibg)
        else:
            C[i, j] = cmath.sinh(a * ibg / 2) / cmath.sinh(a * (x[i] - x[j] + ibg) / 2)
    return d[:, None] * C * d[None, :]


def rs_lax(state: PhaseState, spec: ModelSpec) -> np.ndarray:
    return rs_lax_matrix(state.xs, state.ps, spec, spec.require_beta())


def principal_minor_sums(matrix: np.ndarray, max_n: int = GUARD_SETTINGS['max_subset_n']) -> List[complex]:
    """[Σ_{|I|=r} det M_{I,I} for r = 1..N] by direct subset enumeration."""
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    if n > max_n:
        raise GuardExceededError(f'subset enumeration limited to N <= {max_n}, got {n}')
    sums = []
    for r in range(1, n + 1):
        total = 0j
        for subset in combinations(range(n), r):
            idx = np.array(subset)
            total += np.linalg.det(matrix[np.ix_(idx, idx)])
        sums.append(complex(total))
    return sums


def cauchy_identity_residual(z: Sequence[complex], w: Sequence[complex]) -> float:
    """
    Relative gap between det(1/(z_i − w_j)) and
    Π_i 1/(z_i − w_i) Π_{i<j} (z_i − z_j)(w_i − w_j)/((z_i − w_j)(w_i − z_j)).
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = len(z)
    lhs = np.linalg.det(1.0 / (z[:, None] - w[None, :]))
    rhs = np.prod(1.0 / (z - w))
    for i, j in combinations(range(n), 2):
        rhs *= (z[i] - z[j]) * (w[i] - w[j]) / ((z[i] - w[j]) * (w[i] - z[j]))
    return float(abs(lhs - rhs) / abs(rhs))
