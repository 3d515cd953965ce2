"""
Exact rational flow from the linearly evolving matrix Q(t) = X(0) + (t/m)L(0), and scattering data.
"""

import logging
from typing import Tuple

import numpy as np

from config.settings import LAX_SETTINGS
from lax.matrices import lax_matrix, lax_matrix_from
from model.errors import ConfigError, DegenerateSpectrumError
from model.spec import ModelSpec, PhaseState, PotentialKind

logger = logging.getLogger(__name__)


def projection_positions(state0: PhaseState, g: float, m: float, t: float) -> np.ndarray:
    """Positions at time t as the eigenvalues of Q(t), sorted decreasing."""
    Q = np.diag(state0.xs).astype(complex) + (t / m) * lax_matrix_from(state0.xs, state0.p, g)
    return np.sort(np.linalg.eigvalsh(Q))[::-1]


def projection_velocities(state0: PhaseState, g: float, m: float, t: float, dt: float = 1.0) -> np.ndarray:
    """Central-difference velocities of the projected flow."""
    ahead = projection_positions(state0, g, m, t + dt)
    behind = projection_positions(state0, g, m, t - dt)
    return (ahead - behind) / (2 * dt)


def scattering_data(state0: PhaseState, spec: ModelSpec,
                    spectral_gap: float = LAX_SETTINGS['spectral_gap']) -> Tuple[np.ndarray, np.ndarray]:
    """
    (p_out, p_in): the spectrum of L(0) sorted decreasing and increasing.

    With x_1 > ... > x_N, particle i leaves with momentum p_out[i] and arrived with p_in[i].
    """
    if spec.kind not in (PotentialKind.RATIONAL, PotentialKind.HYPERBOLIC):
        raise ConfigError('scattering data needs the unbounded repulsive kinds I or II')
    spectrum = lax_matrix(state0, spec).eigenvalues()
    gaps = -np.diff(spectrum)
    if len(gaps) and float(np.min(gaps)) < spectral_gap:
        raise DegenerateSpectrumError(f'asymptotic momenta are degenerate (gap {np.min(gaps):.3e})')
    return spectrum.copy(), spectrum[::-1].copy()
