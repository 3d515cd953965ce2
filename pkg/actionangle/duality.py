"""
Action-angle map of the rational system and its self-duality.

From (1/ig)[A, L] = e⊗e − 1 with A = diag(x): diagonalize L by a unitary U normalized so that
ẽ = Ue and ěᵗ = eᵗU* have unit entries; then x̃_i = (UAU*)_ii and p̃ = spec(L), decreasing.
"""

import logging
from dataclasses import dataclass

import numpy as np

from config.settings import LAX_SETTINGS
from lax.matrices import lax_matrix_from
from model.errors import ConfigError, DegenerateSpectrumError, NormalizationError, VerificationError
from model.spec import PhaseState

logger = logging.getLogger(__name__)

# tolerance on the normalizations and on UL U* being diagonal
_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class ActionAngleData:
    x_tilde: np.ndarray
    p_tilde: np.ndarray
    U: np.ndarray
    A_tilde: np.ndarray

    @property
    def e_tilde(self) -> np.ndarray:
        return self.U @ np.ones(len(self.p_tilde))

    @property
    def e_check(self) -> np.ndarray:
        return np.ones(len(self.p_tilde)) @ self.U.conj().T

    @property
    def dual_state(self) -> PhaseState:
        """(p̃, x̃) read as positions and momenta."""
        return PhaseState.from_arrays(self.p_tilde, self.x_tilde)


def commutation_residual(state: PhaseState, g: float) -> float:
    """‖(1/ig)[A, L] − (e⊗e − 1)‖ (max entry)."""
    A = np.diag(state.xs).astype(complex)
    L = lax_matrix_from(state.xs, state.p, g)
    n = state.N
    target = np.ones((n, n)) - np.eye(n)
    return float(np.max(np.abs((A @ L - L @ A) / (1j * g) - target)))


def action_angle_map(state: PhaseState, g: float,
                     spectral_gap: float = LAX_SETTINGS['spectral_gap']) -> ActionAngleData:
    if g == 0:
        raise ConfigError('the action-angle map needs a nonzero coupling')
    L = lax_matrix_from(state.xs, state.p, g)
    eigenvalues, vectors = np.linalg.eigh(L)
    order = np.argsort(eigenvalues)[::-1]
    p_tilde = eigenvalues[order]
    vectors = vectors[:, order]
    if state.N > 1 and float(np.min(-np.diff(p_tilde))) < spectral_gap:
        raise DegenerateSpectrumError(f'L has a degenerate spectrum (gap {np.min(-np.diff(p_tilde)):.3e})')

    # row j of U is v_j^*, rescaled so that (Ue)_j = 1; |Σ_i v_ij| = 1 keeps U unitary
    sums = vectors.sum(axis=0)
    if np.any(np.abs(sums) < 1e-12):
        raise NormalizationError('an eigenvector of L has zero component sum; ẽ_i = 1 is unreachable')
    U = vectors.conj().T / sums.conj()[:, None]

    A_tilde = U @ np.diag(state.xs) @ U.conj().T
    data = ActionAngleData(x_tilde=np.real(np.diag(A_tilde)).copy(), p_tilde=p_tilde, U=U, A_tilde=A_tilde)

    diagonal_defect = float(np.max(np.abs(U @ L @ U.conj().T - np.diag(p_tilde))))
    e_defect = max(float(np.max(np.abs(data.e_tilde - 1))), float(np.max(np.abs(data.e_check - 1))))
    if diagonal_defect > _CHECK_TOL or e_defect > _CHECK_TOL:
        raise VerificationError(f'normalized diagonalizer is off: ULU* defect {diagonal_defect:.3e}, '
                                f'e-normalization defect {e_defect:.3e}')
    return data


def self_duality_residual(state: PhaseState, g: float) -> float:
    """‖Ã − L(−g; p̃, x̃)‖_F."""
    data = action_angle_map(state, g)
    dual = lax_matrix_from(data.p_tilde, data.x_tilde, -g)
    return float(np.linalg.norm(data.A_tilde - dual, 'fro'))


def dual_involution_residual(state: PhaseState, g: float) -> float:
    """Running the map on the dual state with coupling −g must return the positions as its spectrum."""
    data = action_angle_map(state, g)
    again = action_angle_map(data.dual_state, -g)
    return float(np.max(np.abs(again.p_tilde - np.sort(state.xs)[::-1])))
