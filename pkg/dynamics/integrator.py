"""
Adaptive Dormand-Prince 5(4) integration of Hamilton's equations inside the configuration cone.
"""

import logging
from typing import Tuple

import numpy as np

from config.settings import INTEGRATOR_SETTINGS
from dynamics.hamiltonians import hamilton_vector_field
from model.errors import BranchError, ConfigError, GuardExceededError, PoleError, StepCollapseError
from model.spec import ModelSpec, PhaseState, Trajectory, min_gap, validate_state

logger = logging.getLogger(__name__)

# Dormand-Prince tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4


class _LeftCone(Exception):
    """A stage or the step end fell outside the configuration space."""


class DormandPrinceIntegrator:
    """
    Adaptive embedded Runge-Kutta integrator for one model.

    Responsibilities:
    - evaluate the Hamiltonian vector field on the packed vector y = (x, p)
    - reject any step whose stages or endpoint leave the configuration space and retry with half the step
    - control the local error per step and record accepted steps
    """

    def __init__(self, spec: ModelSpec, relativistic: bool = False, tol: float = INTEGRATOR_SETTINGS['tol'],
                 settings: dict = None):
        self.settings = dict(INTEGRATOR_SETTINGS, **(settings or {}))
        if not self.settings['tol_min'] <= tol <= self.settings['tol_max']:
            raise ConfigError(f"tol must lie in [{self.settings['tol_min']}, {self.settings['tol_max']}], got {tol}")
        self.spec = spec
        self.relativistic = relativistic
        self.tol = tol
        self.n = spec.N
        self.rejected_steps = 0

    def _field(self, y: np.ndarray) -> np.ndarray:
        x, p = y[:self.n], y[self.n:]
        if min_gap(x, self.spec) <= 0:
            raise _LeftCone()
        try:
            dx, dp = hamilton_vector_field(PhaseState.from_arrays(x, p), self.spec, self.relativistic)
        except (PoleError, BranchError) as e:
            raise _LeftCone() from e
        return np.concatenate([dx, dp])

    def _attempt(self, y: np.ndarray, k1: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        k = [k1]
        for stage in range(1, 7):
            increment = sum(a * kj for a, kj in zip(_A[stage], k))
            k.append(self._field(y + h * increment))
        y_new = y + h * sum(b * kj for b, kj in zip(_B5, k))
        err = h * sum(e * kj for e, kj in zip(_E, k))
        return y_new, err, k[6]

    def run(self, state0: PhaseState, T: float) -> Trajectory:
        validate_state(state0, self.spec)
        if T < 0:
            raise ConfigError(f'integration time must be nonnegative, got {T}')
        s = self.settings
        y = np.concatenate([state0.xs, state0.ps])
        t = 0.0
        h = min(s['initial_step'], T) if T > 0 else 0.0
        times, ys, errors, gaps = [0.0], [y.copy()], [0.0], [min_gap(y[:self.n], self.spec)]
        k1 = self._field(y)
        steps = 0

        while t < T:
            if steps >= s['max_steps']:
                raise GuardExceededError(f"more than {s['max_steps']} integration steps")
            h = min(h, T - t)
            if h < s['min_step'] and T - t > s['min_step']:
                raise StepCollapseError(f'step size {h:.3e} underflowed at t={t:.6g} '
                                        f'(min gap {gaps[-1]:.3e})')
            try:
                y_new, err, k_last = self._attempt(y, k1, h)
                if min_gap(y_new[:self.n], self.spec) <= 0:
                    raise _LeftCone()
            except _LeftCone:
                self.rejected_steps += 1
                logger.debug('step %.3e at t=%.6g leaves the configuration space, halving', h, t)
                h *= 0.5
                continue

            scale = self.tol * np.maximum(1.0, np.maximum(np.abs(y), np.abs(y_new)))
            norm = float(np.max(np.abs(err) / scale))
            if norm <= 1.0:
                t = T if T - t - h <= 0 else t + h
                y, k1 = y_new, k_last
                steps += 1
                times.append(t)
                ys.append(y.copy())
                errors.append(float(np.max(np.abs(err))))
                gaps.append(min_gap(y[:self.n], self.spec))
            else:
                self.rejected_steps += 1
            factor = s['safety'] * (norm ** -0.2 if norm > 0 else s['max_factor'])
            h *= min(s['max_factor'], max(s['min_factor'], factor))

        ys = np.array(ys)
        logger.debug('integrated to T=%g in %d steps (%d rejected), min gap %.3e',
                     T, steps, self.rejected_steps, min(gaps))
        return Trajectory(times=np.array(times), positions=ys[:, :self.n], momenta=ys[:, self.n:],
                          error_estimates=np.array(errors), min_gaps=np.array(gaps))


def integrate(state0: PhaseState, spec: ModelSpec, T: float, tol: float = INTEGRATOR_SETTINGS['tol'],
              relativistic: bool = False) -> Trajectory:
    """Trajectory on [0, T] with local error ≤ tol; every stored state lies strictly inside the cone."""
    return DormandPrinceIntegrator(spec, relativistic=relativistic, tol=tol).run(state0, T)
