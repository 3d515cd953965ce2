"""
Poisson brackets by central differences.
"""

import logging
from typing import Optional

import numpy as np

from config.settings import BRACKET_SETTINGS
from dynamics.hamiltonians import Observable
from model.errors import BranchError, ConfigError, PoleError, StencilError
from model.spec import ModelSpec, PhaseState, min_gap

logger = logging.getLogger(__name__)


def _inside(x: np.ndarray, spec: Optional[ModelSpec]) -> bool:
    if spec is not None:
        return min_gap(x, spec) > 0
    return bool(np.all(x[:-1] - x[1:] > 0))


def poisson_bracket(F: Observable, G: Observable, state: PhaseState, h: float = BRACKET_SETTINGS['h'],
                    spec: ModelSpec = None) -> float:
    """
    {F, G} = Σ_i (∂F/∂x_i ∂G/∂p_i − ∂F/∂p_i ∂G/∂x_i) on the 4N-point stencil state ± h·e.

    The position half of the stencil has to stay in the cone (and below the period when `spec`
    is periodic); otherwise StencilError.
    """
    if not BRACKET_SETTINGS['h_min'] <= h <= BRACKET_SETTINGS['h_max']:
        raise ConfigError(f"h must lie in [{BRACKET_SETTINGS['h_min']}, {BRACKET_SETTINGS['h_max']}], got {h}")
    x, p = state.xs, state.ps
    n = len(x)

    def partials(direction: int):
        dF, dG = np.zeros(n), np.zeros(n)
        for i in range(n):
            shifted = []
            for sign in (1.0, -1.0):
                xs, ps = x.copy(), p.copy()
                target = xs if direction == 0 else ps
                target[i] += sign * h
                if direction == 0 and not _inside(xs, spec):
                    raise StencilError(f'bracket stencil with h={h} leaves the configuration space along x{i + 1}')
                shifted.append(PhaseState.from_arrays(xs, ps))
            try:
                dF[i] = (F(shifted[0]) - F(shifted[1])) / (2 * h)
                dG[i] = (G(shifted[0]) - G(shifted[1])) / (2 * h)
            except (PoleError, BranchError) as e:
                raise StencilError(f'observable is singular on the bracket stencil: {e}') from e
        return dF, dG

    dFx, dGx = partials(0)
    dFp, dGp = partials(1)
    value = float(np.dot(dFx, dGp) - np.dot(dFp, dGx))
    logger.debug('{%s, %s} = %.6e', F.name, G.name, value)
    return value
