"""
Commuting integrals S_{±r} of the relativistic systems, the Poincaré algebra and the β → 0 limit.
"""

import logging
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from config.settings import BRACKET_SETTINGS, GUARD_SETTINGS
from dynamics.brackets import poisson_bracket
from dynamics.hamiltonians import (Observable, boost_generator, guard_exponent, hamiltonian_nonrel,
                                   hamiltonian_rel, momentum_rel, rest_energy)
from model.errors import ConfigError, GuardExceededError
from model.spec import ModelSpec, PhaseState, PotentialKind
from relativistic.profiles import RSProfile

logger = logging.getLogger(__name__)


def rs_integrals(state: PhaseState, spec: ModelSpec, beta: float = None) -> Dict[int, float]:
    """
    S_{±r} = Σ_{|I|=r} exp(±βΣ_{i∈I} p_i) Π_{i∈I, j∉I} f(x_i − x_j), keyed by the signed r.

    Each S_{−r} is summed directly; the identity S_{−r} = S_{N−r}/S_N is left to the callers to check.
    """
    beta = spec.require_beta() if beta is None else beta
    guard_exponent(beta, state.p)
    n = state.N
    if n > GUARD_SETTINGS['max_subset_n']:
        raise GuardExceededError(f"subset enumeration limited to N <= {GUARD_SETTINGS['max_subset_n']}")
    profile = RSProfile.from_spec(spec, beta)
    x, p = state.xs, state.ps
    f = np.ones((n, n))
    for i, j in combinations(range(n), 2):
        f[i, j] = f[j, i] = profile.value(x[i] - x[j])

    values = {}
    for r in range(1, n + 1):
        plus = minus = 0.0
        for subset in combinations(range(n), r):
            outside = [j for j in range(n) if j not in subset]
            weight = float(np.prod([f[i, j] for i in subset for j in outside]))
            momentum = float(np.sum(p[list(subset)]))
            plus += np.exp(beta * momentum) * weight
            minus += np.exp(-beta * momentum) * weight
        values[r] = plus
        values[-r] = minus
    return values


def integral_observables(spec: ModelSpec) -> List[Observable]:
    """S_{−N}..S_{−1}, S_1..S_N as observables, for conservation and involution audits."""
    signed = [r for r in range(-spec.N, spec.N + 1) if r != 0]
    return [Observable(f'S_{r}', lambda s, r=r: rs_integrals(s, spec)[r]) for r in signed]


def energy_from_integrals(values: Dict[int, float], spec: ModelSpec) -> float:
    """H = (S_1 + S_{−1})/(2mβ²)."""
    beta = spec.require_beta()
    return (values[1] + values[-1]) / (2 * spec.m * beta ** 2)


def rs_momentum_from_integrals(values: Dict[int, float], spec: ModelSpec) -> float:
    """P = (S_1 − S_{−1})/(2β)."""
    beta = spec.require_beta()
    return (values[1] - values[-1]) / (2 * beta)


def poincare_residuals(state: PhaseState, spec: ModelSpec,
                       h: float = BRACKET_SETTINGS['h']) -> Tuple[float, float, float]:
    """
    (|{H,P}|, |{H,B} − P|, |{P,B} − m²β²H|), each divided by max(1, |reference|)
    where the reference is H, P and m²β²H respectively.
    """
    beta = spec.require_beta()
    H = Observable('H_rel', lambda s: hamiltonian_rel(s, spec))
    P = Observable('P', lambda s: momentum_rel(s, spec))
    B = Observable('B', lambda s: boost_generator(s, spec))
    h_value, p_value = H(state), P(state)
    hp = poisson_bracket(H, P, state, h, spec=spec)
    hb = poisson_bracket(H, B, state, h, spec=spec)
    pb = poisson_bracket(P, B, state, h, spec=spec)
    target = spec.m ** 2 * beta ** 2 * h_value
    residuals = (abs(hp) / max(1.0, abs(h_value)),
                 abs(hb - p_value) / max(1.0, abs(p_value)),
                 abs(pb - target) / max(1.0, abs(target)))
    logger.debug('poincare residuals %s', residuals)
    return residuals


def nonrel_limit_residual(state: PhaseState, spec: ModelSpec, beta_seq: Sequence[float]) -> List[float]:
    """|H_rel(β) − N/(mβ²) − H_nonrel| for every β in beta_seq."""
    if spec.kind is PotentialKind.ELLIPTIC:
        raise ConfigError('the nonrelativistic limit check covers kinds I-III')
    target = hamiltonian_nonrel(state, spec)
    residuals = []
    for beta in beta_seq:
        scaled = spec.with_changes(beta=beta)
        residuals.append(abs(hamiltonian_rel(state, scaled) - rest_energy(scaled) - target))
    return residuals


def limit_slope(betas: Sequence[float], residuals: Sequence[float]) -> float:
    """Slope of log(residual) against log(β), fitted by least squares."""
    slope, _ = np.polyfit(np.log(np.asarray(betas, dtype=float)), np.log(np.asarray(residuals, dtype=float)), 1)
    return float(slope)
