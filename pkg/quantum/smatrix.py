"""
Scattering phases: the momentum-independent rational phase at integer coupling and the
factorized hyperbolic S-matrix built from Gamma-function ratios.
"""

import cmath
import logging
from itertools import combinations
from typing import Sequence

from model.errors import ConfigError, VerificationError
from model.special import log_gamma
from polyring.gaussian import I
from polyring.multipoly import vandermonde

logger = logging.getLogger(__name__)


def rational_smatrix_phase(N: int, m: int) -> int:
    """
    (−1)^{(1−m)N(N−1)/2}, confirmed against (−1)^{|σ₀|}A_m(iσ₀p)/A_m(ip) computed exactly,
    σ₀ the order-reversing permutation.
    """
    if not isinstance(m, int) or m < 1 or N < 1:
        raise ConfigError(f'the rational phase needs N ≥ 1 and a positive integer m, got N={N}, m={m}')
    pairs = N * (N - 1) // 2
    closed_form = -1 if ((1 - m) * pairs) % 2 else 1

    a_m = vandermonde(N) ** m
    a_m = a_m.scale(I ** (m * pairs))
    reversed_order = a_m.act_permutation(list(range(N - 1, -1, -1)))
    ratio = reversed_order.exact_divide(a_m)
    if not ratio.is_constant():
        raise VerificationError('A_m(iσ₀p)/A_m(ip) depends on the momenta')
    computed = ratio.constant_term() * (-1 if pairs % 2 else 1)
    if computed != closed_form:
        raise VerificationError(f'phase from A_m ratio is {computed}, closed form gives {closed_form}')
    logger.debug('rational S-phase N=%d m=%d: %d', N, m, closed_form)
    return closed_form


def _u(v: float, g: float) -> complex:
    """u(v) = Γ(1 + iv)Γ(g − iv)/(Γ(1 − iv)Γ(g + iv)), through log Γ."""
    return cmath.exp(log_gamma(1 + 1j * v) + log_gamma(g - 1j * v)
                     - log_gamma(1 - 1j * v) - log_gamma(g + 1j * v))


def hyperbolic_two_body_smatrix(v: float, g: float) -> complex:
    """−u(v); unimodular for real v and g > 0."""
    if not g > 0:
        raise ConfigError(f'the hyperbolic S-matrix needs g > 0, got {g}')
    return -_u(float(v), float(g))


def hyperbolic_smatrix(p: Sequence[float], g: float) -> complex:
    """Π_{i<j} −u(p_j − p_i) for the ordered asymptotic momenta."""
    result = 1 + 0j
    for i, j in combinations(range(len(p)), 2):
        result *= hyperbolic_two_body_smatrix(p[j] - p[i], g)
    return result
