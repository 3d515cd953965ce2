"""
The four pair potentials V(x) and their closed-form derivatives.
"""

import logging
import math
from typing import Callable, Iterable, Tuple

from config.settings import GUARD_SETTINGS
from model.errors import PoleError
from model.spec import ModelSpec, PotentialKind
from model.special import weierstrass_p, weierstrass_p_prime

logger = logging.getLogger(__name__)


def _guard(spec: ModelSpec, x: float, pole_eps: float):
    if spec.kind is PotentialKind.TRIGONOMETRIC:
        period = spec.period
        distance = abs(x - period * round(x / period))
    elif spec.kind is PotentialKind.ELLIPTIC:
        return  # the lattice guard lives in weierstrass_p
    else:
        distance = abs(x)
    if distance < pole_eps:
        raise PoleError(f'potential of kind {spec.kind.value} is singular at x={x}')


def potential_value(spec: ModelSpec, x: float, *, pole_eps: float = GUARD_SETTINGS['pole_eps']) -> float:
    """
    V(x) for the selected family:
        I    1/x²
        II   a²/(4 sinh²(ax/2))
        III  a²/(4 sin²(ax/2))
        IV   ℘(x; ω₁, ω₂), real for real x
    """
    x = float(x)
    _guard(spec, x, pole_eps)
    kind = spec.kind
    if kind is PotentialKind.RATIONAL:
        return 1.0 / (x * x)
    if kind is PotentialKind.HYPERBOLIC:
        s = math.sinh(spec.a * x / 2)
        return spec.a ** 2 / (4 * s * s)
    if kind is PotentialKind.TRIGONOMETRIC:
        s = math.sin(spec.a * x / 2)
        return spec.a ** 2 / (4 * s * s)
    return weierstrass_p(x, spec.omega1, spec.omega2, pole_eps=pole_eps).real


def potential_derivative(spec: ModelSpec, x: float, *, pole_eps: float = GUARD_SETTINGS['pole_eps']) -> float:
    """V′(x), used by the Hamiltonian vector fields."""
    x = float(x)
    _guard(spec, x, pole_eps)
    kind = spec.kind
    if kind is PotentialKind.RATIONAL:
        return -2.0 / x ** 3
    if kind is PotentialKind.HYPERBOLIC:
        a = spec.a
        s = math.sinh(a * x / 2)
        return -(a ** 3 / 4) * math.cosh(a * x / 2) / s ** 3
    if kind is PotentialKind.TRIGONOMETRIC:
        a = spec.a
        s = math.sin(a * x / 2)
        return -(a ** 3 / 4) * math.cos(a * x / 2) / s ** 3
    return weierstrass_p_prime(x, spec.omega1, spec.omega2, pole_eps=pole_eps).real


def measure_degeneration_constant(f: Callable[[float], float], g: Callable[[float], float],
                                  probes: Iterable[float]) -> Tuple[float, float]:
    """
    Measures f − g at the first probe and reports how far the difference strays from it at the others.

    Returns (constant, spread); a degeneration "up to an additive constant" holds when spread is small.
    """
    probes = list(probes)
    if len(probes) < 2:
        raise ValueError('need at least two probe points to test constancy')
    differences = [f(x) - g(x) for x in probes]
    constant = differences[0]
    spread = max(abs(d - constant) for d in differences[1:])
    logger.debug('degeneration constant %.17g, spread %.3e over %d probes', constant, spread, len(probes))
    return constant, spread
