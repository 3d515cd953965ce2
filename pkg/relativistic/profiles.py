"""
Interaction profiles f of the relativistic systems.

    I    f² = 1 + (gβ)²/x²
    II   f² = 1 + sin²(agβ/2)/sinh²(ax/2)
    III  f² = 1 + sinh²(agβ/2)/sin²(ax/2)
    IV   f² = a_c + b_c·℘(x)           (a_c, b_c > 0 supplied with the model)

f is always the positive root.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from config.settings import GUARD_SETTINGS
from model.errors import BranchError, ConfigError, PoleError
from model.potentials import potential_value
from model.spec import ModelSpec, PotentialKind
from model.special import weierstrass_p, weierstrass_p_prime

logger = logging.getLogger(__name__)

POSITIVE_ROOT = 'positive-root'


@dataclass(frozen=True)
class RSProfile:
    """Couplings of one relativistic model, evaluated as f, f² and f′/f."""
    spec: ModelSpec
    beta: float
    branch: str = POSITIVE_ROOT

    @classmethod
    def from_spec(cls, spec: ModelSpec, beta: Optional[float] = None) -> 'RSProfile':
        beta = spec.require_beta() if beta is None else beta
        if spec.kind is PotentialKind.ELLIPTIC:
            if spec.a_c is None or spec.b_c is None or not (spec.a_c > 0 and spec.b_c > 0):
                raise ConfigError('kind IV relativistic profile needs a_c > 0 and b_c > 0')
        return cls(spec=spec, beta=beta)

    @property
    def kind(self) -> PotentialKind:
        return self.spec.kind

    @property
    def coupling(self) -> float:
        """The combination gβ every profile depends on."""
        return self.spec.g * self.beta

    def _check_pole(self, x: float, pole_eps: float):
        kind = self.kind
        if kind is PotentialKind.ELLIPTIC:
            return
        if kind is PotentialKind.TRIGONOMETRIC:
            period = self.spec.period
            distance = abs(x - period * round(x / period))
        else:
            distance = abs(x)
        if distance < pole_eps:
            raise PoleError(f'profile f of kind {kind.value} is singular at x={x}')

    def excess(self, x: float, *, pole_eps: float = GUARD_SETTINGS['pole_eps']) -> Tuple[float, float]:
        """Returns (R, R′) with f² = 1 + R for kinds I-III and f² = a_c + R for kind IV."""
        x = float(x)
        self._check_pole(x, pole_eps)
        spec = self.spec
        gb = self.coupling
        if self.kind is PotentialKind.RATIONAL:
            return gb ** 2 / x ** 2, -2 * gb ** 2 / x ** 3
        if self.kind is PotentialKind.HYPERBOLIC:
            a = spec.a
            amp = math.sin(a * gb / 2) ** 2
            s = math.sinh(a * x / 2)
            return amp / s ** 2, -a * amp * math.cosh(a * x / 2) / s ** 3
        if self.kind is PotentialKind.TRIGONOMETRIC:
            a = spec.a
            amp = math.sinh(a * gb / 2) ** 2
            s = math.sin(a * x / 2)
            return amp / s ** 2, -a * amp * math.cos(a * x / 2) / s ** 3
        wp = weierstrass_p(x, spec.omega1, spec.omega2, pole_eps=pole_eps).real
        dwp = weierstrass_p_prime(x, spec.omega1, spec.omega2, pole_eps=pole_eps).real
        return spec.b_c * wp, spec.b_c * dwp

    def squared(self, x: float) -> float:
        base = self.spec.a_c if self.kind is PotentialKind.ELLIPTIC else 1.0
        return base + self.excess(x)[0]

    def value(self, x: float) -> float:
        radicand = self.squared(x)
        if not radicand > 0:
            raise BranchError(f'f² = {radicand} is not positive at x={x}; check a_c, b_c')
        return math.sqrt(radicand)

    def log_derivative(self, x: float) -> float:
        """f′(x)/f(x) = R′/(2f²)."""
        radicand = self.squared(x)
        if not radicand > 0:
            raise BranchError(f'f² = {radicand} is not positive at x={x}; check a_c, b_c')
        return self.excess(x)[1] / (2 * radicand)


def rs_profile_f(profile: RSProfile, x: float) -> float:
    return profile.value(x)


def fit_profile_constants(profile: RSProfile, probes: Iterable[float]) -> Tuple[float, float, float]:
    """
    Fits f² = a_c + b_c·V(x) at the first two probes, V being the kind's own potential
    (the degenerate ℘ up to a constant), and reports the worst misfit at the remaining probes.
    """
    if profile.kind is PotentialKind.ELLIPTIC:
        raise ConfigError('kind IV constants are inputs, not fitted')
    probes = [float(x) for x in probes]
    if len(probes) < 3:
        raise ValueError('need two fitting probes and at least one check probe')
    rows = np.array([[1.0, potential_value(profile.spec, x)] for x in probes[:2]])
    rhs = np.array([profile.squared(x) for x in probes[:2]])
    a_c, b_c = np.linalg.solve(rows, rhs)
    residual = max(abs(profile.squared(x) - (a_c + b_c * potential_value(profile.spec, x))) for x in probes[2:])
    logger.debug('fitted f² = %.6g + %.6g V (misfit %.2e)', a_c, b_c, residual)
    return float(a_c), float(b_c), float(residual)
