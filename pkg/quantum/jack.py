"""
Jack polynomials as eigenfunctions of the gauged trigonometric (type III) operator.

With z_i = e^{iax_i}, D_i = z_i∂/∂z_i and Ψ = W^{1/2}P, conjugating
Ĥ = −½Σ∂_i² + k(k−1)Σ_{i<j} a²/(4 sin²(a x_ij/2)) by W^{1/2} = Π|sin(a x_ij/2)|^k and removing E₀ gives

    T = (a²/2)[Σ D_i² + k Σ_{i<j} (z_i + z_j)/(z_i − z_j)·(D_i − D_j)]

which maps symmetric Laurent polynomials to themselves and is triangular on m_λ with diagonal
(a²/2)[Σλ_i² + kΣλ_i(N + 1 − 2i)].
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Union

import numpy as np

from config.settings import ORACLE_SETTINGS
from dynamics.hamiltonians import potential_energy
from model.errors import ConfigError, GuardExceededError, PivotError, PoleError
from model.spec import ModelSpec, PotentialKind, min_gap
from polyring.gaussian import ZERO, GaussianRational
from polyring.multipoly import MultiPoly
from polyring.partitions import Partition, dominated_by
from polyring.symmetric import SymmetricPoly, as_symmetric, from_monomial_expansion, monomial_symmetric

logger = logging.getLogger(__name__)

Coupling = Union[int, Fraction, str, GaussianRational]


def trig_cms_apply(k: Coupling, q: Union[MultiPoly, SymmetricPoly], a: Coupling = 1) -> SymmetricPoly:
    poly = as_symmetric(q).poly
    k = GaussianRational.of(k)
    result = type(poly).zero(poly.nvars)
    for i in range(poly.nvars):
        result = result + poly.euler(i).euler(i)
    for i, j in combinations(range(poly.nvars), 2):
        # (D_i − D_j)q is antisymmetric in (i, j): its quotient by z_i − z_j is half the divided difference
        antisymmetric = poly.euler(i) - poly.euler(j)
        quotient = antisymmetric.divided_difference(i, j).scale(Fraction(1, 2))
        zi_plus_zj = type(poly).variable(poly.nvars, i) + type(poly).variable(poly.nvars, j)
        result = result + (zi_plus_zj * quotient).scale(k)
    a = GaussianRational.of(a)
    return SymmetricPoly(result.scale(a * a / 2))


def trig_diagonal(lam: Partition, k: Coupling, a: Coupling = 1) -> GaussianRational:
    """(a²/2)[Σλ_i² + kΣλ_i(N + 1 − 2i)], i counted from 1."""
    k, a = GaussianRational.of(k), GaussianRational.of(a)
    N = lam.N
    squares = sum(p * p for p in lam.parts)
    linear = sum(p * (N + 1 - 2 * (i + 1)) for i, p in enumerate(lam.parts))
    return (k * linear + squares) * (a * a / 2)


def ground_energy(N: int, k: float, a: float = 1.0) -> float:
    """E₀ = a²k²N(N² − 1)/24."""
    return a * a * k * k * N * (N * N - 1) / 24


def jack_energy(lam: Partition, k: float, a: float = 1.0) -> float:
    """Candidate E_λ = ½Σ(aλ_i + ak(N − 2i + 1)/2)², i counted from 1."""
    N = lam.N
    return 0.5 * sum((a * p + a * k * (N - 2 * (i + 1) + 1) / 2) ** 2 for i, p in enumerate(lam.parts))


@dataclass(frozen=True)
class JackPolynomial:
    partition: Partition
    k: GaussianRational
    coefficients: Dict[Partition, GaussianRational]
    eigenvalue: GaussianRational

    @property
    def poly(self) -> MultiPoly:
        return from_monomial_expansion(self.coefficients, self.partition.N)

    def __str__(self):
        return str(SymmetricPoly(self.poly))


def jack_polynomial(lam: Partition, k: Coupling) -> JackPolynomial:
    """
    Monic, dominance-triangular eigenfunction m_λ + Σ_{μ<λ} c_μ m_μ of trig_cms_apply.

    Dominated partitions are visited in decreasing lexicographic order, a linear extension of
    dominance, so every right-hand side only involves coefficients already known.
    """
    k = GaussianRational.of(k)
    basis: List[Partition] = dominated_by(lam)
    images = {mu: trig_cms_apply(k, monomial_symmetric(mu)).monomial_expansion() for mu in basis}
    eigenvalue = images[lam].get(lam, ZERO)
    coefficients: Dict[Partition, GaussianRational] = {lam: GaussianRational(1)}
    for position, nu in enumerate(basis[1:], start=1):
        rhs = ZERO
        for mu in basis[:position]:
            if mu in coefficients:
                rhs = rhs + coefficients[mu] * images[mu].get(nu, ZERO)
        pivot = eigenvalue - images[nu].get(nu, ZERO)
        if not pivot:
            raise PivotError(f'resonant coupling k={k}: pivot for {nu} vanishes while building P_{lam}')
        value = rhs / pivot
        logger.debug('P_%s: coefficient of m%s = %s', lam, nu, value)
        if value:
            coefficients[nu] = value
    return JackPolynomial(partition=lam, k=k, coefficients=coefficients, eigenvalue=eigenvalue)


# --- Численный оракул ------------------------------------------------------------

def interior_points(spec: ModelSpec, count: int, rng: np.random.Generator,
                    min_distance: float = ORACLE_SETTINGS['min_wall_distance'],
                    max_attempts: int = 100_000) -> List[np.ndarray]:
    """Random sorted points of the periodic cone at least min_distance from every wall."""
    period = spec.period
    points = []
    for _ in range(max_attempts):
        x = np.sort(rng.uniform(0.0, period, spec.N))[::-1]
        if min_gap(x, spec) >= min_distance:
            points.append(x)
            if len(points) == count:
                return points
    raise GuardExceededError(f'could not place {count} points {min_distance} away from the walls')


def _ground_factor(x: np.ndarray, k: float, a: float) -> float:
    return math.prod(abs(math.sin(a * (x[i] - x[j]) / 2)) ** k for i, j in combinations(range(len(x)), 2))


def _wave_function(poly: MultiPoly, k: float, a: float):
    def psi(x: np.ndarray) -> complex:
        return _ground_factor(x, k, a) * poly.evaluate(np.exp(1j * a * x))
    return psi


def _hamiltonian_action(psi, x: np.ndarray, spec: ModelSpec, h: float) -> complex:
    """(−½ΣΨ_ii + g(g−1)ΣV·Ψ)/m, the Laplacian by central differences."""
    centre = psi(x)
    laplacian = 0j
    for i in range(len(x)):
        step = np.zeros(len(x))
        step[i] = h
        laplacian += (psi(x + step) - 2 * centre + psi(x - step)) / (h * h)
    return (-0.5 * laplacian + spec.g * (spec.g - 1) * potential_energy(x, spec) * centre) / spec.m


def _check_oracle_spec(spec: ModelSpec, k: Coupling) -> float:
    if spec.kind is not PotentialKind.TRIGONOMETRIC:
        raise ConfigError('the Jack eigenfunction oracle needs kind III')
    k_value = float(GaussianRational.of(k).re)
    if abs(k_value - spec.g) > 1e-12:
        raise ConfigError(f'the oracle needs g = k, got g={spec.g} and k={k_value}')
    return k_value


def jack_eigen_check(lam: Partition, k: Coupling, spec: ModelSpec, *, points: Sequence[np.ndarray] = None,
                     count: int = 20, seed: int = 0, h: float = ORACLE_SETTINGS['fd_step'],
                     min_distance: float = ORACLE_SETTINGS['min_wall_distance']) -> float:
    """
    max|ĤΨ − E_λΨ| / max|E_λΨ| over interior points, Ψ = W^{1/2}P_λ(e^{iax}).
    """
    k_value = _check_oracle_spec(spec, k)
    lam = Partition.of(lam.parts, spec.N)
    poly = jack_polynomial(lam, k).poly
    psi = _wave_function(poly, k_value, spec.a)
    if points is None:
        points = interior_points(spec, count, np.random.default_rng(seed), min_distance)
    for x in points:
        if min_gap(x, spec) < min_distance:
            raise PoleError(f'evaluation point {x} is closer than {min_distance} to a wall')
    energy = jack_energy(lam, k_value, spec.a) / spec.m
    worst, scale = 0.0, 0.0
    for x in points:
        value = psi(x)
        worst = max(worst, abs(_hamiltonian_action(psi, x, spec, h) - energy * value))
        scale = max(scale, abs(energy * value) if energy else abs(value))
    residual = worst / scale
    logger.info('jack oracle %s k=%s: residual %.3e (E=%.12g)', lam, k_value, residual, energy)
    return residual


def measure_jack_energy(lam: Partition, k: Coupling, spec: ModelSpec, *, count: int = 20, seed: int = 0,
                        h: float = ORACLE_SETTINGS['fd_step']) -> tuple:
    """(mean, spread) of Re(ĤΨ/Ψ) over interior points, to compare with E_λ/m."""
    k_value = _check_oracle_spec(spec, k)
    lam = Partition.of(lam.parts, spec.N)
    psi = _wave_function(jack_polynomial(lam, k).poly, k_value, spec.a)
    ratios = []
    for x in interior_points(spec, count, np.random.default_rng(seed)):
        value = psi(x)
        if abs(value) > 1e-8:
            ratios.append((_hamiltonian_action(psi, x, spec, h) / value).real)
    mean = float(np.mean(ratios))
    return mean, float(np.max(np.abs(np.array(ratios) - mean)))
