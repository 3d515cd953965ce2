"""
Symmetric polynomials: the monomial, power-sum and Vandermonde-power bases, monomial expansion
and the Schur polynomials used as the k = 1 oracle for Jack polynomials.
"""

import logging
from itertools import permutations
from typing import Dict, Sequence, Union

from model.errors import ConfigError, NotSymmetricError
from polyring.gaussian import GaussianRational
from polyring.multipoly import LaurentPoly, MultiPoly, divide_by_vandermonde, vandermonde
from polyring.partitions import Partition, staircase

logger = logging.getLogger(__name__)

MONOMIAL = 'monomial'
POWERSUM = 'powersum'
VANDERMONDE_POWER = 'vandermonde_power'


def permutation_sign(sigma: Sequence[int]) -> int:
    sign, seen = 1, set()
    for start in range(len(sigma)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = sigma[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def is_symmetric(p: MultiPoly) -> bool:
    """Invariance under the adjacent transpositions, which generate S_N."""
    return all(p.swap(i, i + 1) == p for i in range(p.nvars - 1))


class SymmetricPoly:
    """A polynomial (or Laurent polynomial) known to be invariant under S_N."""

    __slots__ = ('poly',)

    def __init__(self, poly: MultiPoly):
        self.poly = poly

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> 'SymmetricPoly':
        if not is_symmetric(poly):
            raise NotSymmetricError(f'{poly.canonical_text()} is not symmetric')
        return cls(poly)

    @property
    def N(self) -> int:
        return self.poly.nvars

    def __add__(self, other: 'SymmetricPoly') -> 'SymmetricPoly':
        return SymmetricPoly(self.poly + other.poly)

    def __sub__(self, other: 'SymmetricPoly') -> 'SymmetricPoly':
        return SymmetricPoly(self.poly - other.poly)

    def scale(self, factor) -> 'SymmetricPoly':
        return SymmetricPoly(self.poly.scale(factor))

    def __eq__(self, other):
        if isinstance(other, SymmetricPoly):
            return self.poly == other.poly
        return self.poly == other

    __hash__ = None

    def monomial_expansion(self) -> Dict[Partition, GaussianRational]:
        return monomial_expansion(self.poly)

    def __str__(self):
        return format_monomial_expansion(self.monomial_expansion())

    def __repr__(self):
        return f'SymmetricPoly({self.poly.canonical_text()!r})'


def as_symmetric(p: Union[MultiPoly, SymmetricPoly]) -> SymmetricPoly:
    return p if isinstance(p, SymmetricPoly) else SymmetricPoly.from_poly(p)


def monomial_symmetric(lam: Partition, N: int = None, laurent: bool = False) -> MultiPoly:
    """m_λ: the sum over the distinct rearrangements of λ."""
    parts = Partition.of(lam.parts, N).parts if N is not None else lam.parts
    cls = LaurentPoly if laurent else MultiPoly
    return cls(len(parts), {exps: 1 for exps in set(permutations(parts))})


def power_sum(r: int, N: int) -> MultiPoly:
    """p_r = x₁^r + … + x_N^r (p_0 = N)."""
    if r < 0:
        raise ConfigError('power sums are indexed by r ≥ 0')
    if r == 0:
        return MultiPoly.constant(N, N)
    terms = {}
    for i in range(N):
        exps = [0] * N
        exps[i] = r
        terms[tuple(exps)] = 1
    return MultiPoly(N, terms)


def symmetric_basis(kind: str, data: Union[Partition, Sequence[int], int], N: int) -> MultiPoly:
    """m_λ, p_r or A_m = Δ^m."""
    if kind == MONOMIAL:
        lam = data if isinstance(data, Partition) else Partition.of(data, N)
        return monomial_symmetric(lam, N)
    if kind == POWERSUM:
        return power_sum(int(data), N)
    if kind == VANDERMONDE_POWER:
        if int(data) < 0:
            raise ConfigError('A_m needs m ≥ 0')
        return vandermonde(N) ** int(data)
    raise ConfigError(f'unknown symmetric basis {kind!r}')


def monomial_expansion(p: MultiPoly) -> Dict[Partition, GaussianRational]:
    """Coefficients c_λ with p = Σ c_λ m_λ, read off the decreasing exponent vectors."""
    if not is_symmetric(p):
        raise NotSymmetricError(f'{p.canonical_text()} is not symmetric')
    expansion = {}
    for exps, coeff in p.items():
        if any(e < 0 for e in exps):
            raise ConfigError('monomial expansion is defined for polynomials, not Laurent polynomials')
        if list(exps) == sorted(exps, reverse=True):
            expansion[Partition(exps)] = coeff
    return expansion


def from_monomial_expansion(expansion: Dict[Partition, GaussianRational], N: int) -> MultiPoly:
    result = MultiPoly.zero(N)
    for lam, coeff in expansion.items():
        result = result + monomial_symmetric(lam, N).scale(coeff)
    return result


def format_monomial_expansion(expansion: Dict[Partition, GaussianRational]) -> str:
    """`m[2] + m[1,1]`, highest partition first, unit coefficients omitted."""
    if not expansion:
        return '0'
    parts = []
    for lam in sorted(expansion, key=lambda mu: mu.parts, reverse=True):
        coeff, label = expansion[lam], f'm{lam}'
        parts.append(label if coeff == 1 else f'{coeff} * {label}')
    return ' + '.join(parts)


def alternant(alpha: Sequence[int]) -> MultiPoly:
    """a_α = Σ_σ sgn(σ) x^{σα}."""
    N = len(alpha)
    result = {}
    for sigma in permutations(range(N)):
        exps = [0] * N
        for i, e in enumerate(alpha):
            exps[sigma[i]] = e
        result[tuple(exps)] = result.get(tuple(exps), 0) + permutation_sign(sigma)
    return MultiPoly(N, result)


def schur_polynomial(lam: Partition, N: int = None) -> MultiPoly:
    """s_λ = a_{λ+δ}/Δ."""
    lam = Partition.of(lam.parts, N) if N is not None else lam
    shifted = lam + staircase(lam.N)
    return divide_by_vandermonde(alternant(shifted.parts))
