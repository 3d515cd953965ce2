"""
Rational Dunkl operators D_i(k) = ∂_i + kΣ_{j≠i}(x_i − x_j)^{−1}(1 − σ_ij) acting on exact polynomials,
the restricted k-Laplacian on symmetric polynomials and the gauged integrals p(−iD₁, …, −iD_N).
"""

import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterator, Tuple, Union

from model.errors import DivisibilityError
from polyring.gaussian import GaussianRational
from polyring.multipoly import Exponent, MultiPoly
from polyring.symmetric import SymmetricPoly, as_symmetric

logger = logging.getLogger(__name__)

Coupling = Union[int, Fraction, str, GaussianRational]

_MINUS_I = GaussianRational(0, -1)


def dunkl_apply(i: int, k: Coupling, p: MultiPoly) -> MultiPoly:
    """D_i(k)p, exact; (1 − σ_ij)p/(x_i − x_j) is the divided difference."""
    k = GaussianRational.of(k)
    result = p.derive(i)
    if not k:
        return result
    for j in range(p.nvars):
        if j != i:
            result = result + p.divided_difference(i, j).scale(k)
    return result


def dunkl_commutator(i: int, j: int, k: Coupling, p: MultiPoly) -> MultiPoly:
    return dunkl_apply(i, k, dunkl_apply(j, k, p)) - dunkl_apply(j, k, dunkl_apply(i, k, p))


def dunkl_equivariance_defects(i: int, j: int, l: int, k: Coupling, p: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """(σ_ij D_i σ_ij p − D_j p, σ_jl D_i σ_jl p − D_i p) for i, j, l distinct."""
    swapped = dunkl_apply(i, k, p.swap(i, j)).swap(i, j) - dunkl_apply(j, k, p)
    untouched = dunkl_apply(i, k, p.swap(j, l)).swap(j, l) - dunkl_apply(i, k, p)
    return swapped, untouched


def dunkl_laplacian(k: Coupling, p: MultiPoly) -> MultiPoly:
    """Σ_i D_i(k)² p."""
    result = MultiPoly.zero(p.nvars)
    for i in range(p.nvars):
        result = result + dunkl_apply(i, k, dunkl_apply(i, k, p))
    return result


def restricted_laplacian_apply(k: Coupling, p: Union[MultiPoly, SymmetricPoly]) -> SymmetricPoly:
    """Σ∂_i²p + 2kΣ_{i<j}(∂_i − ∂_j)p/(x_i − x_j) on symmetric p."""
    poly = as_symmetric(p).poly
    k = GaussianRational.of(k)
    result = MultiPoly.zero(poly.nvars)
    for i in range(poly.nvars):
        result = result + poly.derive(i).derive(i)
    for i, j in combinations(range(poly.nvars), 2):
        quotient, remainder = (poly.derive(i) - poly.derive(j)).divide_linear(i, j)
        if not remainder.is_zero:
            raise DivisibilityError(f'(∂_{i + 1} − ∂_{j + 1})p is not divisible by x{i + 1} − x{j + 1}')
        result = result + quotient.scale(k * 2)
    return SymmetricPoly(result)


def gauged_integral_apply(pspec: MultiPoly, k: Coupling, q: Union[MultiPoly, SymmetricPoly]) -> SymmetricPoly:
    """
    pspec(−iD₁, …, −iD_N) applied to symmetric q.

    The Dunkl operators commute, so each monomial of pspec is applied in slot order;
    intermediate D-powers are shared between terms.
    """
    poly = as_symmetric(q).poly
    cache: Dict[Exponent, MultiPoly] = {(0,) * poly.nvars: poly}

    def powers(alpha: Exponent) -> MultiPoly:
        if alpha in cache:
            return cache[alpha]
        slot = max(s for s, a in enumerate(alpha) if a)
        lower = list(alpha)
        lower[slot] -= 1
        cache[alpha] = dunkl_apply(slot, k, powers(tuple(lower)))
        return cache[alpha]

    result = MultiPoly.zero(poly.nvars)
    for alpha, coeff in pspec.sorted_terms():
        result = result + powers(alpha).scale(coeff * _MINUS_I ** sum(alpha))
    return SymmetricPoly.from_poly(result)


def gauged_commutator(pspec: MultiPoly, qspec: MultiPoly, k: Coupling, q: MultiPoly) -> MultiPoly:
    """[Ĥ_p, Ĥ_q] applied to symmetric q."""
    forward = gauged_integral_apply(pspec, k, gauged_integral_apply(qspec, k, q))
    backward = gauged_integral_apply(qspec, k, gauged_integral_apply(pspec, k, q))
    return forward.poly - backward.poly


def monomials_up_to(N: int, degree: int) -> Iterator[MultiPoly]:
    """Every monomial x^α with |α| ≤ degree, in graded order."""
    for total in range(degree + 1):
        for alpha in product(range(total + 1), repeat=N):
            if sum(alpha) == total:
                yield MultiPoly.monomial(alpha)
