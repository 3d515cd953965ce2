"""
Baker-Akhiezer function of the rational system at integer coupling g = −m.

ψ(λ, x) = P(λ, x)e^{iλ·x} with P = (1/M!)K^M(A_m), M = mN(N−1)/2, where K is the conjugate of ½p₂(λ) − Ĥ
through e^{iλ·x}:

    K(P) = ½ΣP_{x_i x_i} + iΣλ_i P_{x_i} − m(m + 1)Σ_{i<j} P/(x_i − x_j)²

Everything lives in one exact ring of 2N variables: x in slots 0..N−1, λ in slots N..2N−1.
The denominators are powers of Δ(x) only.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Sequence, Tuple

import numpy as np

from config.settings import GUARD_SETTINGS
from model.errors import ConfigError, DivisibilityError, GuardExceededError, VerificationError
from polyring.gaussian import GaussianRational, I
from polyring.multipoly import MultiPoly, divide_by_vandermonde, vandermonde
from polyring.rational import RationalPoly
from polyring.symmetric import permutation_sign

logger = logging.getLogger(__name__)


def x_slots(N: int) -> Tuple[int, ...]:
    return tuple(range(N))


def lambda_slots(N: int) -> Tuple[int, ...]:
    return tuple(range(N, 2 * N))


@dataclass(frozen=True)
class BAElement:
    """Prefactor P(λ, x) of ψ = P·e^{iλ·x}; the exponential is implicit."""

    N: int
    m: int
    prefactor: RationalPoly

    @property
    def order(self) -> int:
        return self.m * self.N * (self.N - 1) // 2

    def evaluate(self, lam: Sequence[float], x: Sequence[float]) -> complex:
        values = list(x) + list(lam)
        return self.prefactor.evaluate(values) * complex(np.exp(1j * float(np.dot(lam, x))))


class _Conjugated:
    """K with the Δ-dependent pieces precomputed for one N."""

    def __init__(self, N: int, m: int):
        nvars = 2 * N
        self.N, self.m = N, m
        self.delta = vandermonde(nvars, x_slots(N))
        self.delta_partials = [self.delta.derive(i) for i in x_slots(N)]
        # Σ_{i<j}(Δ/x_ij)² so that Σ P/x_ij² = Num·W/Δ^{d+2}
        self.walls = MultiPoly.zero(nvars)
        for i, j in combinations(x_slots(N), 2):
            cofactor, _ = self.delta.divide_linear(i, j)
            self.walls = self.walls + cofactor * cofactor
        self.i_lambda = [MultiPoly.variable(nvars, s).scale(I) for s in lambda_slots(N)]
        self.coupling = GaussianRational(-m * (m + 1))

    def __call__(self, P: RationalPoly) -> RationalPoly:
        """
        With ∂_i(Num/Δ^d) = A_i/Δ^{d+1}, A_i = Δ∂_iNum − d·Num·∂_iΔ, everything is put over Δ^{d+2}:
        ½Σ(Δ∂_iA_i − (d+1)A_i∂_iΔ) + Σiλ_iΔA_i − m(m+1)·Num·W.
        """
        d, numerator = P.denom_power, P.numerator
        total = (numerator * self.walls).scale(self.coupling)
        half = GaussianRational(Fraction(1, 2))
        for i in x_slots(self.N):
            A = self.delta * numerator.derive(i) - (numerator * self.delta_partials[i]).scale(d)
            second = self.delta * A.derive(i) - (A * self.delta_partials[i]).scale(d + 1)
            total = total + second.scale(half) + self.delta * A * self.i_lambda[i]
        return RationalPoly(total, d + 2, P.delta_slots)


def _check_order(N: int, m: int, max_order: int) -> int:
    if not isinstance(m, int) or m < 1:
        raise ConfigError(f'the Baker-Akhiezer function needs a positive integer m, got {m!r}')
    if N < 1:
        raise ConfigError('N must be positive')
    order = m * N * (N - 1) // 2
    if order > max_order:
        raise GuardExceededError(f'M = mN(N-1)/2 = {order} exceeds the guard {max_order}')
    return order


def ba_function(N: int, m: int, *, max_order: int = GUARD_SETTINGS['max_ba_order']) -> BAElement:
    order = _check_order(N, m, max_order)
    K = _Conjugated(N, m)
    P = RationalPoly(K.delta ** m, 0, x_slots(N))
    for step in range(order):
        P = K(P)
        logger.debug('BA N=%d m=%d: K^%d has %d terms over Δ^%d', N, m, step + 1, len(P.numerator), P.denom_power)
    P = P * GaussianRational(Fraction(1, math.factorial(order)))
    return BAElement(N=N, m=m, prefactor=P)


def ba_eigen_residual(psi: BAElement) -> RationalPoly:
    """e^{−iλ·x}(Ĥ − ½p₂(λ))ψ = −K(P); the exact zero when ψ is an eigenfunction."""
    return -_Conjugated(psi.N, psi.m)(psi.prefactor)


def ba_leading_term_check(psi: BAElement) -> MultiPoly:
    """
    Defect between the top λ-degree part of P and A_m(iλ).

    Returned as the numerator-level difference (zero polynomial when the check passes).
    """
    N, P = psi.N, psi.prefactor
    lam = lambda_slots(N)
    top_degree = P.numerator.degree_in(lam)
    if top_degree != psi.order:
        raise VerificationError(f'prefactor has λ-degree {top_degree}, expected {psi.order}')
    a_m = vandermonde(2 * N, lam) ** psi.m
    expected = a_m.scale(I ** psi.order) * (P.delta ** P.denom_power)
    return P.numerator.homogeneous_part(psi.order, lam) - expected


def ba_pole_orders(psi: BAElement) -> Dict[Tuple[int, int], int]:
    """Pole order of P along each wall x_i = x_j (negative means a zero)."""
    return psi.prefactor.pole_orders()


def ba_sign_law_residual(psi: BAElement, i: int = 0, j: int = 1) -> RationalPoly:
    """P(σ_ij λ, x) − (−1)^m P(λ, σ_ij x); the exponential factors agree for a transposition."""
    N = psi.N
    on_lambda = list(range(2 * N))
    on_lambda[N + i], on_lambda[N + j] = N + j, N + i
    on_x = list(range(2 * N))
    on_x[i], on_x[j] = j, i
    left = psi.prefactor.permute_slots(on_lambda)
    right = psi.prefactor.permute_slots(on_x)
    return left - right if psi.m % 2 == 0 else left + right


@dataclass(frozen=True)
class AntisymmetrizationWitness:
    """
    Homogeneous x-parts G_n of Δ^d·Σ_σ sgn(σ)ψ(σλ, x) with their quotients by Δ^{d+m+1}.

    `lowest_degree` is D = (d + m + 1)N(N−1)/2; every G_n with n < D vanishes and `j_at_zero`
    = G_D/Δ^{d+m+1} is J_m(λ, 0). `defects` lists the degrees where either statement fails.
    """

    N: int
    m: int
    divisor_power: int
    lowest_degree: int
    quotients: Dict[int, MultiPoly]
    defects: Tuple[int, ...] = ()

    @property
    def j_at_zero(self) -> MultiPoly:
        return self.quotients.get(self.lowest_degree, MultiPoly.zero(2 * self.N))


def ba_antisymmetrize(psi: BAElement, extra_orders: int = 1, strict: bool = True) -> AntisymmetrizationWitness:
    """
    Checks Σ_σ sgn(σ)ψ(σλ, x) = A_{m+1}(x)·J_m(λ, x) order by order in x.

    e^{iλ·x} is expanded as Σ(iλ·x)^k/k!; the sum of homogeneous x-parts of Δ^dΨ is divisible
    by Δ^{d+m+1} iff every part is, since Δ is homogeneous. With strict=False the failing degrees
    are collected in `defects` instead of raising.
    """
    N, m = psi.N, psi.m
    nvars = 2 * N
    xs = x_slots(N)
    numerator, d = psi.prefactor.numerator, psi.prefactor.denom_power
    divisor_power = d + m + 1
    lowest = divisor_power * N * (N - 1) // 2

    grouped: Dict[int, dict] = {}
    for exps, coeff in numerator.items():
        grouped.setdefault(sum(exps[s] for s in xs), {})[exps] = coeff
    parts = {t: MultiPoly(nvars, terms) for t, terms in grouped.items()}

    phase = MultiPoly.zero(nvars)
    for s in xs:
        phase = phase + MultiPoly.variable(nvars, s) * MultiPoly.variable(nvars, N + s)
    phase = phase.scale(I)
    exponential = [MultiPoly.one(nvars)]
    for k in range(1, lowest + extra_orders + 1):
        exponential.append((exponential[-1] * phase).scale(Fraction(1, k)))

    lambda_perms = []
    for sigma in permutations(range(N)):
        full = list(range(nvars))
        for a, b in enumerate(sigma):
            full[N + a] = N + b
        lambda_perms.append((permutation_sign(sigma), full))

    quotients: Dict[int, MultiPoly] = {}
    defects = []
    for n in range(lowest + extra_orders + 1):
        series = MultiPoly.zero(nvars)
        for t, part in parts.items():
            if t <= n:
                series = series + part * exponential[n - t]
        antisymmetric = MultiPoly.zero(nvars)
        for sign, full in lambda_perms:
            image = series.act_permutation(full)
            antisymmetric = antisymmetric + image if sign > 0 else antisymmetric - image
        try:
            if n < lowest:
                if not antisymmetric.is_zero:
                    raise DivisibilityError(f'x-degree {n} part of the antisymmetrization is nonzero below {lowest}')
                continue
            quotients[n] = divide_by_vandermonde(antisymmetric, xs, divisor_power)
        except DivisibilityError:
            if strict:
                raise
            defects.append(n)
            continue
        logger.debug('antisymmetrized BA N=%d m=%d: degree %d divisible by Δ^%d', N, m, n, divisor_power)

    if quotients.get(lowest, MultiPoly.zero(nvars)).is_zero and lowest not in defects:
        if strict:
            raise VerificationError('J_m(λ, 0) vanishes identically')
        defects.append(lowest)
    return AntisymmetrizationWitness(N=N, m=m, divisor_power=divisor_power, lowest_degree=lowest,
                                     quotients=quotients, defects=tuple(sorted(defects)))
