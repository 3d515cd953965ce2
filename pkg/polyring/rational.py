"""
Rational functions whose only denominators are powers of the Vandermonde Δ = Π_{a<b}(x_a − x_b).
"""

import logging
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

from model.errors import ConfigError, DivisibilityError
from polyring.multipoly import MultiPoly, divide_by_vandermonde, linear_multiplicity, vandermonde
from polyring.symmetric import permutation_sign

logger = logging.getLogger(__name__)


class RationalPoly:
    """
    numerator / Δ^denom_power, Δ taken over `delta_slots` of the numerator's ring.

    The canonical form never has a numerator divisible by Δ while denom_power > 0.
    """

    __slots__ = ('numerator', 'denom_power', 'delta_slots', '_delta')

    def __init__(self, numerator: MultiPoly, denom_power: int = 0,
                 delta_slots: Optional[Sequence[int]] = None, *, canonical: bool = True):
        if denom_power < 0:
            raise ConfigError('the Δ power of a RationalPoly is nonnegative')
        self.delta_slots = tuple(range(numerator.nvars) if delta_slots is None else delta_slots)
        self._delta = None
        self.numerator = numerator
        self.denom_power = denom_power
        if canonical:
            self._canonicalize()

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def delta(self) -> MultiPoly:
        if self._delta is None:
            self._delta = vandermonde(self.nvars, self.delta_slots)
        return self._delta

    def _like(self, numerator: MultiPoly, denom_power: int, canonical: bool = True) -> 'RationalPoly':
        result = RationalPoly(numerator, denom_power, self.delta_slots, canonical=canonical)
        result._delta = self._delta
        return result

    def _canonicalize(self):
        while self.denom_power > 0 and not self.numerator.is_zero:
            try:
                self.numerator = divide_by_vandermonde(self.numerator, self.delta_slots)
            except DivisibilityError:
                break
            self.denom_power -= 1
        if self.numerator.is_zero:
            self.denom_power = 0

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def _aligned(self, other: 'RationalPoly') -> Tuple[MultiPoly, MultiPoly, int]:
        if isinstance(other, MultiPoly):
            other = self._like(other, 0, canonical=False)
        if other.delta_slots != self.delta_slots:
            raise ConfigError('RationalPoly operands use different Δ slots')
        d = max(self.denom_power, other.denom_power)
        left = self.numerator * self.delta ** (d - self.denom_power) if d > self.denom_power else self.numerator
        right = other.numerator * self.delta ** (d - other.denom_power) if d > other.denom_power else other.numerator
        return left, right, d

    # --- Арифметика -----------------------------------------------------------
    def __add__(self, other):
        left, right, d = self._aligned(other)
        return self._like(left + right, d)

    def __sub__(self, other):
        left, right, d = self._aligned(other)
        return self._like(left - right, d)

    def __neg__(self):
        return self._like(-self.numerator, self.denom_power, canonical=False)

    def __mul__(self, other):
        if isinstance(other, RationalPoly):
            return self._like(self.numerator * other.numerator, self.denom_power + other.denom_power)
        if isinstance(other, MultiPoly):
            return self._like(self.numerator * other, self.denom_power)
        return self._like(self.numerator.scale(other), self.denom_power, canonical=False)

    __rmul__ = __mul__

    def divide_by_delta(self, power: int = 1) -> 'RationalPoly':
        return self._like(self.numerator, self.denom_power + power)

    def __eq__(self, other):
        if not isinstance(other, (RationalPoly, MultiPoly)):
            return NotImplemented
        left, right, _ = self._aligned(other)
        return left == right

    __hash__ = None

    # --- Анализ ---------------------------------------------------------------
    def derive(self, i: int, canonical: bool = True) -> 'RationalPoly':
        """∂_i(N/Δ^d) = (Δ∂_iN − dN∂_iΔ)/Δ^{d+1}."""
        d = self.denom_power
        if d == 0 or i not in self.delta_slots:
            return self._like(self.numerator.derive(i), d, canonical=False)
        numerator = self.delta * self.numerator.derive(i) - (self.numerator * self.delta.derive(i)).scale(d)
        return self._like(numerator, d + 1, canonical=canonical)

    def permute_slots(self, sigma: Sequence[int]) -> 'RationalPoly':
        """Acts on the numerator's variables; Δ(σx) = sgn·Δ(x) contributes sgn^d."""
        restricted = [sigma[s] for s in self.delta_slots]
        if sorted(restricted) != sorted(self.delta_slots):
            raise ConfigError('the permutation must map the Δ slots onto themselves')
        position = {s: k for k, s in enumerate(self.delta_slots)}
        sign = permutation_sign([position[sigma[s]] for s in self.delta_slots])
        numerator = self.numerator.act_permutation(sigma)
        if sign < 0 and self.denom_power % 2:
            numerator = -numerator
        return self._like(numerator, self.denom_power, canonical=False)

    def wall_multiplicity(self, a: int, b: int) -> int:
        """Order of vanishing of the numerator along x_a = x_b."""
        return linear_multiplicity(self.numerator, a, b)

    def pole_orders(self) -> Dict[Tuple[int, int], int]:
        """Δ-power minus the numerator's wall multiplicity; negative values are zeros."""
        return {(a, b): self.denom_power - self.wall_multiplicity(a, b)
                for a, b in combinations(self.delta_slots, 2)}

    def evaluate(self, values: Sequence[complex]) -> complex:
        return self.numerator.evaluate(values) / self.delta.evaluate(values) ** self.denom_power

    def __str__(self):
        if self.denom_power == 0:
            return self.numerator.canonical_text()
        return f'({self.numerator.canonical_text()}) / Delta^{self.denom_power}'

    def __repr__(self):
        return f'RationalPoly({self.numerator.canonical_text()!r}, {self.denom_power})'
