"""
Partitions with at most N parts, the dominance order, and enumeration.
"""

import logging
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, List, Sequence, Tuple

from model.errors import ConfigError, WeightMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing nonnegative parts λ₁ ≥ … ≥ λ_N; trailing zeros are kept so the length is N."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p < 0 for p in parts):
            raise ConfigError(f'partition parts must be nonnegative integers, got {parts}')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ConfigError(f'{parts} is not weakly decreasing')
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def of(cls, parts: Sequence[int], N: int = None) -> 'Partition':
        """Pads with zeros up to N parts; N = None keeps the given length."""
        parts = [int(p) for p in parts]
        if N is not None:
            while len(parts) > N and parts[-1] == 0:
                parts.pop()
            if len(parts) > N:
                raise ConfigError(f'{tuple(parts)} has more than {N} nonzero parts')
            parts += [0] * (N - len(parts))
        return cls(tuple(parts))

    @property
    def N(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of nonzero parts."""
        return sum(1 for p in self.parts if p)

    def nonzero(self) -> Tuple[int, ...]:
        return tuple(p for p in self.parts if p)

    def __add__(self, other: 'Partition') -> 'Partition':
        if self.N != other.N:
            raise ConfigError('partitions of different lengths cannot be added')
        return Partition(tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return '[' + ','.join(str(p) for p in self.nonzero()) + ']'


def staircase(N: int) -> Partition:
    """δ = (N−1, N−2, …, 0)."""
    return Partition(tuple(range(N - 1, -1, -1)))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """μ ≤ λ: every partial sum of μ is at most the matching partial sum of λ."""
    if mu.weight != lam.weight:
        raise WeightMismatchError(f'|{mu}| = {mu.weight} differs from |{lam}| = {lam.weight}')
    n = max(mu.N, lam.N)
    mu_parts = list(mu.parts) + [0] * (n - mu.N)
    lam_parts = list(lam.parts) + [0] * (n - lam.N)
    return all(a <= b for a, b in zip(accumulate(mu_parts), accumulate(lam_parts)))


def partitions_of(n: int, max_parts: int) -> List[Partition]:
    """All partitions of n with at most max_parts parts, padded to max_parts, in decreasing lex order."""
    if n < 0 or max_parts < 0:
        raise ConfigError('partitions_of needs nonnegative n and max_parts')

    def build(remaining: int, largest: int, slots: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield (0,) * slots
            return
        if slots == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in build(remaining - first, first, slots - 1):
                yield (first,) + rest

    return [Partition(parts) for parts in build(n, n, max_parts)]


def dominated_by(lam: Partition) -> List[Partition]:
    """Partitions μ ≤ λ with the same number of slots, highest first."""
    return [mu for mu in partitions_of(lam.weight, lam.N) if dominance_leq(mu, lam)]
