"""
Shared domain types: model specification, phase-space points and trajectories.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from dataclasses_json import Undefined, config, dataclass_json
from dataclasses_json.undefined import UndefinedParameterError

from model.errors import ConfigError


class PotentialKind(str, Enum):
    """The four pair-potential families (types I-IV)."""
    RATIONAL = 'I'
    HYPERBOLIC = 'II'
    TRIGONOMETRIC = 'III'
    ELLIPTIC = 'IV'

    @classmethod
    def parse(cls, value) -> 'PotentialKind':
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for kind in cls:
            if text.upper() == kind.value or text.lower() == kind.name.lower():
                return kind
        raise ConfigError(f'unknown potential kind: {value!r}')

    @property
    def is_periodic(self) -> bool:
        return self in (PotentialKind.TRIGONOMETRIC, PotentialKind.ELLIPTIC)


def _drop_none(value):
    return value is None


@dataclass_json(undefined=Undefined.RAISE)
@dataclass(frozen=True)
class ModelSpec:
    """
    Potential family plus couplings and particle count.

    `a_c`, `b_c` are the constants of the relativistic elliptic profile f² = a_c + b_c·℘;
    they are only read for kind IV relativistic computations.
    """
    kind: PotentialKind = field(metadata=config(decoder=PotentialKind.parse,
                                                encoder=lambda k: k.value))
    N: int
    g: float
    m: float = 1.0
    beta: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    a: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    omega1: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    omega2_imag: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    hbar: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    a_c: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))
    b_c: Optional[float] = field(default=None, metadata=config(exclude=_drop_none))

    def __post_init__(self):
        object.__setattr__(self, 'kind', PotentialKind.parse(self.kind))
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            raise ConfigError(f'N must be an integer >= 1, got {self.N!r}')
        if not self.m > 0:
            raise ConfigError(f'mass must be positive, got {self.m}')
        if self.beta is not None and not self.beta > 0:
            raise ConfigError(f'beta must be positive, got {self.beta}')
        if self.hbar is not None and not self.hbar > 0:
            raise ConfigError(f'hbar must be positive, got {self.hbar}')
        if self.kind in (PotentialKind.HYPERBOLIC, PotentialKind.TRIGONOMETRIC):
            if self.a is None or not self.a > 0:
                raise ConfigError(f'kind {self.kind.value} needs a > 0, got {self.a}')
        if self.kind is PotentialKind.ELLIPTIC:
            if self.omega1 is None or not self.omega1 > 0:
                raise ConfigError(f'kind IV needs omega1 > 0, got {self.omega1}')
            if self.omega2_imag is None or not self.omega2_imag > 0:
                raise ConfigError(f'kind IV needs -i*omega2 > 0, got {self.omega2_imag}')

    # --- Загрузка -------------------------------------------------------------
    @classmethod
    def load(cls, data: dict) -> 'ModelSpec':
        """Builds a spec from a JSON object, turning schema problems into ConfigError."""
        if not isinstance(data, dict):
            raise ConfigError('model specification must be a JSON object')
        try:
            return cls.from_dict(data)
        except UndefinedParameterError as e:
            raise ConfigError(f'unknown field in model specification: {e}') from e
        except (KeyError, TypeError) as e:
            raise ConfigError(f'malformed model specification: {e}') from e

    @property
    def omega2(self) -> complex:
        return 1j * self.omega2_imag

    @property
    def hbar_value(self) -> float:
        return 1.0 if self.hbar is None else self.hbar

    @property
    def period(self) -> Optional[float]:
        """Length of the real period for kinds III/IV, None on the line."""
        if self.kind is PotentialKind.TRIGONOMETRIC:
            return 2 * math.pi / self.a
        if self.kind is PotentialKind.ELLIPTIC:
            return 2 * self.omega1
        return None

    def require_beta(self) -> float:
        if self.beta is None:
            raise ConfigError('this computation needs the relativistic parameter beta')
        return self.beta

    def with_changes(self, **changes) -> 'ModelSpec':
        data = self.to_dict()
        data.update(changes)
        return ModelSpec.load({k: v for k, v in data.items() if v is not None})


@dataclass(frozen=True)
class PhaseState:
    """Positions x_1 > ... > x_N and momenta p_1..p_N."""
    x: tuple
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, 'x', tuple(float(v) for v in self.x))
        object.__setattr__(self, 'p', tuple(float(v) for v in self.p))
        if len(self.x) != len(self.p):
            raise ConfigError(f'x and p lengths differ: {len(self.x)} != {len(self.p)}')

    @classmethod
    def from_arrays(cls, x: Sequence[float], p: Sequence[float]) -> 'PhaseState':
        return cls(tuple(np.asarray(x, dtype=float)), tuple(np.asarray(p, dtype=float)))

    @property
    def N(self) -> int:
        return len(self.x)

    @property
    def xs(self) -> np.ndarray:
        return np.array(self.x)

    @property
    def ps(self) -> np.ndarray:
        return np.array(self.p)

    def flipped(self) -> 'PhaseState':
        """Same positions, reversed momenta (time reversal)."""
        return PhaseState(self.x, tuple(-v for v in self.p))


def min_gap(x: np.ndarray, spec: ModelSpec) -> float:
    """
    Smallest distance to a wall of the configuration space: the cone
    x_i - x_{i+1} > 0, plus x_1 - x_N < period for kinds III/IV.
    Negative values mean the point is outside.
    """
    x = np.asarray(x, dtype=float)
    if len(x) < 2:
        return math.inf
    gaps = list(x[:-1] - x[1:])
    period = spec.period
    if period is not None:
        gaps.append(period - (x[0] - x[-1]))
    return float(min(gaps))


def in_configuration_space(x: np.ndarray, spec: ModelSpec) -> bool:
    return min_gap(x, spec) > 0


def validate_state(state: PhaseState, spec: ModelSpec) -> PhaseState:
    if state.N != spec.N:
        raise ConfigError(f'state has {state.N} particles, spec expects {spec.N}')
    if not in_configuration_space(state.xs, spec):
        raise ConfigError(f'positions {state.x} are outside the configuration space of kind {spec.kind.value}')
    return state


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped accepted steps of an integration run."""
    times: np.ndarray
    positions: np.ndarray
    momenta: np.ndarray
    error_estimates: np.ndarray
    min_gaps: np.ndarray

    @property
    def states(self) -> List[PhaseState]:
        return [PhaseState.from_arrays(x, p) for x, p in zip(self.positions, self.momenta)]

    @property
    def final_state(self) -> PhaseState:
        return PhaseState.from_arrays(self.positions[-1], self.momenta[-1])

    def to_csv(self, path: str):
        """Writes t, x1..xN, p1..pN, one row per accepted step, 17 significant digits."""
        n = self.positions.shape[1]
        header = ','.join(['t'] + [f'x{i + 1}' for i in range(n)] + [f'p{i + 1}' for i in range(n)])
        table = np.column_stack([self.times, self.positions, self.momenta])
        np.savetxt(path, table, fmt='%.17g', delimiter=',', header=header, comments='')


def random_cone_state(spec: ModelSpec, rng: np.random.Generator, min_gap: float = 1.0,
                      momentum_scale: float = 1.0) -> PhaseState:
    """
    Random point of the configuration space with every neighbouring gap ≥ min_gap, momenta ~ N(0, scale²).

    On the line the gaps are min_gap plus a uniform excess in [0, 1); on the circle the N gaps
    (wrap-around included) split the period as min_gap each plus a Dirichlet share of the remainder.
    """
    n = spec.N
    period = spec.period
    if period is None:
        gaps = min_gap + rng.uniform(0.0, 1.0, n - 1)
    else:
        spare = period - n * min_gap
        if spare <= 0:
            raise ConfigError(f'{n} gaps of {min_gap} do not fit into the period {period:.6g}')
        gaps = (min_gap + spare * rng.dirichlet(np.ones(n)))[:n - 1]
    x = np.concatenate([[0.0], -np.cumsum(gaps)])
    x -= x.mean()
    p = rng.normal(0.0, momentum_scale, n)
    return PhaseState.from_arrays(x, p)
