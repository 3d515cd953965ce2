"""
Closed-form test functions F(x₁, …, x_N): small immutable expression trees that evaluate at complex
points and differentiate symbolically.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

from model.errors import ConfigError

logger = logging.getLogger(__name__)


class ClosedFormFn:
    """Base node. Subclasses implement evaluate(x) and derivative(i)."""

    def evaluate(self, x: Sequence[complex]) -> complex:
        raise NotImplementedError

    def derivative(self, i: int) -> 'ClosedFormFn':
        raise NotImplementedError

    def __call__(self, x: Sequence[complex]) -> complex:
        return self.evaluate(x)

    def laplacian(self, N: int) -> 'ClosedFormFn':
        return add(*[self.derivative(i).derivative(i) for i in range(N)])

    # --- Алгебра --------------------------------------------------------------
    def __add__(self, other):
        return add(self, lift(other))

    def __radd__(self, other):
        return add(lift(other), self)

    def __sub__(self, other):
        return add(self, multiply(Constant(-1), lift(other)))

    def __neg__(self):
        return multiply(Constant(-1), self)

    def __mul__(self, other):
        return multiply(self, lift(other))

    def __rmul__(self, other):
        return multiply(lift(other), self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('closed forms support nonnegative integer powers')
        return power(self, exponent)


@dataclass(frozen=True)
class Constant(ClosedFormFn):
    value: complex

    def evaluate(self, x):
        return complex(self.value)

    def derivative(self, i):
        return ZERO

    def __str__(self):
        return f'{self.value}'


@dataclass(frozen=True)
class Coordinate(ClosedFormFn):
    index: int

    def evaluate(self, x):
        return complex(x[self.index])

    def derivative(self, i):
        return ONE if i == self.index else ZERO

    def __str__(self):
        return f'x{self.index + 1}'


@dataclass(frozen=True)
class Sum(ClosedFormFn):
    terms: Tuple[ClosedFormFn, ...]

    def evaluate(self, x):
        return sum((t.evaluate(x) for t in self.terms), 0j)

    def derivative(self, i):
        return add(*[t.derivative(i) for t in self.terms])

    def __str__(self):
        return '(' + ' + '.join(str(t) for t in self.terms) + ')'


@dataclass(frozen=True)
class Product(ClosedFormFn):
    factors: Tuple[ClosedFormFn, ...]

    def evaluate(self, x):
        result = 1 + 0j
        for f in self.factors:
            result *= f.evaluate(x)
        return result

    def derivative(self, i):
        terms = []
        for k, f in enumerate(self.factors):
            others = self.factors[:k] + self.factors[k + 1:]
            terms.append(multiply(f.derivative(i), *others))
        return add(*terms)

    def __str__(self):
        return '*'.join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Power(ClosedFormFn):
    base: ClosedFormFn
    exponent: int

    def evaluate(self, x):
        return self.base.evaluate(x) ** self.exponent

    def derivative(self, i):
        return multiply(Constant(self.exponent), power(self.base, self.exponent - 1), self.base.derivative(i))

    def __str__(self):
        return f'{self.base}^{self.exponent}'


@dataclass(frozen=True)
class _Elementary(ClosedFormFn):
    argument: ClosedFormFn

    name = ''
    function = None

    def evaluate(self, x):
        return type(self).function(self.argument.evaluate(x))

    def derivative(self, i):
        return multiply(self._outer_derivative(), self.argument.derivative(i))

    def _outer_derivative(self) -> ClosedFormFn:
        raise NotImplementedError

    def __str__(self):
        return f'{self.name}({self.argument})'


class Exp(_Elementary):
    name, function = 'exp', cmath.exp

    def _outer_derivative(self):
        return self


class Sin(_Elementary):
    name, function = 'sin', cmath.sin

    def _outer_derivative(self):
        return Cos(self.argument)


class Cos(_Elementary):
    name, function = 'cos', cmath.cos

    def _outer_derivative(self):
        return multiply(Constant(-1), Sin(self.argument))


class Sinh(_Elementary):
    name, function = 'sinh', cmath.sinh

    def _outer_derivative(self):
        return Cosh(self.argument)


class Cosh(_Elementary):
    name, function = 'cosh', cmath.cosh

    def _outer_derivative(self):
        return Sinh(self.argument)


ZERO = Constant(0)
ONE = Constant(1)


def lift(value) -> ClosedFormFn:
    return value if isinstance(value, ClosedFormFn) else Constant(complex(value))


def _is_constant(node: ClosedFormFn, value: complex) -> bool:
    return isinstance(node, Constant) and complex(node.value) == value


def add(*terms: ClosedFormFn) -> ClosedFormFn:
    """Sum with zeros dropped and nested sums flattened."""
    flat = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif not _is_constant(t, 0):
            flat.append(t)
    if not flat:
        return ZERO
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def multiply(*factors: ClosedFormFn) -> ClosedFormFn:
    """Product with ones dropped; any zero factor gives ZERO."""
    flat = []
    for f in factors:
        if _is_constant(f, 0):
            return ZERO
        if isinstance(f, Product):
            flat.extend(f.factors)
        elif not _is_constant(f, 1):
            flat.append(f)
    if not flat:
        return ONE
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


def power(base: ClosedFormFn, exponent: int) -> ClosedFormFn:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    return Power(base, exponent)


def affine(coefficients: Sequence[complex], offset: complex = 0) -> ClosedFormFn:
    """Σ c_i x_i + offset."""
    return add(Constant(offset), *[multiply(Constant(c), Coordinate(i)) for i, c in enumerate(coefficients) if c])


def plane_wave(mu: Sequence[complex]) -> ClosedFormFn:
    """e^{μ·x}."""
    return Exp(affine(mu))


# --- Набор тестовых функций ------------------------------------------------------

def _plane_wave(N: int) -> ClosedFormFn:
    return plane_wave([(i + 1) / N for i in range(N)])


def _trig_mix(N: int) -> ClosedFormFn:
    result = Sin(affine([1.0] + [0.0] * (N - 1), 0.3))
    for i in range(1, N):
        coefficients = [0.0] * N
        coefficients[i] = 0.5
        result = result * Cosh(affine(coefficients, 0.1 * i))
    return result


def _polynomial(N: int) -> ClosedFormFn:
    terms = [Coordinate(i) ** 3 for i in range(N)]
    if N > 1:
        terms.append(Coordinate(0) * Coordinate(1))
    return add(*terms, ONE)


def _gaussian(N: int) -> ClosedFormFn:
    return Exp(multiply(Constant(-0.1), add(*[Coordinate(i) ** 2 for i in range(N)])))


TEST_FUNCTIONS: Dict[str, Callable[[int], ClosedFormFn]] = {
    'plane-wave': _plane_wave,
    'trig-mix': _trig_mix,
    'polynomial': _polynomial,
    'gaussian': _gaussian,
}


def menu_function(name: str, N: int) -> ClosedFormFn:
    if name not in TEST_FUNCTIONS:
        raise ConfigError(f'unknown test function {name!r}; choose from {sorted(TEST_FUNCTIONS)}')
    return TEST_FUNCTIONS[name](N)
