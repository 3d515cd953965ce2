"""
Exact Gaussian rationals a + bi with a, b ∈ ℚ.
"""

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, 'GaussianRational']


class GaussianRational:
    """Immutable a + bi over Fractions; hashable, comparable for equality only."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        object.__setattr__(self, 're', Fraction(re))
        object.__setattr__(self, 'im', Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError('GaussianRational is immutable')

    @classmethod
    def of(cls, value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (Rational, str)):
            return cls(Fraction(value), 0)
        if isinstance(value, complex):
            # only exactly representable inputs; used for ±i style literals
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value), 0)
        raise TypeError(f'cannot make a Gaussian rational from {value!r}')

    # --- Арифметика -----------------------------------------------------------
    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re, 0)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        norm = other.re ** 2 + other.im ** 2
        if norm == 0:
            raise ZeroDivisionError('division by the Gaussian rational 0')
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError('only integer powers are exact')
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result, base = GaussianRational(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    # --- Сравнение ------------------------------------------------------------
    def __eq__(self, other):
        try:
            other = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return '-i' if self.im == -1 else ('i' if self.im == 1 else f'{self.im}i')
        sign = '-' if self.im < 0 else '+'
        magnitude = abs(self.im)
        imag = 'i' if magnitude == 1 else f'{magnitude}i'
        return f'({self.re}{sign}{imag})'

    def __repr__(self):
        return f'GaussianRational({self.re!s}, {self.im!s})'


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
