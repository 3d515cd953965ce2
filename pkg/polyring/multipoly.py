"""
Sparse multivariate polynomials with exact Gaussian-rational coefficients.

A polynomial is a map exponent-vector → nonzero coefficient; zero coefficients are never stored.
Terms are listed in graded-lexicographic order, highest first, which fixes the canonical text.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from config.settings import GUARD_SETTINGS
from model.errors import DegreeGuardError, DivisibilityError
from polyring.gaussian import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def grlex_key(exps: Exponent):
    return sum(exps), exps


class MultiPoly:
    """
    Exact sparse polynomial in `nvars` variables.

    Responsibilities:
    - ring arithmetic that never rounds
    - the variable-level operations the quantum code needs: ∂_i, permutations,
      division by x_i − x_j, divided differences, exact division
    - canonical text form
    """

    allow_negative = False

    def __init__(self, nvars: int, terms=None, *, max_degree: int = GUARD_SETTINGS['max_degree']):
        self.nvars = nvars
        self._terms: Dict[Exponent, GaussianRational] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for exps, coeff in items:
            self._add_term(tuple(exps), GaussianRational.of(coeff))
        self._check(max_degree)

    # --- Конструкторы ---------------------------------------------------------
    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, GaussianRational]) -> 'MultiPoly':
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._check(GUARD_SETTINGS['max_degree'])
        return poly

    @classmethod
    def zero(cls, nvars: int) -> 'MultiPoly':
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> 'MultiPoly':
        value = GaussianRational.of(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def one(cls, nvars: int) -> 'MultiPoly':
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> 'MultiPoly':
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> 'MultiPoly':
        return cls(len(exps), {tuple(exps): coeff})

    def _new(self, terms: Dict[Exponent, GaussianRational]) -> 'MultiPoly':
        cls = LaurentPoly if self.allow_negative else MultiPoly
        return cls._raw(self.nvars, terms)

    def _add_term(self, exps: Exponent, coeff: GaussianRational):
        if len(exps) != self.nvars:
            raise ValueError(f'exponent {exps} has length {len(exps)}, expected {self.nvars}')
        if not self.allow_negative and any(e < 0 for e in exps):
            raise ValueError(f'negative exponent in {exps}; use LaurentPoly')
        if not coeff:
            return
        total = self._terms.get(exps, ZERO) + coeff
        if total:
            self._terms[exps] = total
        else:
            self._terms.pop(exps, None)

    def _check(self, max_degree: int):
        for exps in self._terms:
            if sum(abs(e) for e in exps) > max_degree:
                raise DegreeGuardError(f'total degree of {exps} exceeds the guard {max_degree}')

    # --- Доступ ---------------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> List[Tuple[Exponent, GaussianRational]]:
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, slots: Iterable[int]) -> int:
        slots = list(slots)
        return max((sum(e[s] for s in slots) for e in self._terms), default=-1)

    def leading_term(self) -> Tuple[Exponent, GaussianRational]:
        if self.is_zero:
            raise ValueError('the zero polynomial has no leading term')
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def homogeneous_part(self, degree: int, slots: Optional[Iterable[int]] = None) -> 'MultiPoly':
        """Terms whose degree in `slots` (all variables by default) equals `degree`."""
        slots = range(self.nvars) if slots is None else list(slots)
        return self._new({e: c for e, c in self._terms.items() if sum(e[s] for s in slots) == degree})

    # --- Арифметика -----------------------------------------------------------
    def _coerce(self, other) -> 'MultiPoly':
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f'ring mismatch: {self.nvars} vs {other.nvars} variables')
            return other
        return self.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            total = terms.get(exps, ZERO) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return (self if self.allow_negative else other)._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor) -> 'MultiPoly':
        factor = GaussianRational.of(factor)
        if not factor:
            return self._new({})
        return self._new({e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        terms: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exps, ZERO) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        owner = self if self.allow_negative else other
        return owner._new(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('only nonnegative integer powers')
        result, base = self.one(self.nvars), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self._terms == self.constant(self.nvars, other)._terms
        except TypeError:
            return NotImplemented

    __hash__ = None

    # --- Операции над переменными ---------------------------------------------
    def derive(self, i: int) -> 'MultiPoly':
        terms = {}
        for exps, coeff in self._terms.items():
            if exps[i]:
                new = list(exps)
                new[i] -= 1
                terms[tuple(new)] = coeff * exps[i]
        return self._new(terms)

    def euler(self, i: int) -> 'MultiPoly':
        """x_i ∂/∂x_i (multiplies each term by its exponent in x_i)."""
        return self._new({e: c * e[i] for e, c in self._terms.items() if e[i]})

    def act_permutation(self, sigma: Sequence[int]) -> 'MultiPoly':
        """Sends x_i to x_{σ(i)}; σ is a 0-based permutation of range(nvars)."""
        terms = {}
        for exps, coeff in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[sigma[i]] = e
            terms[tuple(new)] = coeff
        return self._new(terms)

    def swap(self, i: int, j: int) -> 'MultiPoly':
        sigma = list(range(self.nvars))
        sigma[i], sigma[j] = j, i
        return self.act_permutation(sigma)

    def substitute_variable(self, i: int, j: int) -> 'MultiPoly':
        """p with x_i replaced by x_j."""
        terms: Dict[Exponent, GaussianRational] = {}
        for exps, coeff in self._terms.items():
            new = list(exps)
            new[j] += new[i]
            new[i] = 0
            key = tuple(new)
            total = terms.get(key, ZERO) + coeff
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return self._new(terms)

    def divide_linear(self, i: int, j: int) -> Tuple['MultiPoly', 'MultiPoly']:
        """
        (q, r) with p = (x_i − x_j)·q + r and r free of x_i; r = p|_{x_i = x_j}.

        Uses (x_i^a − x_j^a)/(x_i − x_j) = Σ_{t<a} x_i^t x_j^{a−1−t} termwise.
        """
        remainder = self.substitute_variable(i, j)
        terms: Dict[Exponent, GaussianRational] = {}
        for exps, coeff in self._terms.items():
            a = exps[i]
            if a <= 0:
                continue
            for t in range(a):
                new = list(exps)
                new[i] = t
                new[j] = exps[j] + a - 1 - t
                key = tuple(new)
                total = terms.get(key, ZERO) + coeff
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        return self._new(terms), remainder

    def divided_difference(self, i: int, j: int) -> 'MultiPoly':
        """
        (p − σ_ij p)/(x_i − x_j), exact for every p (Laurent included):
        (x_i^a x_j^b − x_j^a x_i^b)/(x_i − x_j) = x_i^b x_j^b Σ_{t=0}^{a−b−1} x_i^t x_j^{a−b−1−t} for a > b.
        """
        terms: Dict[Exponent, GaussianRational] = {}
        for exps, coeff in self._terms.items():
            a, b = exps[i], exps[j]
            if a == b:
                continue
            sign = coeff if a > b else -coeff
            hi, lo = max(a, b), min(a, b)
            for t in range(hi - lo):
                new = list(exps)
                new[i] = lo + t
                new[j] = lo + (hi - lo - 1 - t)
                key = tuple(new)
                total = terms.get(key, ZERO) + sign
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        return self._new(terms)

    def exact_divide(self, divisor: 'MultiPoly') -> 'MultiPoly':
        """Quotient of an exact division; DivisibilityError if a remainder appears."""
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError('division by the zero polynomial')
        lead_exps, lead_coeff = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: Dict[Exponent, GaussianRational] = {}
        while remainder:
            exps = max(remainder, key=grlex_key)
            shift = tuple(a - b for a, b in zip(exps, lead_exps))
            if any(s < 0 for s in shift):
                raise DivisibilityError('polynomial is not divisible by the given divisor')
            factor = remainder[exps] / lead_coeff
            quotient[shift] = factor
            for d_exps, d_coeff in divisor._terms.items():
                key = tuple(a + b for a, b in zip(shift, d_exps))
                total = remainder.get(key, ZERO) - factor * d_coeff
                if total:
                    remainder[key] = total
                else:
                    remainder.pop(key, None)
        return self._new(quotient)

    def embed(self, nvars: int, slots: Sequence[int]) -> 'MultiPoly':
        """The same polynomial in a larger ring, variable i going to slot slots[i]."""
        terms = {}
        for exps, coeff in self._terms.items():
            new = [0] * nvars
            for i, e in enumerate(exps):
                new[slots[i]] = e
            terms[tuple(new)] = coeff
        return MultiPoly._raw(nvars, terms) if not self.allow_negative else LaurentPoly._raw(nvars, terms)

    def evaluate(self, values: Sequence[complex]) -> complex:
        total = 0j
        for exps, coeff in self._terms.items():
            term = complex(coeff)
            for v, e in zip(values, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    # --- Текст ----------------------------------------------------------------
    def canonical_text(self, names: Optional[Sequence[str]] = None) -> str:
        """`coeff * x1^a1*x2^a2 + ...` in grlex order, highest term first; '0' for zero."""
        if self.is_zero:
            return '0'
        names = names or [f'x{i + 1}' for i in range(self.nvars)]
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = [names[i] if e == 1 else f'{names[i]}^{e}' for i, e in enumerate(exps) if e]
            parts.append(f'{coeff} * ' + '*'.join(factors) if factors else str(coeff))
        return ' + '.join(parts)

    def __str__(self):
        return self.canonical_text()

    def __repr__(self):
        return f'{type(self).__name__}({self.nvars}, {self.canonical_text()!r})'


class LaurentPoly(MultiPoly):
    """MultiPoly that also admits negative exponents (used for z_i = e^{iax_i})."""

    allow_negative = True


# --- Модульные функции -----------------------------------------------------------

def derive(p: MultiPoly, i: int) -> MultiPoly:
    return p.derive(i)


def act_permutation(p: MultiPoly, sigma: Sequence[int]) -> MultiPoly:
    return p.act_permutation(sigma)


def divide_linear(p: MultiPoly, i: int, j: int) -> Tuple[MultiPoly, MultiPoly]:
    return p.divide_linear(i, j)


def divided_difference(p: MultiPoly, i: int, j: int) -> MultiPoly:
    return p.divided_difference(i, j)


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p.exact_divide(q)


def vandermonde(nvars: int, slots: Optional[Sequence[int]] = None) -> MultiPoly:
    """Δ = Π_{a<b}(x_{s_a} − x_{s_b}) over the given slots (all variables by default)."""
    slots = list(range(nvars)) if slots is None else list(slots)
    result = MultiPoly.one(nvars)
    for a, b in combinations(slots, 2):
        result = result * (MultiPoly.variable(nvars, a) - MultiPoly.variable(nvars, b))
    return result


def divide_by_vandermonde(p: MultiPoly, slots: Optional[Sequence[int]] = None, power: int = 1) -> MultiPoly:
    """p/Δ^power by successive divisions by the linear factors; DivisibilityError if not exact."""
    slots = list(range(p.nvars)) if slots is None else list(slots)
    for _ in range(power):
        for a, b in combinations(slots, 2):
            p, remainder = p.divide_linear(a, b)
            if not remainder.is_zero:
                raise DivisibilityError(f'not divisible by x{a + 1} - x{b + 1}')
    return p


def linear_multiplicity(p: MultiPoly, i: int, j: int, limit: int = GUARD_SETTINGS['max_degree']) -> int:
    """Largest k with (x_i − x_j)^k dividing p (limit for p = 0)."""
    count = 0
    while count < limit and not p.is_zero:
        quotient, remainder = p.divide_linear(i, j)
        if not remainder.is_zero:
            break
        p = quotient
        count += 1
    return count if not p.is_zero else limit


Polynomial = Union[MultiPoly, LaurentPoly]
