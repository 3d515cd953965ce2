"""
Special functions: Weierstrass ℘ on rectangular lattices and the Gamma function.
"""

import cmath
import logging
import math

import numpy as np
import scipy.special

from config.settings import GUARD_SETTINGS, SPECIAL_SETTINGS
from model.errors import ConfigError, PoleError

# logger for this module
logger = logging.getLogger(__name__)


def _check_periods(omega1: float, omega2: complex):
    if not omega1 > 0:
        raise ConfigError(f'omega1 must be positive, got {omega1}')
    if abs(complex(omega2).real) > 0 or not complex(omega2).imag > 0:
        raise ConfigError(f'omega2 must be purely imaginary with -i*omega2 > 0, got {omega2}')


def reduce_to_fundamental_domain(z: complex, omega1: float, omega2: complex) -> complex:
    """Shifts z by lattice vectors 2(nω₁ + mω₂) into the cell centred at the origin."""
    tau = complex(omega2).imag
    z = complex(z)
    n = round(z.real / (2 * omega1))
    m = round(z.imag / (2 * tau))
    return complex(z.real - 2 * n * omega1, z.imag - 2 * m * tau)


def _guard_lattice(z: complex, omega1: float, omega2: complex, pole_eps: float):
    tau = complex(omega2).imag
    nearest = min(abs(z - complex(2 * n * omega1, 2 * k * tau))
                  for n in (-1, 0, 1) for k in (-1, 0, 1))
    if nearest < pole_eps:
        raise PoleError(f'z={z} lies within {pole_eps} of the period lattice')


def _row_setup(omega1: float, omega2: complex):
    """
    Picks the shorter half-period as the direction summed in closed form;
    rows along the longer one then decay at least like exp(-2π|m|).
    """
    if omega1 <= abs(omega2):
        return omega1, omega2
    return omega2, omega1


def _csc2(w: complex) -> complex:
    s = cmath.sin(w)
    return 1.0 / (s * s)


def _rows(z: complex, omega1: float, omega2: complex, derivative: bool, rtol: float, max_rows: int):
    short, long_ = _row_setup(omega1, omega2)
    c = math.pi / (2 * short)
    step = 2 * c * long_
    decay = abs(step.imag)  # |Im| gained per row

    def term(w):
        if derivative:
            return -2 * c * _csc2(w) * cmath.cos(w) / cmath.sin(w)
        return _csc2(w)

    total = term(c * z)
    if not derivative:
        total -= 1.0 / 3.0
    base_im = abs((c * z).imag)
    rows_used = 0
    for m in range(1, max_rows + 1):
        contribution = term(c * z - m * step) + term(c * z + m * step)
        if not derivative:
            contribution -= 2 * _csc2(m * step)
        total += contribution
        rows_used = m
        # |csc²(w)| <= 4e^{-2|Im w|}/(1-e^{-2|Im w|})², geometric in m from here on
        q = math.exp(-2 * decay)
        lead = math.exp(-2 * ((m + 1) * decay - base_im))
        tail = 12 * lead / ((1 - lead) ** 2 * (1 - q))
        if tail <= rtol * max(abs(total), 1e-300):
            break
    logger.debug('weierstrass rows used: %d (derivative=%s)', rows_used, derivative)
    scale = c * c
    return scale * total


def weierstrass_p(z: complex, omega1: float, omega2: complex, *,
                  pole_eps: float = GUARD_SETTINGS['pole_eps'],
                  rtol: float = SPECIAL_SETTINGS['wp_tail_rtol'],
                  max_rows: int = SPECIAL_SETTINGS['wp_max_rows']) -> complex:
    """
    ℘(z; ω₁, ω₂) for the rectangular lattice 2(nω₁ + mω₂).

    The lattice sum 1/z² + Σ'[1/(z−w)² − 1/w²] is taken row by row: each row along the
    shorter period is summed exactly (Σ_n 1/(u−nπ)² = csc²u), and rows are added until the
    exponential tail bound drops below `rtol` relative to the partial sum.
    """
    _check_periods(omega1, omega2)
    zr = reduce_to_fundamental_domain(z, omega1, omega2)
    _guard_lattice(zr, omega1, omega2, pole_eps)
    return _rows(zr, omega1, complex(omega2), False, rtol, max_rows)


def weierstrass_p_prime(z: complex, omega1: float, omega2: complex, *,
                        pole_eps: float = GUARD_SETTINGS['pole_eps'],
                        rtol: float = SPECIAL_SETTINGS['wp_tail_rtol'],
                        max_rows: int = SPECIAL_SETTINGS['wp_max_rows']) -> complex:
    """℘′ by termwise differentiation of the same row series (used for forces only)."""
    _check_periods(omega1, omega2)
    zr = reduce_to_fundamental_domain(z, omega1, omega2)
    _guard_lattice(zr, omega1, omega2, pole_eps)
    return _rows(zr, omega1, complex(omega2), True, rtol, max_rows)


def weierstrass_p_direct(z: complex, omega1: float, omega2: complex, K: int) -> complex:
    """Brute-force truncated lattice sum over |n|, |m| <= K (slow oracle, O(1/K) accurate)."""
    n = np.arange(-K, K + 1)
    w = (2 * n[:, None] * omega1 + 2 * n[None, :] * complex(omega2)).ravel()
    w = w[w != 0]
    z = complex(z)
    return complex(1 / z ** 2 + np.sum(1 / (z - w) ** 2 - 1 / w ** 2))


def trig_lattice_partial_sum(x: float, K: int) -> float:
    """Σ_{n=−K..K} 1/(x − 2πn)², the periodic-image sum behind the type III potential."""
    n = np.arange(-K, K + 1, dtype=float)
    return float(np.sum(1.0 / (x - 2 * math.pi * n) ** 2))


def check_gamma_pole(z: complex, pole_eps: float = GUARD_SETTINGS['pole_eps']):
    """Rejects arguments within pole_eps of a nonpositive integer."""
    z = complex(z)
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) < pole_eps:
        raise PoleError(f'Gamma has a pole at {nearest}')


def gamma_fn(z: complex, *, pole_eps: float = GUARD_SETTINGS['pole_eps']) -> complex:
    """Γ(z) for complex z; poles at the nonpositive integers are rejected."""
    check_gamma_pole(z, pole_eps)
    return complex(scipy.special.gamma(complex(z)))


def log_gamma(z: complex, *, pole_eps: float = GUARD_SETTINGS['pole_eps']) -> complex:
    """Principal branch of log Γ(z) (stable for large |Im z|)."""
    check_gamma_pole(z, pole_eps)
    return complex(scipy.special.loggamma(complex(z)))
