"""Closed forms and leading-order asymptotics of I, I1, J1 and J.

    I(s)  ~ i/(sc)
    I1(s) ~ -2i/(s³c³)
    J1(s) ~ 1/(s(2T+ic))
    J(s)  ~ e^{sT²+iscT}/(s(2T+ic))

Only the leading terms are returned; their O(1/s) corrections are measured
by the verification harness.
"""

import math
from dataclasses import dataclass

from tools.errors import DomainError
from tools.logcomplex import (
    LogComplex,
    lc_exp_of,
    lc_from_complex,
    lc_mul,
    lc_to_complex,
)
from tools.special_functions import gaussian_cos_integral, gaussian_sin_integral

LEADING_ORDER = 1.0


@dataclass(frozen=True)
class AsymptoticValue:
    value: LogComplex
    claimed_rel_order: float = LEADING_ORDER


def _positive(**params: float) -> None:
    for name, value in params.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} > 0 required, got {name} = {value}")


def asym_I(c: float, s: float) -> AsymptoticValue:
    """i/(sc)"""
    _positive(c=c, s=s)
    return AsymptoticValue(LogComplex(-math.log(s * c), 0.5 * math.pi))


def asym_I1(c: float, s: float) -> AsymptoticValue:
    """-2i/(s³c³)"""
    _positive(c=c, s=s)
    return AsymptoticValue(LogComplex(math.log(2.0) - 3.0 * math.log(s * c), -0.5 * math.pi))


def asym_J1(c: float, T: float, s: float) -> AsymptoticValue:
    """1/(s(2T+ic))"""
    _positive(c=c, T=T, s=s)
    denominator = complex(2.0 * T, c)
    reciprocal = lc_from_complex(1.0 / denominator)
    return AsymptoticValue(LogComplex(reciprocal.log_mag - math.log(s), reciprocal.arg))


def asym_J(c: float, T: float, s: float) -> AsymptoticValue:
    """e^{sT²+iscT}/(s(2T+ic)), assembled in log form"""
    _positive(c=c, T=T, s=s)
    prefactor = lc_exp_of(complex(s * T * T, s * c * T))
    return AsymptoticValue(lc_mul(prefactor, asym_J1(c, T, s).value))


def closed_I_infinite(c: float, s: float) -> LogComplex:
    """
    Exact I(s) at T = inf from the Gaussian cosine/sine integrals with
    a = s and y = cs.
    """
    _positive(c=c, s=s)
    y = c * s
    re = gaussian_cos_integral(s, y)
    im = gaussian_sin_integral(s, y)
    return lc_from_complex(complex(re, im))


def _second_difference_in_c(evaluate, c: float, s: float, step: float) -> complex:
    if not 0 < step < c:
        raise DomainError(f"finite-difference step must satisfy 0 < step < c, got {step}")
    upper = evaluate(c + step, s)
    centre = evaluate(c, s)
    lower = evaluate(c - step, s)
    return (upper - 2.0 * centre + lower) / (step * step)


def moment_from_closed_form(c: float, s: float, step: float = 1e-4) -> LogComplex:
    """s^{-2} (-i d/dc)² I(s) at T = inf, by a central second difference"""
    _positive(c=c, s=s)

    def closed(cc: float, ss: float) -> complex:
        return lc_to_complex(closed_I_infinite(cc, ss)).to_complex()

    second = _second_difference_in_c(closed, c, s, step)
    return lc_from_complex(-second / (s * s))


def differentiated_asym_I(c: float, s: float, step: float = 1e-4) -> LogComplex:
    """s^{-2} (-i d/dc)² applied to i/(sc), by a central second difference"""
    _positive(c=c, s=s)

    def leading(cc: float, ss: float) -> complex:
        return 1j / (ss * cc)

    second = _second_difference_in_c(leading, c, s, step)
    return lc_from_complex(-second / (s * s))
