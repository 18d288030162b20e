"""Pochhammer symbols, Kummer's function F(b;c;x), erfi/Dawson and the
Gaussian cosine/sine integrals.

    ∫₀^∞ e^{-ax²} cos(xy) dx = √π/(2√a) · e^{-y²/(4a)}
    ∫₀^∞ e^{-ax²} sin(xy) dx = y/(2a) · e^{-y²/(4a)} · F(1/2; 3/2; y²/(4a))

F is summed directly for small x and by its large-x expansion
F ~ Γ(c)/Γ(b) e^x x^{b-c} Σ (c-b)_k (1-b)_k / (k! x^k) beyond ``x_switch``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config.settings import load_config
from tools.errors import DomainError, SeriesConvergenceError
from tools.logcomplex import LogComplex, ZERO, lc_from_real

logger = logging.getLogger(__name__)

# Load configuration
config = load_config()

SQRT_PI = math.sqrt(math.pi)

# Rybicki step for Dawson's function; discretisation error ~ exp(-(pi/(2h))^2)
_RYBICKI_H = 0.2
_RYBICKI_REACH = 9.0


@dataclass(frozen=True)
class KummerParams:
    b: float
    c: float
    x: float

    def __post_init__(self):
        if self.c <= 0 and float(self.c).is_integer():
            raise DomainError(f"F(b;c;x) needs c not in {{0, -1, -2, ...}}, got c = {self.c}")
        if not math.isfinite(self.x):
            raise DomainError(f"F(b;c;x) needs finite x, got {self.x}")


def pochhammer(b: float, k: int) -> float:
    """Rising factorial (b)_k = b(b+1)...(b+k-1); (b)_0 = 1"""
    if k < 0 or int(k) != k:
        raise DomainError(f"pochhammer needs a nonnegative integer k, got {k}")
    return math.prod(b + j for j in range(int(k)))


def _gamma_sign(x: float) -> float:
    if x > 0:
        return 1.0
    return -1.0 if math.floor(x) % 2 else 1.0


def log_gamma_ratio(c: float, b: float) -> Tuple[float, float]:
    """ln|Γ(c)/Γ(b)| and the sign of the ratio"""
    for name, value in (("c", c), ("b", b)):
        if value <= 0 and float(value).is_integer():
            raise DomainError(f"Γ({name}) has a pole at {name} = {value}")
    return math.lgamma(c) - math.lgamma(b), _gamma_sign(c) * _gamma_sign(b)


def kummer_series(p: KummerParams, rel_tol: float = 1e-16) -> float:
    """
    Sum F(b;c;x) = Σ (b)_k/(c)_k x^k/k! until the next term drops below
    rel_tol times the running sum (and terms are already shrinking).

    Args:
        p: Kummer parameters, x >= 0
        rel_tol: relative stopping threshold, > 0

    Returns:
        F(b;c;x) as a float
    """
    if p.x < 0:
        raise DomainError(f"kummer_series is implemented for x >= 0, got x = {p.x}")
    if rel_tol <= 0:
        raise DomainError(f"kummer_series needs rel_tol > 0, got {rel_tol}")

    terms = [1.0]
    term = 1.0
    running = 1.0
    max_terms = config["series_max_terms"]

    for k in range(max_terms):
        ratio = (p.b + k) / (p.c + k) * p.x / (k + 1)
        term *= ratio
        if term == 0.0:
            break
        terms.append(term)
        running += term
        if not math.isfinite(running):
            raise SeriesConvergenceError(f"Kummer series overflowed at x = {p.x}; use kummer_auto")
        if abs(ratio) < 1.0 and abs(term) < rel_tol * abs(running):
            break
    else:
        raise SeriesConvergenceError(
            f"Kummer series did not converge in {max_terms} terms at x = {p.x}"
        )

    return math.fsum(terms)


def _asymptotic_tail(p: KummerParams, n_terms: Optional[int]) -> float:
    """Σ_k (c-b)_k (1-b)_k / (k! x^k), optimally truncated when n_terms is None"""
    cap = n_terms if n_terms is not None else 500
    terms = [1.0]
    term = 1.0
    for k in range(cap - 1):
        nxt = term * (p.c - p.b + k) * (1.0 - p.b + k) / ((k + 1) * p.x)
        if nxt == 0.0:
            break
        if n_terms is None and (abs(nxt) >= abs(term) or abs(nxt) < 1e-18 * abs(math.fsum(terms))):
            break
        terms.append(nxt)
        term = nxt
    return math.fsum(terms)


def _log_scaled_asymptotic(p: KummerParams, n_terms: Optional[int]) -> LogComplex:
    """e^{-x} F(b;c;x) from the large-x expansion, in log form"""
    if p.x <= 0:
        raise DomainError(f"kummer_asymptotic needs x > 0, got x = {p.x}")
    if n_terms is not None and n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    if p.b <= 0 and float(p.b).is_integer():
        raise DomainError("b is a nonpositive integer: F is a polynomial, use kummer_series")

    log_ratio, sign = log_gamma_ratio(p.c, p.b)
    tail = _asymptotic_tail(p, n_terms)
    if tail == 0.0:
        return ZERO
    if tail < 0:
        sign = -sign
    log_mag = log_ratio + (p.b - p.c) * math.log(p.x) + math.log(abs(tail))
    return LogComplex(log_mag, 0.0 if sign > 0 else math.pi)


def kummer_asymptotic(p: KummerParams, n_terms: Optional[int] = None) -> LogComplex:
    """
    Large-x form Γ(c)/Γ(b) e^x x^{b-c} [1 + O(1/x)] of F(b;c;x).

    Args:
        p: Kummer parameters, x > 0
        n_terms: number of correction-series terms; None stops at the smallest term

    Returns:
        F(b;c;x) in log-magnitude form (arg 0 or pi)
    """
    scaled = _log_scaled_asymptotic(p, n_terms)
    if scaled.is_zero:
        return ZERO
    return LogComplex(scaled.log_mag + p.x, scaled.arg)


def kummer_auto(p: KummerParams) -> LogComplex:
    """Series below x_switch, large-x expansion at and above it"""
    if p.x < 0:
        raise DomainError(f"kummer_auto is implemented for x >= 0, got x = {p.x}")
    if p.x < config["x_switch"]:
        return lc_from_real(kummer_series(p))
    return kummer_asymptotic(p)


def kummer_scaled(p: KummerParams) -> float:
    """e^{-x} F(b;c;x) without forming e^{x}"""
    if p.x < 0:
        raise DomainError(f"kummer_scaled is implemented for x >= 0, got x = {p.x}")
    if p.x < config["x_switch"]:
        return math.exp(-p.x) * kummer_series(p)
    scaled = _log_scaled_asymptotic(p, None)
    if scaled.is_zero:
        return 0.0
    magnitude = math.exp(scaled.log_mag)
    return magnitude if scaled.arg == 0.0 else -magnitude


def _erfi_series(z: float) -> float:
    # 2/√π Σ z^{2k+1} / (k! (2k+1))
    z2 = z * z
    power = z
    terms = [z]
    for k in range(1, config["series_max_terms"]):
        power *= z2 / k
        term = power / (2 * k + 1)
        terms.append(term)
        if term < 1e-17 * terms[0] or term == 0.0:
            break
    return 2.0 / SQRT_PI * math.fsum(terms)


def dawson(z: float) -> float:
    """
    Dawson's function D(z) = e^{-z²} ∫₀^z e^{t²} dt.

    Uses Rybicki's representation D(z) = lim_{h→0} (1/√π) Σ_{n odd} e^{-(z-nh)²}/n,
    with the sum restricted to terms that are not negligible.
    """
    if z < 0:
        return -dawson(-z)
    if z == 0:
        return 0.0
    h = _RYBICKI_H
    lo = math.floor((z - _RYBICKI_REACH) / h)
    hi = math.ceil((z + _RYBICKI_REACH) / h)
    n = np.arange(lo, hi + 1)
    n = n[n % 2 != 0].astype(float)
    terms = np.exp(-(z - n * h) ** 2) / n
    return math.fsum(terms.tolist()) / SQRT_PI


def erfi(z: float) -> float:
    """Imaginary error function erfi(z) = -i erf(iz)"""
    if z < 0:
        return -erfi(-z)
    if z <= 2.0:
        return _erfi_series(z)
    return 2.0 / SQRT_PI * math.exp(z * z) * dawson(z)


def gaussian_cos_integral_lc(a: float, y: float) -> LogComplex:
    """ln of the cosine integral, exact even where the value itself underflows"""
    if a <= 0:
        raise DomainError(f"Gaussian integral needs a > 0, got a = {a}")
    return LogComplex(math.log(SQRT_PI / (2.0 * math.sqrt(a))) - y * y / (4.0 * a), 0.0)


def gaussian_cos_integral(a: float, y: float) -> float:
    """∫₀^∞ e^{-ax²} cos(xy) dx in closed form (underflows to 0.0 gracefully)"""
    return math.exp(gaussian_cos_integral_lc(a, y).log_mag)


def gaussian_sin_integral(a: float, y: float) -> float:
    """
    ∫₀^∞ e^{-ax²} sin(xy) dx = y/(2a) e^{-y²/(4a)} F(1/2; 3/2; y²/(4a)).

    The decaying exponential and the growing Kummer factor are combined
    through kummer_scaled, so neither is formed on its own.
    """
    if a <= 0:
        raise DomainError(f"Gaussian integral needs a > 0, got a = {a}")
    if y == 0:
        return 0.0
    x = y * y / (4.0 * a)
    return y / (2.0 * a) * kummer_scaled(KummerParams(0.5, 1.5, x))
