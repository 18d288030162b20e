"""Complex numbers in log-magnitude/phase form.

Quantities such as e^{sT^2 + iscT} overflow doubles long before the
asymptotic regime is reached; carrying (ln|z|, arg z) keeps them exact in
structure and composable by multiplication.
"""

import math
from dataclasses import dataclass
from typing import Union

from tools.errors import DomainError, RepresentationOverflowError

TWO_PI = 2.0 * math.pi

# Largest log-magnitude that still converts to a finite double
MAX_LOG_FLOAT = math.log(2.0 ** 1023 * (2.0 - 2.0 ** -52))


def normalize_arg(theta: float) -> float:
    """Reduce an angle to (-pi, pi] with an exact IEEE remainder"""
    reduced = math.remainder(theta, TWO_PI)
    if reduced <= -math.pi:
        reduced += TWO_PI
    return reduced


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"ComplexValue components must be finite, got ({self.re}, {self.im})")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexValue":
        return cls(float(z.real), float(z.imag))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


@dataclass(frozen=True)
class LogComplex:
    """z = exp(log_mag + i*arg); ``is_zero`` marks the exact zero"""

    log_mag: float
    arg: float = 0.0
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            object.__setattr__(self, "log_mag", -math.inf)
            object.__setattr__(self, "arg", 0.0)
            return
        if not (math.isfinite(self.log_mag) and math.isfinite(self.arg)):
            raise DomainError(
                f"LogComplex needs finite log_mag and arg, got ({self.log_mag}, {self.arg}); use ZERO for 0"
            )
        object.__setattr__(self, "arg", normalize_arg(self.arg))

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        return lc_mul(self, other)

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        return lc_div(self, other)

    def to_complex(self) -> complex:
        return lc_to_complex(self).to_complex()


ZERO = LogComplex(0.0, 0.0, is_zero=True)
ONE = LogComplex(0.0, 0.0)


def lc_from_complex(z: Union[ComplexValue, complex, float]) -> LogComplex:
    """Convert an ordinary complex number to log-polar form"""
    if not isinstance(z, ComplexValue):
        z = ComplexValue.from_complex(complex(z))
    if z.re == 0.0 and z.im == 0.0:
        return ZERO
    return LogComplex(math.log(math.hypot(z.re, z.im)), math.atan2(z.im, z.re))


def lc_from_real(x: float) -> LogComplex:
    """Real number to log-polar form (arg is 0 or pi)"""
    if x == 0.0:
        return ZERO
    return LogComplex(math.log(abs(x)), 0.0 if x > 0 else math.pi)


def lc_to_complex(w: LogComplex) -> ComplexValue:
    if w.is_zero:
        return ComplexValue(0.0, 0.0)
    if w.log_mag > MAX_LOG_FLOAT:
        raise RepresentationOverflowError(
            f"|z| = e^{w.log_mag:.6g} exceeds the double range"
        )
    magnitude = math.exp(w.log_mag)
    return ComplexValue(magnitude * math.cos(w.arg), magnitude * math.sin(w.arg))


def lc_mul(a: LogComplex, b: LogComplex) -> LogComplex:
    if a.is_zero or b.is_zero:
        return ZERO
    return LogComplex(a.log_mag + b.log_mag, a.arg + b.arg)


def lc_div(a: LogComplex, b: LogComplex) -> LogComplex:
    if b.is_zero:
        raise DomainError("division by LogComplex ZERO")
    if a.is_zero:
        return ZERO
    return LogComplex(a.log_mag - b.log_mag, a.arg - b.arg)


def lc_exp_of(z: Union[ComplexValue, complex]) -> LogComplex:
    """e^z in log form: log_mag = Re z, arg = Im z reduced to (-pi, pi]"""
    if isinstance(z, ComplexValue):
        return LogComplex(z.re, z.im)
    return LogComplex(float(z.real), float(z.imag))


def lc_rel_err(a: LogComplex, b: LogComplex) -> float:
    """|a/b - 1| evaluated from the log-scale quotient"""
    if b.is_zero:
        raise DomainError("relative error undefined for reference b = ZERO")
    if a.is_zero:
        return 1.0
    d = a.log_mag - b.log_mag
    phi = normalize_arg(a.arg - b.arg)
    if d > MAX_LOG_FLOAT:
        return math.inf
    # e^{d+i*phi} - 1 without cancellation when the quotient is close to 1
    half_sin = math.sin(0.5 * phi)
    re = math.expm1(d) * math.cos(phi) - 2.0 * half_sin * half_sin
    im = math.exp(d) * math.sin(phi)
    return math.hypot(re, im)


def lc_abs_log(w: LogComplex) -> float:
    """ln|w|; -inf for ZERO"""
    return w.log_mag
