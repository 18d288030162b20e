"""Tail estimates and the epsilon splitting of J1.

With ε = s^{-(1/2+δ)}, δ ∈ (0, 1/2), one has sε → ∞ while sε² → 0, and

    J1 = J2 + ∫_ε^T e^{-sy(2T+ic-y)} dy,   |∫_ε^T ...| ≤ (T-ε) e^{-sε(2T-ε)}
    J2 = ∫₀^ε e^{-sy(2T+ic-y)} dy = J3 [1 + o(1)]
    J3 = ∫₀^ε e^{-sy(2T+ic)} dy = (1 - e^{-sε(2T+ic)}) / (s(2T+ic))
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from config.settings import load_config
from tools.errors import BoundViolation, DomainError, OutOfRegimeError, PreconditionError
from tools.logcomplex import LogComplex, lc_from_complex, lc_to_complex
from tools.quadrature import (
    Family,
    IntegralSpec,
    check_rel_tol,
    integrate_I_window,
    integrate_J1,
    integrate_J1_window,
)

logger = logging.getLogger(__name__)

# Load configuration
config = load_config()


class TailBound(NamedTuple):
    lhs: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.bound


def tail_test(c: float, s: float, eps: float, T: float,
              rel_tol: Optional[float] = None) -> TailBound:
    """
    |∫_ε^T e^{-sx²} e^{icsx} dx| against (T-ε) e^{-sε²}.

    Raises:
        BoundViolation: when the oracle value exceeds the bound
    """
    if not (c > 0 and s > 0):
        raise DomainError(f"c > 0 and s > 0 required, got c = {c}, s = {s}")
    if not (0 < eps < T):
        raise PreconditionError(f"tail test requires 0 < eps < T, got eps = {eps}, T = {T}")

    result = integrate_I_window(c, s, eps, T, rel_tol)
    lhs = abs(lc_to_complex(result.value))
    bound = (T - eps) * math.exp(-s * eps * eps)
    outcome = TailBound(lhs, bound)

    if not outcome.holds:
        raise BoundViolation(
            f"tail |∫_{eps:g}^{T:g}| = {lhs:.3e} exceeds (T-eps)e^(-s eps^2) = {bound:.3e} at s = {s:g}",
            lhs=lhs,
            bound=bound,
        )
    return outcome


@dataclass(frozen=True)
class EpsilonSplit:
    s: float
    delta: float
    epsilon: float
    J1: LogComplex
    J2: LogComplex
    J3: LogComplex
    tail: LogComplex
    remainder_bound: float
    closure: float
    closure_tolerance: float

    @property
    def s_eps(self) -> float:
        return self.s * self.epsilon

    @property
    def s_eps2(self) -> float:
        return self.s * self.epsilon * self.epsilon

    @property
    def remainder(self) -> float:
        """|J1 - J2|, measured as the directly integrated piece over [ε, T]"""
        return abs(lc_to_complex(self.tail))

    @property
    def ratio_deviation(self) -> float:
        """|J2/J3 - 1|"""
        j2 = lc_to_complex(self.J2).to_complex()
        j3 = lc_to_complex(self.J3).to_complex()
        return abs(j2 / j3 - 1.0)

    @property
    def o1_envelope(self) -> float:
        """e^{sε²} - 1, the bound on e^{sy²} - 1 over [0, ε]"""
        return math.expm1(self.s_eps2)


def splitting_epsilon(s: float, delta: float) -> float:
    return s ** -(0.5 + delta)


def epsilon_split(c: float, T: float, s: float, delta: Optional[float] = None,
                  rel_tol: Optional[float] = None) -> EpsilonSplit:
    """
    Split J1 at ε = s^{-(1/2+δ)} and evaluate every piece.

    Args:
        c, T, s: problem parameters, all positive
        delta: exponent offset in (0, 0.5), default from config (0.1)
        rel_tol: oracle tolerance

    Returns:
        EpsilonSplit with J1 (full oracle), J2 and the tail over [ε, T]
        (oracle), J3 (closed form) and the remainder bound
    """
    delta = config["default_delta"] if delta is None else delta
    if not (0 < delta < 0.5):
        raise PreconditionError(f"delta must lie in (0, 0.5), got {delta}")
    rel_tol = check_rel_tol(rel_tol)
    spec = IntegralSpec(Family.J1_REDUCED, c, T, s)

    epsilon = splitting_epsilon(s, delta)
    if epsilon >= T:
        raise OutOfRegimeError(
            f"epsilon = s^-(0.5+delta) = {epsilon:.6g} >= T = {T:g}; s = {s:g} is too small to split"
        )

    full = integrate_J1(spec, rel_tol)
    head = integrate_J1_window(c, T, s, 0.0, epsilon, rel_tol)
    tail = integrate_J1_window(c, T, s, epsilon, T, rel_tol)

    alpha = complex(2.0 * T, c)
    j3 = (1.0 - cmath.exp(-s * epsilon * alpha)) / (s * alpha)
    remainder_bound = (T - epsilon) * math.exp(-s * epsilon * (2.0 * T - epsilon))

    pieces = lc_to_complex(head.value).to_complex() + lc_to_complex(tail.value).to_complex()
    closure = abs(lc_to_complex(full.value).to_complex() - pieces)
    closure_tolerance = config["epsilon_slack"] * (
        full.abs_err_estimate + head.abs_err_estimate + tail.abs_err_estimate
    ) + 1e-15 * abs(pieces)

    logger.debug("epsilon split s=%g eps=%.6g s*eps=%.4g s*eps^2=%.4g", s, epsilon, s * epsilon, s * epsilon ** 2)

    return EpsilonSplit(
        s=s,
        delta=delta,
        epsilon=epsilon,
        J1=full.value,
        J2=head.value,
        J3=lc_from_complex(j3),
        tail=tail.value,
        remainder_bound=remainder_bound,
        closure=closure,
        closure_tolerance=closure_tolerance,
    )
