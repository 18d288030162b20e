"""Adaptive Gauss-Kronrod oracle for the complex-phase integrands.

Every integrand handed to the engine is bounded on its interval: I and I1
decay like e^{-sx^2}, J1 is the reduced form e^{-sy(2T+ic-y)} whose modulus
never exceeds 1, and direct J is only accepted while e^{sT^2} is representable.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from config.settings import load_config
from tools.errors import (
    DomainError,
    OverflowGuardError,
    PreconditionError,
    QuadratureBudgetError,
)
from tools.logcomplex import LogComplex, lc_exp_of, lc_from_complex, lc_mul, lc_to_complex

logger = logging.getLogger(__name__)

# Load configuration
config = load_config()

# Kronrod 15-point abscissae (positive half, descending) and weights;
# the 7-point Gauss rule uses the odd-indexed abscissae and the centre.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout on [-1, 1]
NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]

EVALS_PER_PANEL = 15
MIN_REL_TOL = 1e-14
MAX_REL_TOL = 1e-2


class Family(str, Enum):
    I_FINITE = "I_FINITE"
    I_INFINITE = "I_INFINITE"
    J_DIRECT = "J_DIRECT"
    J1_REDUCED = "J1_REDUCED"
    I1_MOMENT = "I1_MOMENT"


@dataclass(frozen=True)
class IntegralSpec:
    family: Family
    c: float
    T: float
    s: float

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"c > 0 required, got c = {self.c}")
        if not (self.s > 0 and math.isfinite(self.s)):
            raise DomainError(f"s > 0 required, got s = {self.s}")
        if not self.T > 0:
            raise DomainError(f"T > 0 required, got T = {self.T}")
        if family is Family.I_INFINITE and not math.isinf(self.T):
            raise DomainError(f"family I_INFINITE requires T = inf, got T = {self.T}")
        if family not in (Family.I_INFINITE, Family.I1_MOMENT) and math.isinf(self.T):
            raise DomainError(f"family {family.value} requires finite T")
        if family is Family.J_DIRECT:
            exponent = self.s * self.T * self.T
            guard = config["overflow_guard"]
            if exponent > guard:
                raise OverflowGuardError(
                    f"direct J requires s*T^2 <= {guard:g} (got {exponent:.6g}); use the reduced J1 path",
                    exponent=exponent,
                    guard=guard,
                )


@dataclass(frozen=True)
class QuadratureResult:
    value: LogComplex
    abs_err_estimate: float
    evaluations: int
    panels: int = 0
    max_abs_integrand: float = 0.0

    def as_complex(self) -> complex:
        return lc_to_complex(self.value).to_complex()


def _part_error(fx: np.ndarray, kronrod: np.ndarray, gauss: np.ndarray, half: np.ndarray) -> np.ndarray:
    """QUADPACK error estimate for one real-valued part"""
    mean = 0.5 * kronrod
    resasc = (KRONROD_WEIGHTS * np.abs(fx - mean[:, None])).sum(axis=1) * np.abs(half)
    err = np.abs((kronrod - gauss) * half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    return np.where((resasc != 0.0) & (err != 0.0), scaled, err)


def _gk15_panels(
    integrand: Callable[[np.ndarray], np.ndarray],
    left: np.ndarray,
    right: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, float]:
    """Apply the (7, 15) pair to every panel at once"""
    centre = 0.5 * (left + right)
    half = 0.5 * (right - left)
    x = centre[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(integrand(x), dtype=complex)

    kronrod = fx @ KRONROD_WEIGHTS
    gauss = fx @ GAUSS_WEIGHTS
    values = kronrod * half

    err_re = _part_error(fx.real, kronrod.real, gauss.real, half)
    err_im = _part_error(fx.imag, kronrod.imag, gauss.imag, half)
    errors = np.hypot(err_re, err_im)

    return values, errors, float(np.max(np.abs(fx))) if fx.size else 0.0


def _fsum_complex(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def adaptive_integrate(
    integrand: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    rel_tol: float,
    panel_length: float,
    budget: Optional[int] = None,
) -> QuadratureResult:
    """
    Globally adaptive Gauss-Kronrod integration of a complex integrand.

    The interval is first cut into panels no longer than panel_length. Each
    round bisects the largest-error panels that together carry at least half
    of the total error estimate, so the refinement sequence does not depend
    on the tolerance; the loop stops once the summed estimate is within
    rel_tol of the summed value.

    Args:
        integrand: vectorised function of a float array returning complex values
        lo, hi: integration limits, lo < hi
        rel_tol: requested relative accuracy
        panel_length: maximum initial panel length
        budget: maximum number of integrand evaluations

    Returns:
        QuadratureResult with the value in log form
    """
    budget = config["evaluation_budget"] if budget is None else budget
    n_initial = max(1, int(math.ceil((hi - lo) / panel_length)))
    if n_initial * EVALS_PER_PANEL > budget:
        raise QuadratureBudgetError(
            f"initial partition needs {n_initial * EVALS_PER_PANEL} evaluations, budget is {budget}",
            evaluations=0,
        )

    edges = np.linspace(lo, hi, n_initial + 1)
    left, right = edges[:-1], edges[1:]
    values, errors, max_abs = _gk15_panels(integrand, left, right)
    evaluations = n_initial * EVALS_PER_PANEL
    rounds = 0

    while True:
        total = _fsum_complex(values)
        err_total = math.fsum(errors.tolist())
        tolerance = rel_tol * abs(total)
        if err_total <= tolerance:
            break

        order = np.argsort(-errors, kind="stable")
        cumulative = np.cumsum(errors[order])
        count = int(np.searchsorted(cumulative, 0.5 * err_total)) + 1
        chosen = np.sort(order[:count])

        if evaluations + 2 * EVALS_PER_PANEL * count > budget:
            raise QuadratureBudgetError(
                f"evaluation budget {budget} exhausted on [{lo:.6g}, {hi:.6g}] "
                f"with error estimate {err_total:.3e} > tolerance {tolerance:.3e}",
                evaluations=evaluations,
                abs_err=err_total,
                tolerance=tolerance,
            )

        mid = 0.5 * (left[chosen] + right[chosen])
        if np.any((mid <= left[chosen]) | (mid >= right[chosen])):
            raise QuadratureBudgetError(
                f"panels on [{lo:.6g}, {hi:.6g}] can no longer be bisected "
                f"(error estimate {err_total:.3e} > tolerance {tolerance:.3e})",
                evaluations=evaluations,
                abs_err=err_total,
                tolerance=tolerance,
            )

        new_left = np.concatenate([left[chosen], mid])
        new_right = np.concatenate([mid, right[chosen]])
        new_values, new_errors, new_max = _gk15_panels(integrand, new_left, new_right)
        evaluations += 2 * EVALS_PER_PANEL * count
        max_abs = max(max_abs, new_max)

        keep = np.ones(left.size, dtype=bool)
        keep[chosen] = False
        left = np.concatenate([left[keep], new_left])
        right = np.concatenate([right[keep], new_right])
        values = np.concatenate([values[keep], new_values])
        errors = np.concatenate([errors[keep], new_errors])

        by_position = np.argsort(left, kind="stable")
        left, right = left[by_position], right[by_position]
        values, errors = values[by_position], errors[by_position]
        rounds += 1

    logger.debug(
        "integrated [%.6g, %.6g]: %d panels, %d evaluations, %d rounds, err %.3e",
        lo, hi, left.size, evaluations, rounds, err_total,
    )

    return QuadratureResult(
        value=lc_from_complex(total),
        abs_err_estimate=err_total,
        evaluations=evaluations,
        panels=int(left.size),
        max_abs_integrand=max_abs,
    )


def check_rel_tol(rel_tol: Optional[float]) -> float:
    """Resolve the default tolerance and enforce its open range"""
    if rel_tol is None:
        rel_tol = config["default_rel_tol"]
    if not (MIN_REL_TOL < rel_tol < MAX_REL_TOL):
        raise PreconditionError(
            f"rel_tol must lie in ({MIN_REL_TOL:g}, {MAX_REL_TOL:g}), got {rel_tol}"
        )
    return rel_tol


def oscillation_panel_length(c: float, s: float) -> float:
    """Initial panel length: about two periods of e^{icsx}"""
    return config["panel_half_periods"] * math.pi / (s * c)


def truncation_point(s: float) -> float:
    """x_max with e^{-s x_max^2} = e^{-W}"""
    return math.sqrt(config["tail_w"] / s)


def gaussian_upper(lo: float, hi: float, s: float) -> float:
    """
    Effective upper limit for e^{-sx²} integrands on [lo, hi].

    s(x² - lo²) >= s(x - lo)², so past lo + sqrt(W/s) the integrand is
    below e^{-W} times its value at lo.
    """
    return min(hi, lo + truncation_point(s))


def j1_upper(lo: float, hi: float, T: float, s: float) -> float:
    """
    Effective upper limit for the J1 integrand on [lo, hi] inside [0, T].

    For lo <= y <= T the exponent drops by s(y - lo)(2T - y - lo) >= s(y - lo)(T - lo),
    so past lo + W/(s(T - lo)) the modulus is below e^{-W} times its value at lo.
    """
    return min(hi, lo + config["tail_w"] / (s * (T - lo)))


def _require(spec: IntegralSpec, *families: Family) -> None:
    if spec.family not in families:
        names = ", ".join(f.value for f in families)
        raise PreconditionError(f"expected family in {{{names}}}, got {spec.family.value}")


def _i_integrand(c: float, s: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: np.exp(-s * x * x + 1j * (c * s) * x)


def _i1_integrand(c: float, s: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: x * x * np.exp(-s * x * x + 1j * (c * s) * x)


def _j_integrand(c: float, s: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: np.exp(s * x * x + 1j * (c * s) * x)


def _j1_integrand(c: float, T: float, s: float) -> Callable[[np.ndarray], np.ndarray]:
    # -sy(2T + ic - y) = -sy(2T - y) - i*s*c*y
    return lambda y: np.exp(-s * y * (2.0 * T - y) - 1j * (c * s) * y)


def integrate_I(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """
    I(s) = ∫₀ᵀ e^{-s(x² - icx)} dx. The interval ends at min(T, sqrt(W/s)),
    beyond which the integrand is below e^{-W}; this holds for finite T too.
    """
    _require(spec, Family.I_FINITE, Family.I_INFINITE)
    rel_tol = check_rel_tol(rel_tol)
    upper = gaussian_upper(0.0, spec.T, spec.s)
    return adaptive_integrate(
        _i_integrand(spec.c, spec.s), 0.0, upper, rel_tol,
        oscillation_panel_length(spec.c, spec.s),
    )


def integrate_I1(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """I1(s) = ∫₀ᵀ e^{-sx²} e^{icsx} x² dx"""
    _require(spec, Family.I1_MOMENT)
    rel_tol = check_rel_tol(rel_tol)
    upper = gaussian_upper(0.0, spec.T, spec.s)
    return adaptive_integrate(
        _i1_integrand(spec.c, spec.s), 0.0, upper, rel_tol,
        oscillation_panel_length(spec.c, spec.s),
    )


def integrate_J1(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """
    J1(s) = ∫₀ᵀ e^{-sy(2T+ic-y)} dy. The modulus is at most e^{-syT}, so the
    interval ends at min(T, W/(sT)).
    """
    _require(spec, Family.J1_REDUCED)
    rel_tol = check_rel_tol(rel_tol)
    return adaptive_integrate(
        _j1_integrand(spec.c, spec.T, spec.s), 0.0, j1_upper(0.0, spec.T, spec.T, spec.s), rel_tol,
        oscillation_panel_length(spec.c, spec.s),
    )


def integrate_J_direct(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """J(s) = ∫₀ᵀ e^{s(x² + icx)} dx, only while s*T^2 <= overflow_guard"""
    _require(spec, Family.J_DIRECT)
    rel_tol = check_rel_tol(rel_tol)
    return adaptive_integrate(
        _j_integrand(spec.c, spec.s), 0.0, spec.T, rel_tol,
        oscillation_panel_length(spec.c, spec.s),
    )


def integrate_J_completed_square(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """
    J(s) = e^{sc²/4} ∫₀ᵀ e^{s(x + ic/2)²} dx.

    The integrand has modulus e^{s(x² - c²/4)}; the prefactor is applied
    in log form so only the integrand itself must stay representable.
    """
    _require(spec, Family.J_DIRECT)
    rel_tol = check_rel_tol(rel_tol)
    c, s = spec.c, spec.s
    quarter = 0.25 * c * c
    result = adaptive_integrate(
        lambda x: np.exp(s * (x * x - quarter) + 1j * (s * c) * x),
        0.0, spec.T, rel_tol,
        oscillation_panel_length(c, s),
    )
    prefactor = lc_exp_of(complex(s * quarter, 0.0))
    try:
        abs_err = result.abs_err_estimate * math.exp(s * quarter)
    except OverflowError:
        abs_err = math.inf
    return QuadratureResult(
        value=lc_mul(prefactor, result.value),
        abs_err_estimate=abs_err,
        evaluations=result.evaluations,
        panels=result.panels,
        max_abs_integrand=result.max_abs_integrand,
    )


def _check_window(lo: float, hi: float, limit: float) -> None:
    if not (0.0 <= lo < hi <= limit):
        raise PreconditionError(f"window requires 0 <= lo < hi <= {limit:g}, got [{lo}, {hi}]")


def integrate_I_window(c: float, s: float, lo: float, hi: float,
                       rel_tol: Optional[float] = None) -> QuadratureResult:
    """∫_lo^hi e^{-sx²} e^{icsx} dx over a finite window"""
    IntegralSpec(Family.I_FINITE, c, hi, s)
    _check_window(lo, hi, hi)
    rel_tol = check_rel_tol(rel_tol)
    return adaptive_integrate(
        _i_integrand(c, s), lo, gaussian_upper(lo, hi, s), rel_tol, oscillation_panel_length(c, s),
    )


def integrate_J1_window(c: float, T: float, s: float, lo: float, hi: float,
                        rel_tol: Optional[float] = None) -> QuadratureResult:
    """∫_lo^hi e^{-sy(2T+ic-y)} dy for a window inside [0, T]"""
    IntegralSpec(Family.J1_REDUCED, c, T, s)
    _check_window(lo, hi, T)
    rel_tol = check_rel_tol(rel_tol)
    return adaptive_integrate(
        _j1_integrand(c, T, s), lo, j1_upper(lo, hi, T, s), rel_tol, oscillation_panel_length(c, s),
    )


def integrate(spec: IntegralSpec, rel_tol: Optional[float] = None) -> QuadratureResult:
    """Dispatch on the spec family"""
    dispatch = {
        Family.I_FINITE: integrate_I,
        Family.I_INFINITE: integrate_I,
        Family.I1_MOMENT: integrate_I1,
        Family.J1_REDUCED: integrate_J1,
        Family.J_DIRECT: integrate_J_direct,
    }
    return dispatch[spec.family](spec, rel_tol)
