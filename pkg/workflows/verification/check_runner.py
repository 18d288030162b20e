"""Acceptance suites behind ``app.py check``.

Each suite is a list of check nodes. A node returns one or more
CheckOutcome records; a library error inside a node is recorded as a
failed outcome and appended to the run's ``errors`` list instead of
aborting the remaining nodes.
"""

import logging
import math
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Callable, Dict, List

import numpy as np

from config.settings import load_config
from tools.errors import AsymptoticsError, PreconditionError
from tools.logcomplex import lc_exp_of, lc_from_real, lc_mul, lc_rel_err
from tools.quadrature import (
    Family,
    IntegralSpec,
    adaptive_integrate,
    integrate_I,
    integrate_I1,
    integrate_J1,
    integrate_J_completed_square,
    integrate_J_direct,
    truncation_point,
)
from tools.special_functions import (
    KummerParams,
    SQRT_PI,
    erfi,
    gaussian_cos_integral,
    gaussian_sin_integral,
    kummer_asymptotic,
    kummer_auto,
    kummer_series,
)
from workflows.asymptotics.formulas import (
    asym_I1,
    asym_J,
    asym_J1,
    closed_I_infinite,
    differentiated_asym_I,
    moment_from_closed_form,
)
from workflows.verification.splitting import epsilon_split, tail_test
from workflows.verification.sweep import SweepConfig, fit_order, run_sweep

logger = logging.getLogger(__name__)

# Load configuration
config = load_config()


@dataclass(frozen=True)
class CheckOutcome:
    suite: str
    name: str
    passed: bool
    detail: str


def _grid(lo_exp: int, hi_exp: int) -> tuple:
    return tuple(2.0 ** k for k in range(lo_exp, hi_exp + 1))


def _strictly_decreasing(values: List[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _strictly_increasing(values: List[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------- theorem 1

def check_theorem1_sweeps() -> List[CheckOutcome]:
    outcomes = []
    for c in (0.5, 1.0, 2.0):
        report = run_sweep(SweepConfig(Family.I_INFINITE, c, math.inf, _grid(5, 14)))
        worst = max(row.rel_err * c * c * row.s / 5.0 for row in report.rows)
        outcomes.append(CheckOutcome(
            "theorem1", f"|ratio-1| <= 5/(c^2 s), c={c:g}", worst <= 1.0,
            f"max rel_err / (5/(c^2 s)) = {worst:.3f}",
        ))
        order_ok = abs(report.fitted_order - 1.0) <= 0.1
        outcomes.append(CheckOutcome(
            "theorem1", f"order fit, c={c:g}", order_ok and report.fit_r2 >= 0.98,
            f"fitted_order = {report.fitted_order:.4f}, R^2 = {report.fit_r2:.5f}",
        ))
    return outcomes


def check_theorem1_oracle() -> List[CheckOutcome]:
    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        for s in (32.0, 128.0, 1000.0):
            closed = closed_I_infinite(c, s)
            numeric = integrate_I(IntegralSpec(Family.I_INFINITE, c, math.inf, s)).value
            worst = max(worst, lc_rel_err(numeric, closed))
    return [CheckOutcome(
        "theorem1", "closed form vs quadrature (s <= 1e3)", worst <= 1e-9,
        f"max relative difference = {worst:.3e}",
    )]


# ---------------------------------------------------------------- remark 1

def check_remark1() -> List[CheckOutcome]:
    outcomes = []
    worst = 0.0
    scaled_tails = []
    for s in (50.0, 100.0, 200.0, 400.0):
        finite = integrate_I(IntegralSpec(Family.I_FINITE, 1.0, 1.0, s)).as_complex()
        infinite = closed_I_infinite(1.0, s).to_complex()
        bound = 2.0 * math.exp(-s * 0.25 ** 2) * 10.0
        worst = max(worst, abs(finite - infinite) / bound)

        tail = tail_test(1.0, s, 0.25, 1.0)
        scaled_tails.append(tail.lhs * s)

    outcomes.append(CheckOutcome(
        "remark1", "|I(T=1) - I(inf)| <= 20 e^{-s/16}", worst <= 1.0,
        f"max difference / bound = {worst:.3e}",
    ))
    outcomes.append(CheckOutcome(
        "remark1", "tail lhs*s -> 0", _strictly_decreasing(scaled_tails),
        "lhs*s = " + ", ".join(f"{v:.3e}" for v in scaled_tails),
    ))
    return outcomes


# ---------------------------------------------------------------- eq (9)

def check_eq9_sweep() -> List[CheckOutcome]:
    report = run_sweep(SweepConfig(Family.I1_MOMENT, 1.0, 1.0, _grid(6, 14), rel_tol=1e-8))
    passed = abs(report.fitted_order - 1.0) <= 0.15 and report.fit_r2 >= 0.98
    return [CheckOutcome(
        "eq9", "I1 ratio order fit", passed,
        f"fitted_order = {report.fitted_order:.4f}, R^2 = {report.fit_r2:.5f}",
    )]


def check_eq9_differentiation() -> List[CheckOutcome]:
    c, s = 1.0, 1e4
    closed_dev = lc_rel_err(moment_from_closed_form(c, s), asym_I1(c, s).value)
    leading_dev = lc_rel_err(differentiated_asym_I(c, 1.0), asym_I1(c, 1.0).value)

    numeric = integrate_I1(IntegralSpec(Family.I1_MOMENT, 1.0, math.inf, 1.0)).value
    fd_dev = lc_rel_err(numeric, moment_from_closed_form(1.0, 1.0))

    return [
        CheckOutcome(
            "eq9", "FD of closed form vs -2i/(s^3 c^3) at s=1e4", closed_dev <= 15.0 / (c * c * s),
            f"|ratio-1| = {closed_dev:.3e} (next-order term 12/(c^2 s) = {12.0 / s:.1e})",
        ),
        CheckOutcome(
            "eq9", "FD of i/(sc) equals -2i/(s^3 c^3)", leading_dev <= 1e-6,
            f"|ratio-1| = {leading_dev:.3e}",
        ),
        CheckOutcome(
            "eq9", "quadrature I1 vs FD of closed form (s=1, T=inf)", fd_dev <= 1e-6,
            f"relative difference = {fd_dev:.3e}",
        ),
    ]


# ---------------------------------------------------------------- lemma 1

def check_lemma1_sweeps() -> List[CheckOutcome]:
    outcomes = []
    for c, T in ((1.0, 1.0), (2.0, 0.5), (0.5, 2.0)):
        report = run_sweep(SweepConfig(Family.J1_REDUCED, c, T, _grid(5, 14)))
        passed = abs(report.fitted_order - 1.0) <= 0.15 and report.fit_r2 >= 0.98
        outcomes.append(CheckOutcome(
            "lemma1", f"J1 order fit, c={c:g} T={T:g}", passed,
            f"fitted_order = {report.fitted_order:.4f}, R^2 = {report.fit_r2:.5f}",
        ))
    return outcomes


def check_splitting() -> List[CheckOutcome]:
    slack = config["epsilon_slack"]
    splits = [epsilon_split(1.0, 1.0, s, 0.1) for s in (1e3, 1e4, 1e5, 1e6)]

    remainder_ok = all(sp.remainder <= slack * sp.remainder_bound for sp in splits)
    ratio_ok = all(sp.ratio_deviation <= 2.0 * sp.o1_envelope for sp in splits)
    closure_ok = all(sp.closure <= sp.closure_tolerance for sp in splits)
    regime_ok = (_strictly_increasing([sp.s_eps for sp in splits])
                 and _strictly_decreasing([sp.s_eps2 for sp in splits]))
    vanishing_ok = (_strictly_decreasing([sp.remainder_bound for sp in splits])
                    and _strictly_decreasing([sp.o1_envelope for sp in splits]))

    return [
        CheckOutcome("splitting", "|J1 - J2| <= K (T-eps) e^{-s eps (2T-eps)}", remainder_ok,
                     "remainders = " + ", ".join(f"{sp.remainder:.3e}" for sp in splits)),
        CheckOutcome("splitting", "|J2/J3 - 1| <= 2 (e^{s eps^2} - 1)", ratio_ok,
                     "deviations = " + ", ".join(f"{sp.ratio_deviation:.3e}" for sp in splits)),
        CheckOutcome("splitting", "J1 = J2 + tail within oracle error", closure_ok,
                     "closures = " + ", ".join(f"{sp.closure:.3e}" for sp in splits)),
        CheckOutcome("splitting", "s*eps grows, s*eps^2 shrinks", regime_ok,
                     "s*eps = " + ", ".join(f"{sp.s_eps:.4g}" for sp in splits)),
        CheckOutcome("splitting", "both bounds tend to 0", vanishing_ok,
                     "o(1) envelopes = " + ", ".join(f"{sp.o1_envelope:.3e}" for sp in splits)),
    ]


# ---------------------------------------------------------------- theorem 2

def check_theorem2_identity() -> List[CheckOutcome]:
    guard = 600.0
    worst_reduced = 0.0
    worst_square = 0.0
    points = 0
    for c in (0.5, 1.0, 2.0):
        for T in (0.5, 1.0, 2.0):
            for s in (5.0, 20.0, 100.0):
                if s * T * T > guard:
                    continue
                direct = integrate_J_direct(IntegralSpec(Family.J_DIRECT, c, T, s)).value
                reduced = integrate_J1(IntegralSpec(Family.J1_REDUCED, c, T, s)).value
                rebuilt = lc_mul(lc_exp_of(complex(s * T * T, s * c * T)), reduced)
                square = integrate_J_completed_square(IntegralSpec(Family.J_DIRECT, c, T, s)).value
                worst_reduced = max(worst_reduced, lc_rel_err(direct, rebuilt))
                worst_square = max(worst_square, lc_rel_err(square, direct))
                points += 1
    return [
        CheckOutcome("theorem2", "direct J = e^{sT^2+iscT} J1", worst_reduced <= 1e-7,
                     f"max relative difference over {points} points = {worst_reduced:.3e}"),
        CheckOutcome("theorem2", "completed-square J = direct J", worst_square <= 1e-7,
                     f"max relative difference over {points} points = {worst_square:.3e}"),
    ]


def check_theorem2_cancellation() -> List[CheckOutcome]:
    grid = _grid(5, 14)
    j1 = run_sweep(SweepConfig(Family.J1_REDUCED, 1.0, 1.0, grid))
    j = run_sweep(SweepConfig(Family.J_DIRECT, 1.0, 1.0, grid))
    rows_match = all(abs(a.rel_err - b.rel_err) <= 1e-12 for a, b in zip(j1.rows, j.rows))

    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        for s in (1.0, 10.0, 100.0):
            reduced = integrate_J1(IntegralSpec(Family.J1_REDUCED, c, 1.0, s)).value
            full = lc_mul(lc_exp_of(complex(s, s * c)), reduced)
            direct_metric = lc_rel_err(asym_J(c, 1.0, s).value, full)
            reduced_metric = lc_rel_err(asym_J1(c, 1.0, s).value, reduced)
            worst = max(worst, abs(direct_metric - reduced_metric))

    large = asym_J(1.0, 1.0, 1e6).value
    expected_log = 1e6 - math.log(1e6 * abs(complex(2.0, 1.0)))
    finite_ok = math.isfinite(large.log_mag) and abs(large.log_mag - expected_log) <= 1e-9 * 1e6

    return [
        CheckOutcome("theorem2", "J rows equal J1 rows", rows_match and j.fitted_order == j1.fitted_order,
                     f"fitted_order J = {j.fitted_order:.4f}, J1 = {j1.fitted_order:.4f}"),
        CheckOutcome("theorem2", "prefactor cancels in the ratio", worst <= 1e-13,
                     f"max metric difference = {worst:.3e}"),
        CheckOutcome("theorem2", "asym_J finite at s=1e6", finite_ok,
                     f"log_mag = {large.log_mag:.6f}, arg = {large.arg:.6f}"),
    ]


# ---------------------------------------------------------------- special functions

def check_kummer_identity() -> List[CheckOutcome]:
    worst = 0.0
    for x in np.geomspace(0.01, 500.0, 50):
        x = float(x)
        value = kummer_auto(KummerParams(0.5, 1.5, x))
        reference = lc_from_real(SQRT_PI / (2.0 * math.sqrt(x)) * erfi(math.sqrt(x)))
        worst = max(worst, lc_rel_err(value, reference))

    x_switch = config["x_switch"]
    at_switch = KummerParams(0.5, 1.5, x_switch)
    switch_gap = lc_rel_err(kummer_asymptotic(at_switch), lc_from_real(kummer_series(at_switch)))

    xs = [float(x) for x in np.geomspace(30.0, 300.0, 10)]
    errs = [
        lc_rel_err(kummer_asymptotic(KummerParams(0.5, 1.5, x), n_terms=1),
                   lc_from_real(kummer_series(KummerParams(0.5, 1.5, x))))
        for x in xs
    ]
    order, _, _ = fit_order(xs, errs, rel_tol=1e-14)

    return [
        CheckOutcome("special", "F(1/2;3/2;x) 2√x/√π = erfi(√x), x in [0.01, 500]", worst <= 1e-10,
                     f"max relative difference = {worst:.3e}"),
        CheckOutcome("special", "series/asymptotic agree at x_switch", switch_gap <= 1e-10,
                     f"relative gap = {switch_gap:.3e}"),
        CheckOutcome("special", "leading-term error decays like 1/x", abs(order - 1.0) <= 0.15,
                     f"fitted slope = {-order:.4f}"),
    ]


def check_gaussian_integrals() -> List[CheckOutcome]:
    worst = 0.0
    for a in (0.5, 1.0, 2.0, 10.0):
        for y in (0.0, 0.5, 1.0, 3.0, 10.0):
            upper = truncation_point(a)
            panel = 4.0 * math.pi / max(y, math.sqrt(a))
            oracle = adaptive_integrate(
                lambda x: np.exp(-a * x * x + 1j * y * x), 0.0, upper, 1e-12, panel,
            ).as_complex()
            worst = max(
                worst,
                abs(oracle.real - gaussian_cos_integral(a, y)),
                abs(oracle.imag - gaussian_sin_integral(a, y)),
            )
    return [CheckOutcome("special", "Gaussian cos/sin closed forms vs quadrature", worst <= 1e-9,
                         f"max absolute difference = {worst:.3e}")]


SUITES: Dict[str, List[Callable[[], List[CheckOutcome]]]] = {
    "theorem1": [check_theorem1_sweeps, check_theorem1_oracle],
    "theorem2": [check_theorem2_identity, check_theorem2_cancellation],
    "lemma1": [check_lemma1_sweeps, check_splitting],
    "remark1": [check_remark1],
    "eq9": [check_eq9_sweep, check_eq9_differentiation],
    "splitting": [check_splitting],
    "special": [check_kummer_identity, check_gaussian_integrals],
}

# "all" runs every node once, in suite order
ALL_ORDER = ("theorem1", "remark1", "eq9", "lemma1", "theorem2", "special")


def suite_names() -> List[str]:
    return list(SUITES) + ["all"]


def _nodes_for(suite: str) -> List[Callable[[], List[CheckOutcome]]]:
    if suite == "all":
        nodes = []
        for name in ALL_ORDER:
            for node in SUITES[name]:
                if node not in nodes:
                    nodes.append(node)
        return nodes
    if suite not in SUITES:
        raise PreconditionError(f"unknown suite '{suite}'; valid suites: {', '.join(suite_names())}")
    return SUITES[suite]


def run_check_suite(suite: str) -> Dict[str, Any]:
    """
    Run every check node of a suite and collect the outcomes

    Args:
        suite: suite name or "all"

    Returns:
        Dictionary with outcomes, errors and the overall verdict
    """
    nodes = _nodes_for(suite)
    state: Dict[str, Any] = {
        "suite": suite,
        "started_at": datetime.now().isoformat(),
        "results": [],
        "errors": [],
    }

    logger.info("running suite %s (%d checks)", suite, len(nodes))
    for node in nodes:
        try:
            state["results"].extend(node())
        except Exception as e:
            name = node.__name__.removeprefix("check_")
            reason = str(e) if isinstance(e, AsymptoticsError) else f"{type(e).__name__}: {e}"
            state["errors"].append(f"{name} failed: {reason}")
            state["results"].append(CheckOutcome(suite, name, False, f"error: {reason}"))

    state["passed"] = all(outcome.passed for outcome in state["results"]) and not state["errors"]
    logger.info("suite %s finished: %s", suite, "PASS" if state["passed"] else "FAIL")
    return state


def validate_check_result(result: Dict[str, Any]) -> bool:
    """Validate that a suite run produced outcomes"""
    required_fields = ["suite", "results", "errors", "passed"]
    return all(field in result for field in required_fields) and len(result["results"]) > 0
