import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import load_config
from tools.errors import AsymptoticsError, FitError, PreconditionError, SweepPointError
from tools.logcomplex import LogComplex, lc_exp_of, lc_mul, lc_rel_err
from tools.quadrature import Family, IntegralSpec, check_rel_tol, integrate
from workflows.asymptotics.formulas import (
    asym_I,
    asym_I1,
    asym_J,
    asym_J1,
    closed_I_infinite,
)

logger = logging.getLogger(__name__)

# Load configuration
config = load_config()

MIN_GRID_POINTS = 4

# Two points always fit exactly
MIN_FIT_POINTS = 3

# CLI labels for the four verified relations
FAMILY_LABELS = {
    "I": (Family.I_FINITE, Family.I_INFINITE),
    "I1": (Family.I1_MOMENT,),
    "J1": (Family.J1_REDUCED,),
    "J": (Family.J_DIRECT,),
}


def family_for_label(label: str, T: float) -> Family:
    """Map a CLI family label and T onto the IntegralSpec family"""
    if label not in FAMILY_LABELS:
        raise PreconditionError(f"unknown family '{label}'; expected one of {', '.join(FAMILY_LABELS)}")
    if label == "I":
        return Family.I_INFINITE if math.isinf(T) else Family.I_FINITE
    return FAMILY_LABELS[label][0]


def quadrature_family(family: Family) -> Family:
    """J rows are computed through the reduced integral"""
    return Family.J1_REDUCED if family is Family.J_DIRECT else family


def label_for_family(family: Family) -> str:
    for label, families in FAMILY_LABELS.items():
        if family in families:
            return label
    raise PreconditionError(f"family {family} has no label")


@dataclass(frozen=True)
class SweepConfig:
    family: Family
    c: float
    T: float
    s_grid: Tuple[float, ...]
    rel_tol: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "s_grid", tuple(float(s) for s in self.s_grid))
        object.__setattr__(self, "rel_tol", check_rel_tol(self.rel_tol))
        if len(self.s_grid) < MIN_GRID_POINTS:
            raise PreconditionError(
                f"s_grid needs at least {MIN_GRID_POINTS} points for an order fit, got {len(self.s_grid)}"
            )
        if any(b <= a for a, b in zip(self.s_grid, self.s_grid[1:])):
            raise PreconditionError("s_grid must be strictly increasing")
        for s in self.s_grid:
            # validates c, T, s against the family invariants (J uses the reduced path)
            IntegralSpec(quadrature_family(self.family), self.c, self.T, s)

    @property
    def label(self) -> str:
        return label_for_family(self.family)


@dataclass(frozen=True)
class SweepRow:
    s: float
    numeric: LogComplex
    asymptotic: LogComplex
    rel_err: float


@dataclass
class ConvergenceReport:
    config: SweepConfig
    rows: List[SweepRow]
    fitted_order: float
    fit_r2: float
    fit_points: int
    regime_entry_index: int
    notes: List[str] = field(default_factory=list)


def geometric_grid(s_min: float, s_max: float, points: int) -> Tuple[float, ...]:
    """Geometric s grid including both end points"""
    if points < MIN_GRID_POINTS:
        raise PreconditionError(f"points must be >= {MIN_GRID_POINTS}, got {points}")
    if not (0 < s_min < s_max):
        raise PreconditionError(f"need 0 < s_min < s_max, got s_min = {s_min}, s_max = {s_max}")
    lo_exp, hi_exp = math.log2(s_min), math.log2(s_max)
    step = (hi_exp - lo_exp) / (points - 1)
    if lo_exp.is_integer() and hi_exp.is_integer() and step.is_integer():
        return tuple(math.ldexp(1.0, int(lo_exp + k * step)) for k in range(points))
    grid = [float(s) for s in np.geomspace(s_min, s_max, points)]
    grid[0], grid[-1] = float(s_min), float(s_max)
    return tuple(grid)


def fit_order(
    s_values: Sequence[float],
    rel_errs: Sequence[float],
    rel_tol: float,
) -> Tuple[float, float, int]:
    """
    Least-squares slope of log(rel_err) against log(s), negated.

    Points whose error sits within error_floor_factor of the oracle
    tolerance are dropped, since there the oracle's own error dominates.

    Returns:
        (fitted_order, r_squared, points_used)
    """
    floor = config["error_floor_factor"] * rel_tol
    usable = [(s, e) for s, e in zip(s_values, rel_errs) if math.isfinite(e) and e >= floor and e > 0]
    if len(usable) < MIN_FIT_POINTS:
        raise FitError(
            f"only {len(usable)} points above the error floor {floor:.3e}; cannot fit an order"
        )

    log_s = np.log([s for s, _ in usable])
    log_e = np.log([e for _, e in usable])
    slope, intercept = np.polyfit(log_s, log_e, 1)

    predicted = slope * log_s + intercept
    residual = float(np.sum((log_e - predicted) ** 2))
    spread = float(np.sum((log_e - np.mean(log_e)) ** 2))
    r_squared = 1.0 - residual / spread if spread > 0 else 1.0

    return -float(slope), r_squared, len(usable)


def regime_entry_index(rel_errs: Sequence[float]) -> int:
    """First index from which rel_err decreases strictly to the end of the grid"""
    entry = len(rel_errs) - 1
    while entry > 0 and rel_errs[entry - 1] > rel_errs[entry]:
        entry -= 1
    return entry


def evaluate_point(family: Family, c: float, T: float, s: float,
                   rel_tol: Optional[float] = None) -> SweepRow:
    """Numeric value, asymptotic value and relative error at one s"""
    family = Family(family)
    IntegralSpec(quadrature_family(family), c, T, s)
    tol = check_rel_tol(rel_tol)

    if family is Family.I_INFINITE:
        numeric = closed_I_infinite(c, s)
        asymptotic = asym_I(c, s).value
        rel_err = lc_rel_err(numeric, asymptotic)
    elif family is Family.I_FINITE:
        numeric = integrate(IntegralSpec(family, c, T, s), tol).value
        asymptotic = asym_I(c, s).value
        rel_err = lc_rel_err(numeric, asymptotic)
    elif family is Family.I1_MOMENT:
        numeric = integrate(IntegralSpec(family, c, T, s), tol).value
        asymptotic = asym_I1(c, s).value
        rel_err = lc_rel_err(numeric, asymptotic)
    elif family is Family.J1_REDUCED:
        numeric = integrate(IntegralSpec(family, c, T, s), tol).value
        asymptotic = asym_J1(c, T, s).value
        rel_err = lc_rel_err(numeric, asymptotic)
    else:
        # J = e^{sT²+iscT} J1; the prefactor cancels in the ratio
        reduced = integrate(IntegralSpec(Family.J1_REDUCED, c, T, s), tol).value
        numeric = lc_mul(lc_exp_of(complex(s * T * T, s * c * T)), reduced)
        asymptotic = asym_J(c, T, s).value
        rel_err = lc_rel_err(reduced, asym_J1(c, T, s).value)

    return SweepRow(s=s, numeric=numeric, asymptotic=asymptotic, rel_err=rel_err)


def _evaluate_annotated(cfg: SweepConfig, s: float) -> SweepRow:
    try:
        row = evaluate_point(cfg.family, cfg.c, cfg.T, s, cfg.rel_tol)
    except AsymptoticsError as e:
        raise SweepPointError(f"s = {s:.17g}: {e}", s=s, cause=e) from e
    logger.info("%s c=%g T=%g s=%.6g rel_err=%.3e", cfg.label, cfg.c, cfg.T, s, row.rel_err)
    return row


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> ConvergenceReport:
    """
    Evaluate every grid point and fit the decay order of the relative error.

    Args:
        cfg: validated sweep configuration
        workers: thread count for independent rows (defaults to sweep_workers)

    Returns:
        ConvergenceReport with rows in grid order
    """
    workers = config["sweep_workers"] if workers is None else workers

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda s: _evaluate_annotated(cfg, s), cfg.s_grid))
    else:
        rows = [_evaluate_annotated(cfg, s) for s in cfg.s_grid]

    rel_errs = [row.rel_err for row in rows]
    fitted_order, fit_r2, used = fit_order(cfg.s_grid, rel_errs, cfg.rel_tol)
    entry = regime_entry_index(rel_errs)

    notes = []
    if used < len(rows):
        notes.append(f"{len(rows) - used} point(s) below the oracle error floor were not fitted")
    if used < MIN_GRID_POINTS:
        notes.append(f"order fitted on only {used} points; R^2 is not informative")

    return ConvergenceReport(
        config=cfg,
        rows=rows,
        fitted_order=fitted_order,
        fit_r2=fit_r2,
        fit_points=used,
        regime_entry_index=entry,
        notes=notes,
    )
