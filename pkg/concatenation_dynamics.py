#!/usr/bin/env python3
"""
Concatenation Dynamics for QEC Coding Maps
Iterating coding maps, one-dimensional fixed points, storage thresholds,
depolarizing curve sweeps and leading-order threshold estimates
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from numpy.polynomial import Polynomial

from app_config import settings
from polynomial_maps import PolyMap, X, Y, Z, compose_univariate, univariate
from qec_errors import DomainError, NoThresholdError
from qubit_channels import DiagonalChannel, depolarizing, depolarizing_to_pauli_probability, make_diagonal

logger = logging.getLogger(__name__)

ATTRACTING = "attracting"
REPELLING = "repelling"
MARGINAL = "marginal"

ROOT_TOLERANCE = 1e-13
BISECTION_WIDTH = 1e-14
MARGINAL_TOLERANCE = 1e-9
DEDUP_DISTANCE = 1e-9

# generic escape-iteration fallback
MAX_ESCAPE_ITERATIONS = 100_000
PRESERVED_LEVEL = 1 - 1e-9
LOST_LEVEL = 1e-9
T_BISECTION_WIDTH = 1e-8
T_SEARCH_MAX = 5.0

CURVE_COLUMNS = ["gamma_t", "level", "x", "y", "z"]

UnivariateLike = Union[Mapping[int, Fraction], Polynomial, Sequence[float]]


@dataclass(frozen=True)
class FixedPoint:
    value: float
    stability: str
    derivative_magnitude: float

    @property
    def is_interior(self) -> bool:
        return 0.0 < self.value < 1.0

    def to_json(self) -> Dict:
        return {"value": self.value, "stability": self.stability, "derivative": self.derivative_magnitude}


@dataclass(frozen=True)
class ThresholdReport:
    """Critical channel values and times per axis; None marks an axis without a finite threshold"""
    code: str
    period: int
    method: str
    critical: Dict[str, Optional[float]]
    t_star: Dict[str, Optional[float]]
    t_th: Optional[float]
    p_th: Optional[float]
    fixed_points: Dict[str, Tuple[FixedPoint, ...]] = field(default_factory=dict)

    @property
    def has_threshold(self) -> bool:
        return self.t_th is not None

    def to_json(self) -> Dict:
        return {
            "code": self.code,
            "period": self.period,
            "method": self.method,
            "t_star": dict(self.t_star),
            "t_th": self.t_th,
            "p_th": self.p_th,
            "critical": dict(self.critical),
            "fixed_points": [
                dict(axis=axis, **fp.to_json())
                for axis, points in self.fixed_points.items()
                for fp in points
            ],
        }


def _as_polynomial(poly: UnivariateLike) -> Polynomial:
    if isinstance(poly, Polynomial):
        return poly
    if isinstance(poly, Mapping):
        return univariate(poly)
    return Polynomial(np.asarray(poly, dtype=float))


def iterate_map(m: PolyMap, c: DiagonalChannel, levels: int) -> DiagonalChannel:
    """Apply the map `levels` times"""
    if levels < 0:
        raise DomainError(f"levels must be >= 0, got {levels}")
    x, y, z = c.as_tuple()
    for _ in range(levels):
        x, y, z = m.evaluate(x, y, z)
    return make_diagonal(x, y, z)


def _bisect(g: Polynomial, lo: float, hi: float) -> float:
    g_lo = g(lo)
    while hi - lo > BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g_mid = g(mid)
        if g_mid == 0:
            return mid
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _classify(derivative: float) -> str:
    magnitude = abs(derivative)
    if abs(magnitude - 1.0) <= MARGINAL_TOLERANCE:
        return MARGINAL
    return ATTRACTING if magnitude < 1.0 else REPELLING


def fixed_points_1d(poly: UnivariateLike, lo: float = 0.0, hi: float = 1.0,
                    grid: Optional[int] = None) -> List[FixedPoint]:
    """Roots of poly(v) - v on [lo, hi] by sign-change bracketing, with stability"""
    p = _as_polynomial(poly)
    g = p - Polynomial([0.0, 1.0])
    dp = p.deriv()
    cells = grid or settings.fixed_point_grid
    v = np.linspace(lo, hi, cells + 1)
    gv = g(v)

    roots: List[float] = []
    on_grid = np.abs(gv) <= ROOT_TOLERANCE
    roots.extend(float(v[i]) for i in np.flatnonzero(on_grid))
    for i in np.flatnonzero(gv[:-1] * gv[1:] < 0):
        if on_grid[i] or on_grid[i + 1]:
            continue
        roots.append(_bisect(g, float(v[i]), float(v[i + 1])))

    points: List[FixedPoint] = []
    for r in sorted(roots):
        if points and r - points[-1].value < DEDUP_DISTANCE:
            continue
        derivative = float(dp(r))
        stability = _classify(derivative)
        if stability == MARGINAL:
            logger.warning(f"Marginal fixed point at {r:.12g} (|derivative| = {abs(derivative):.12g})")
        points.append(FixedPoint(r, stability, abs(derivative)))
    return points


def threshold_point(points: Iterable[FixedPoint]) -> Optional[float]:
    """Largest interior repelling fixed point"""
    interior = [fp.value for fp in points if fp.is_interior and fp.stability == REPELLING]
    return max(interior) if interior else None


def detect_structure(m: PolyMap) -> str:
    """'separable', 'swapping', 'symmetric' or 'general', judged by which variables appear"""
    vx, vz = m.x.variables(), m.z.variables()
    if vx <= {0} and vz <= {2}:
        return "separable"
    if vx <= {2} and vz <= {0}:
        return "swapping"
    if m.y == m.x.substitute(Y, Z, X) and m.z == m.x.substitute(Z, X, Y):
        return "symmetric"
    return "general"


def _axis_maps(m: PolyMap, structure: str) -> Dict[str, Dict[int, Fraction]]:
    if structure == "separable":
        return {"x": m.x.univariate_coefficients(0), "z": m.z.univariate_coefficients(2)}
    if structure == "swapping":
        x_from_z = m.x.univariate_coefficients(2)
        z_from_x = m.z.univariate_coefficients(0)
        return {
            "x": compose_univariate(x_from_z, z_from_x),
            "z": compose_univariate(z_from_x, x_from_z),
        }
    restricted = m.x.diagonal_restriction()
    return {"x": restricted, "z": restricted}


def _time_of(value: Optional[float]) -> Optional[float]:
    return None if value is None else float(-np.log(value))


def _min_defined(values: Iterable[Optional[float]]) -> Optional[float]:
    defined = [v for v in values if v is not None]
    return min(defined) if defined else None


def _report(code: str, period: int, method: str, critical: Dict[str, Optional[float]],
            t_axes: Dict[str, Optional[float]], fixed: Dict[str, Tuple[FixedPoint, ...]]) -> ThresholdReport:
    t_y = _min_defined((t_axes["x"], t_axes["z"]))
    t_star = {"x": t_axes["x"], "y": t_y, "z": t_axes["z"]}
    critical = dict(critical, y=None if t_y is None else float(np.exp(-t_y)))
    t_th = _min_defined(t_star.values())
    p_th = None if t_th is None else depolarizing_to_pauli_probability(t_th)
    report = ThresholdReport(code, period, method, critical, t_star, t_th, p_th, fixed)
    if report.has_threshold:
        logger.info(f"{code}: t_th = {t_th:.6g}, p_th = {p_th:.6g} ({method}, period {period})")
    else:
        logger.warning(f"{code}: no finite threshold")
    return report


def storage_threshold(m: PolyMap, code: str = "") -> ThresholdReport:
    """Critical depolarizing times per axis from the fixed points of the coding map"""
    structure = detect_structure(m)
    if structure == "general":
        return threshold_by_iteration(m, code)

    period = 2 if structure == "swapping" else 1
    fixed = {}
    critical = {}
    for axis, coeffs in _axis_maps(m, structure).items():
        fixed[axis] = tuple(fixed_points_1d(coeffs))
        critical[axis] = threshold_point(fixed[axis])
        logger.debug(f"{code} {axis}-axis fixed points: {[fp.value for fp in fixed[axis]]}")
    t_axes = {axis: _time_of(v) for axis, v in critical.items()}
    return _report(code, period, structure, critical, t_axes, fixed)


def _preserved(m: PolyMap, gamma_t: float, axis: int) -> bool:
    """Whether the tracked component escapes to 1 under the squared map"""
    state = depolarizing(gamma_t).as_tuple()
    for _ in range(MAX_ESCAPE_ITERATIONS):
        if state[axis] > PRESERVED_LEVEL:
            return True
        if state[axis] < LOST_LEVEL:
            return False
        previous = state[axis]
        state = m.evaluate(*m.evaluate(*state))
        if state[axis] == previous:
            return False
    return False


def critical_time_by_iteration(m: PolyMap, axis: int) -> Optional[float]:
    """Bisect gamma_t between preservation and loss of one axis"""
    lo, hi = 0.0, T_SEARCH_MAX
    if _preserved(m, hi, axis):
        return None
    while hi - lo > T_BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if _preserved(m, mid, axis):
            lo = mid
        else:
            hi = mid
    t_star = 0.5 * (lo + hi)
    return None if t_star <= T_BISECTION_WIDTH else t_star


def threshold_by_iteration(m: PolyMap, code: str = "") -> ThresholdReport:
    """Structure-free threshold: escape iteration of the squared map on x and z"""
    t_axes = {"x": critical_time_by_iteration(m, 0), "z": critical_time_by_iteration(m, 2)}
    critical = {axis: None if t is None else float(np.exp(-t)) for axis, t in t_axes.items()}
    return _report(code, 2, "iteration", critical, t_axes, {})


def step_limit(report: ThresholdReport, gamma_t: float) -> Dict[str, Optional[float]]:
    """Infinite-concatenation limit per axis: 1 below the critical time, 0 above, None at it"""
    limits = {}
    for axis, t_star in report.t_star.items():
        if t_star is None or gamma_t == t_star:
            limits[axis] = None
        else:
            limits[axis] = 1.0 if gamma_t < t_star else 0.0
    return limits


def depolarizing_curves(m: PolyMap, t_grid: Sequence[float], levels: Sequence[int]) -> pd.DataFrame:
    """Rows (gamma_t, level, x, y, z) for every grid point and level, in grid order"""
    t = np.asarray(t_grid, dtype=float)
    if t.size and (np.any(t < 0) or np.any(np.isnan(t))):
        raise DomainError("gamma_t grid values must be >= 0")
    if any(level < 0 for level in levels):
        raise DomainError("levels must be >= 0")

    start = np.exp(-t)
    state = (start, start.copy(), start.copy())
    by_level = {}
    top = max(levels, default=0)
    for level in range(top + 1):
        if level in levels:
            by_level[level] = state
        if level < top:
            state = tuple(np.asarray(v) for v in m.evaluate(*state))

    rows = []
    for i, gamma_t in enumerate(t):
        for level in levels:
            x, y, z = (float(v[i]) for v in by_level[level])
            rows.append((float(gamma_t), int(level), x, y, z))
    return pd.DataFrame(rows, columns=CURVE_COLUMNS)


def curves_to_csv(table: pd.DataFrame, precision: Optional[int] = None) -> str:
    digits = precision or settings.precision
    return table.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")


def _coefficient_list(poly: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    coeffs = {int(k): Fraction(c) for k, c in poly.items() if c != 0}
    if coeffs.get(0, Fraction(0)) != 1:
        raise DomainError(f"correctable probability must equal 1 at p = 0, got {coeffs.get(0, 0)}")
    return coeffs


def leading_order_threshold(correctable_prob: Mapping[int, Fraction]) -> float:
    """Solve the second-order truncation 1 + c1 p + c2 p^2 = 1 - p"""
    coeffs = _coefficient_list(correctable_prob)
    c1 = coeffs.get(1, Fraction(0))
    c2 = coeffs.get(2, Fraction(0))
    if c2 >= 0:
        raise NoThresholdError(f"second-order coefficient {c2} is not negative; no leading-order estimate")
    estimate = -(1 + c1) / c2
    if estimate <= 0:
        raise NoThresholdError(
            f"first-order failures dominate (p coefficient {c1}); no leading-order estimate"
        )
    return float(estimate)


def exact_crossing(correctable_prob: Mapping[int, Fraction]) -> Optional[float]:
    """Smallest p in (0, 1] where the full polynomial meets 1 - p"""
    coeffs = _coefficient_list(correctable_prob)
    diff = univariate(coeffs) - Polynomial([1.0, -1.0])
    # both sides equal 1 at p = 0; drop that root before solving
    reduced = Polynomial(diff.coef[1:]) if len(diff.coef) > 1 else Polynomial([0.0])
    candidates = [
        float(r.real) for r in reduced.roots()
        if abs(r.imag) < 1e-9 and 1e-12 < r.real <= 1.0 + 1e-12
    ]
    return min(candidates) if candidates else None


def leading_order_underestimate(estimate: float, exact: float) -> float:
    """Fraction by which the leading-order estimate falls short of the exact threshold"""
    if exact <= 0:
        raise DomainError(f"exact threshold must be positive, got {exact}")
    return (exact - estimate) / exact
