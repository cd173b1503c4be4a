"""Verification harness: identity sweeps, inequality checks, special values, ODE oracle.

Every check returns a CheckReport; failures are data, never exceptions. The
suite plan is built from a SuiteConfig in a fixed order, so two runs with the
same config produce the same reports in the same order.

Usage:
    from pqtrig.verify import run_suite, reports_to_frame
    reports = run_suite(1e-9)
    df = reports_to_frame(reports)
    df[~df["passed"]]
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from pqtrig.config import get_settings
from pqtrig.duality import (
    dual_pairs,
    hyp_from_trig,
    hyp_values_from_trig,
    trig_from_hyp,
    trig_values_from_hyp,
)
from pqtrig.errors import DomainError, PQTrigError
from pqtrig.formulas import (
    MAF_Q_VALUES,
    FormulaId,
    chain_consistency,
    cox_shurman_add,
    dixon_add,
    dixon_double_printed_cos,
    dixon_from_cos_6_5_3,
    evaluate,
    get_formula,
    maf1_domain_end,
    maf2_domain_end,
    phi,
    phi_inv,
    sweep_points,
)
from pqtrig.gtf import (
    cos_pq,
    cosh_pq,
    sin_limit,
    sin_pq,
    sinh_limit,
    sinh_pq,
    tan_pq,
    tau_pq,
)
from pqtrig.params import ParamPair, conjugate, half_period, r_map
from pqtrig.quadrature import F, F_to_one, G, gauss_kronrod
from pqtrig.schemas import validate_df

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
FD_TOLERANCE = 1e-6
ODE_TOLERANCE = 1e-8
ODE_ORDER_TOLERANCE = 1.0
ODE_FLOOR = 1e-12
EXACT_TOLERANCE = 1e-12

_RECOVERABLE = (PQTrigError, ValueError, ArithmeticError)


# ---------------------------------------------------------------------------
# Report model
# ---------------------------------------------------------------------------

class CheckReport(BaseModel):
    """Outcome of one named check; `passed` always equals max_residual <= tolerance."""

    model_config = ConfigDict(frozen=True)

    name: str
    grid: str
    max_residual: float = Field(ge=0)
    worst_point: float | None = None
    passed: bool
    tolerance: float = Field(gt=0)
    indeterminate: int = Field(0, ge=0)
    detail: dict[str, float | str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _passed_matches_residual(self) -> CheckReport:
        if self.passed != (self.max_residual <= self.tolerance):
            raise ValueError(
                f"passed={self.passed} contradicts max_residual={self.max_residual!r} "
                f"and tolerance={self.tolerance!r}"
            )
        return self


def _build_report(
    name: str,
    grid: str,
    points: Sequence[float],
    residuals: Sequence[float],
    tolerance: float,
    *,
    indeterminate: int = 0,
    detail: dict[str, float | str] | None = None,
) -> CheckReport:
    res = np.asarray(residuals, dtype=float)
    res = np.where(np.isnan(res), np.inf, res)
    if res.size == 0:
        max_residual, worst = 0.0, None
    else:
        i = int(np.argmax(res))
        max_residual, worst = float(res[i]), float(points[i])
    return CheckReport(
        name=name,
        grid=grid,
        max_residual=max_residual,
        worst_point=worst,
        passed=max_residual <= tolerance,
        tolerance=tolerance,
        indeterminate=indeterminate,
        detail=detail or {},
    )


def _residuals(
    points: Iterable[float], fn: Callable[[float], float], detail: dict[str, float | str]
) -> list[float]:
    """fn at every point; a point that raises scores +inf and its message is kept."""
    out = []
    for x in points:
        try:
            out.append(float(fn(x)))
        except _RECOVERABLE as e:
            detail.setdefault("first_error", f"x={x!r}: {e}")
            out.append(math.inf)
    return out


def _tolerance(tolerance: float | None) -> float:
    tol = get_settings().verify_tolerance if tolerance is None else float(tolerance)
    if not (math.isfinite(tol) and tol > 0.0):
        raise DomainError(f"tolerance must be a finite number > 0, got {tolerance!r}")
    return tol


def _label(pq: ParamPair) -> str:
    return f"p={pq.p:.6g},q={pq.q:.6g}"


def check_name(kind: str, pq: ParamPair | None = None, q: float | None = None) -> str:
    """Canonical report name, e.g. PYTHAGOREAN[p=2,q=2] or MAF1_SIN[q=3]."""
    if pq is not None:
        return f"{kind}[{_label(pq)}]"
    if q is not None:
        return f"{kind}[q={q:.6g}]"
    return kind


def _scaled(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def trig_window(pq: ParamPair) -> float:
    """Right end of the identity grid for the trigonometric family."""
    end = half_period(pq)
    if end.is_finite:
        return 0.9 * end.value
    return min(2.0, 0.9 * sin_limit(pq))


def hyp_window(pq: ParamPair) -> float:
    """Right end of the identity grid for the hyperbolic family."""
    end = sinh_limit(pq)
    return 0.5 * end if math.isfinite(end) else 2.0


def interior_points(end: float, n_points: int) -> list[float]:
    """end·k/(n+1) for k = 1..n."""
    return [end * k / (n_points + 1) for k in range(1, n_points + 1)]


def _grid(end: float, n_points: int) -> str:
    return f"{n_points} points end*k/{n_points + 1} on (0, {end:.6g})"


# ---------------------------------------------------------------------------
# Identity checks per parameter pair
# ---------------------------------------------------------------------------

def check_pythagorean(
    pq: ParamPair, n_points: int = 20, tolerance: float | None = None
) -> CheckReport:
    """|cos^p + sin^q - 1| on the trigonometric grid."""
    tol = _tolerance(tolerance)
    end = trig_window(pq)
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {}

    def residual(x: float) -> float:
        s = sin_pq(pq, x).value
        c = cos_pq(pq, x).value
        return abs(c**pq.p + s**pq.q - 1.0)

    res = _residuals(points, residual, detail)
    return _build_report(check_name("PYTHAGOREAN", pq), _grid(end, n_points), points, res, tol,
                         detail=detail)


def check_hyperbolic_pythagorean(
    pq: ParamPair, n_points: int = 20, tolerance: float | None = None
) -> CheckReport:
    """|cosh^p - sinh^q - 1| / max(1, cosh^p) on the hyperbolic grid."""
    tol = _tolerance(tolerance)
    end = hyp_window(pq)
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {}

    def residual(x: float) -> float:
        sh = sinh_pq(pq, x).value
        ch_p = cosh_pq(pq, x).value ** pq.p
        return abs(ch_p - sh**pq.q - 1.0) / max(1.0, ch_p)

    res = _residuals(points, residual, detail)
    return _build_report(check_name("PYTHAGOREAN_HYP", pq), _grid(end, n_points), points, res,
                         tol, detail=detail)


def check_round_trip(
    pq: ParamPair, n_points: int = 20, tolerance: float | None = None
) -> CheckReport:
    """|F(sin x) - x| and |G(sinh x) - x|, both integrals recomputed from scratch."""
    tol = _tolerance(tolerance)
    trig_pts = interior_points(trig_window(pq), n_points)
    hyp_pts = interior_points(hyp_window(pq), n_points)
    detail: dict[str, float | str] = {}

    trig_res = _residuals(trig_pts, lambda x: abs(F(pq, sin_pq(pq, x).value).value - x), detail)
    hyp_res = _residuals(hyp_pts, lambda x: abs(G(pq, sinh_pq(pq, x).value).value - x), detail)
    detail["max_sin_round_trip"] = max(trig_res, default=0.0)
    detail["max_sinh_round_trip"] = max(hyp_res, default=0.0)
    grid = f"{n_points} trig + {n_points} hyperbolic interior points"
    return _build_report(check_name("ROUND_TRIP", pq), grid, trig_pts + hyp_pts,
                         trig_res + hyp_res, tol, detail=detail)


def _central_difference(fn: Callable[[float], float], x: float, h: float = FD_STEP) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def check_derivatives(pq: ParamPair, n_points: int = 20) -> CheckReport:
    """Central differences: sin' = cos and sinh' = cosh, fixed tolerance 1e-6."""
    trig_pts = interior_points(trig_window(pq), n_points)
    hyp_pts = interior_points(hyp_window(pq), n_points)
    detail: dict[str, float | str] = {"step": FD_STEP}

    def sin_fd(x: float) -> float:
        slope = _central_difference(lambda t: sin_pq(pq, t).value, x)
        return abs(slope - cos_pq(pq, x).value)

    def sinh_fd(x: float) -> float:
        slope = _central_difference(lambda t: sinh_pq(pq, t).value, x)
        return _scaled(slope, cosh_pq(pq, x).value)

    res = _residuals(trig_pts, sin_fd, detail) + _residuals(hyp_pts, sinh_fd, detail)
    grid = f"{n_points} trig + {n_points} hyperbolic interior points, h={FD_STEP:g}"
    return _build_report(check_name("DERIVATIVES", pq), grid, trig_pts + hyp_pts, res,
                         FD_TOLERANCE, detail=detail)


def check_duality(pq: ParamPair, n_points: int = 20, tolerance: float | None = None) -> CheckReport:
    """Both transports against direct evaluation."""
    tol = _tolerance(tolerance)
    hyp_pts = interior_points(hyp_window(pq), n_points)
    trig_pts = interior_points(trig_window(pq), n_points)
    detail: dict[str, float | str] = {"r": r_map(pq)}

    def hyp_side(x: float) -> float:
        sh, ch = hyp_from_trig(pq, x)
        return max(_scaled(sh, sinh_pq(pq, x).value), _scaled(ch, cosh_pq(pq, x).value))

    def trig_side(x: float) -> float:
        s, c = trig_from_hyp(pq, x)
        return max(abs(s - sin_pq(pq, x).value), abs(c - cos_pq(pq, x).value))

    res = _residuals(hyp_pts, hyp_side, detail) + _residuals(trig_pts, trig_side, detail)
    grid = f"{n_points} hyperbolic + {n_points} trig interior points"
    return _build_report(check_name("DUALITY", pq), grid, hyp_pts + trig_pts, res, tol,
                         detail=detail)


def check_duality_identities(
    pq: ParamPair, n_points: int = 20, tolerance: float | None = None
) -> CheckReport:
    """Involution of the two transports and transport of the Pythagorean identities."""
    tol = _tolerance(tolerance)
    dual = pq.dual()
    hyp_pts = interior_points(hyp_window(pq), n_points)
    trig_pts = interior_points(trig_window(pq), n_points)
    detail: dict[str, float | str] = {}

    def involution(x: float) -> float:
        # start on the r-side trig values, go to (p, q) hyperbolic and back
        s, c = sin_pq(dual, x).value, cos_pq(dual, x).value
        sh, ch = hyp_values_from_trig(pq, s, c)
        s_back, c_back = trig_values_from_hyp(dual, sh, ch)
        hyp_identity = abs(ch**pq.p - sh**pq.q - 1.0) / max(1.0, ch**pq.p)
        return max(abs(s_back - s), abs(c_back - c), hyp_identity)

    def trig_identity(x: float) -> float:
        s, c = trig_from_hyp(pq, x)
        return abs(c**pq.p + s**pq.q - 1.0)

    res = _residuals(hyp_pts, involution, detail) + _residuals(trig_pts, trig_identity, detail)
    grid = f"{n_points} hyperbolic + {n_points} trig interior points"
    return _build_report(check_name("DUALITY_IDENTITIES", pq), grid, hyp_pts + trig_pts, res,
                         tol, detail=detail)


def check_reflection(
    pq: ParamPair, n_points: int = 9, tolerance: float | None = None
) -> CheckReport:
    """sin_{p,q}(π_{p,q}z/2) = cos_{q*,p*}^{q*-1}(π_{q*,p*}(1-z)/2) for z in [0.1, 0.9]."""
    tol = _tolerance(tolerance)
    if pq.p <= 1.0:
        raise DomainError(f"reflection needs p > 1, got p={pq.p!r}")
    p_star, q_star = conjugate(pq.p), conjugate(pq.q)
    mirror = ParamPair(q_star, p_star)
    half = half_period(pq).value
    half_mirror = half_period(mirror).value
    zs = [0.1 + 0.8 * k / (n_points - 1) for k in range(n_points)] if n_points > 1 else [0.5]
    detail: dict[str, float | str] = {}

    def residual(z: float) -> float:
        lhs = sin_pq(pq, half * z).value
        rhs = cos_pq(mirror, half_mirror * (1.0 - z)).value ** (q_star - 1.0)
        return abs(lhs - rhs)

    res = _residuals(zs, residual, detail)
    return _build_report(check_name("REFLECTION", pq), f"{n_points} points z in [0.1, 0.9]", zs,
                         res, tol, detail=detail)


def check_tau_identities(
    pq: ParamPair, n_points: int = 20, tolerance: float | None = None
) -> CheckReport:
    """1 + τ^q = cos^{-p} and tan = τ(1+τ^q)^{1/p-1/q}; on the hyperbolic grid
    sinh_{p,q} = τ_{r,q} and cosh_{p,q} = (1+τ_{r,q}^q)^{1/p}.
    """
    tol = _tolerance(tolerance)
    p, q = pq.p, pq.q
    dual = pq.dual()
    trig_pts = interior_points(trig_window(pq), n_points)
    hyp_pts = interior_points(hyp_window(pq), n_points)
    detail: dict[str, float | str] = {}

    def trig_side(x: float) -> float:
        t = tau_pq(pq, x)
        sec_p = cos_pq(pq, x).value ** (-p)
        tan = tan_pq(pq, x)
        return max(
            _scaled(1.0 + t**q, sec_p),
            _scaled(t * (1.0 + t**q) ** (1.0 / p - 1.0 / q), tan),
        )

    def hyp_side(x: float) -> float:
        t = tau_pq(dual, x)
        return max(
            _scaled(t, sinh_pq(pq, x).value),
            _scaled((1.0 + t**q) ** (1.0 / p), cosh_pq(pq, x).value),
        )

    res = _residuals(trig_pts, trig_side, detail) + _residuals(hyp_pts, hyp_side, detail)
    grid = f"{n_points} trig + {n_points} hyperbolic interior points"
    return _build_report(check_name("TAU_IDENTITIES", pq), grid, trig_pts + hyp_pts, res, tol,
                         detail=detail)


def check_tau_derivative(pq: ParamPair, n_points: int = 20) -> CheckReport:
    """τ' = (1 + τ^q)^{1/q + 1 - 1/p} by central differences, fixed tolerance 1e-6."""
    p, q = pq.p, pq.q
    end = trig_window(pq)
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {"step": FD_STEP}

    def residual(x: float) -> float:
        slope = _central_difference(lambda t: tau_pq(pq, t), x)
        t = tau_pq(pq, x)
        return _scaled(slope, (1.0 + t**q) ** (1.0 / q + 1.0 - 1.0 / p))

    res = _residuals(points, residual, detail)
    return _build_report(check_name("TAU_DERIVATIVE", pq), _grid(end, n_points), points, res,
                         FD_TOLERANCE, detail=detail)


# ---------------------------------------------------------------------------
# Inequalities
# ---------------------------------------------------------------------------

def _ma_points(end: float, limit: float, n_points: int) -> tuple[list[float], str]:
    if math.isfinite(end):
        return interior_points(end, n_points), _grid(end, n_points)
    window = min(get_settings().infinite_window, 0.95 * limit)
    points = [float(x) for x in np.geomspace(window / 100.0, window, n_points)]
    return points, f"{n_points} log-spaced points on [{window / 100.0:.6g}, {window:.6g}]"


def _strictness_report(
    name: str,
    grid: str,
    points: list[float],
    margins: list[float],
    detail: dict[str, float | str],
) -> CheckReport:
    """Violation depth max(0, -margin); |margin| <= strict_margin is indeterminate, not failed."""
    strict = get_settings().strict_margin
    residuals, indeterminate = [], 0
    for margin in margins:
        if math.isnan(margin):
            residuals.append(math.inf)
        elif abs(margin) <= strict:
            indeterminate += 1
            residuals.append(0.0)
        else:
            residuals.append(max(0.0, -margin))
    return _build_report(name, grid, points, residuals, strict, indeterminate=indeterminate,
                         detail=detail)


def check_mai(pq: ParamPair, n_points: int = 50) -> CheckReport:
    """cos^{1/(q+1)} x < sin x / x < 1 on the sine domain, margins relative to sin x / x."""
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    q = pq.q
    points, grid = _ma_points(half_period(pq).value, sin_limit(pq), n_points)
    detail: dict[str, float | str] = {}
    lower_margins: list[float] = []
    upper_margins: list[float] = []

    def margin(x: float) -> float:
        ratio = sin_pq(pq, x).value / x
        lower = 1.0 - cos_pq(pq, x).value ** (1.0 / (q + 1.0)) / ratio
        upper = 1.0 / ratio - 1.0
        lower_margins.append(lower)
        upper_margins.append(upper)
        return min(lower, upper)

    margins = [-r for r in _residuals(points, lambda x: -margin(x), detail)]
    detail["min_lower_margin"] = min(lower_margins, default=math.nan)
    detail["min_upper_margin"] = min(upper_margins, default=math.nan)
    return _strictness_report(check_name("MAI", pq), grid, points, margins, detail)


def check_maih(pq: ParamPair, n_points: int = 50) -> CheckReport:
    """cosh^{1/(q+1)} x < sinh x / x < cosh^{p/q} x on the sinh domain.

    The detail also carries the intermediate form obtained at parameter r:
    cosh^{-p/(r(q+1))} < sinh/(x cosh^{p/q}) < 1.
    """
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    p, q = pq.p, pq.q
    r = r_map(pq)
    end = sinh_limit(pq)
    points, grid = _ma_points(end, math.inf, n_points)
    detail: dict[str, float | str] = {}
    intermediate: list[float] = []

    def margin(x: float) -> float:
        sh = sinh_pq(pq, x).value
        ch = cosh_pq(pq, x).value
        ratio = sh / x
        lower = 1.0 - ch ** (1.0 / (q + 1.0)) / ratio
        upper = ch ** (p / q) / ratio - 1.0
        mid = ratio / ch ** (p / q)
        intermediate.append(min(1.0 - ch ** (-p / (r * (q + 1.0))) / mid, 1.0 - mid))
        return min(lower, upper)

    margins = [-res for res in _residuals(points, lambda x: -margin(x), detail)]
    detail["intermediate_min_margin"] = min(intermediate, default=math.nan)
    return _strictness_report(check_name("MAIH", pq), grid, points, margins, detail)


# ---------------------------------------------------------------------------
# ODE oracle
# ---------------------------------------------------------------------------

def _rk4(slope: Callable[[float], float], x_max: float, steps: int) -> np.ndarray:
    """Classical RK4 for the autonomous problem u' = slope(u), u(0) = 0."""
    h = x_max / steps
    u = np.empty(steps + 1)
    u[0] = w = 0.0
    for j in range(1, steps + 1):
        k1 = h * slope(w)
        k2 = h * slope(w + k1 / 2)
        k3 = h * slope(w + k2 / 2)
        k4 = h * slope(w + k3)
        w = w + (k1 + 2 * k2 + 2 * k3 + k4) / 6
        u[j] = w
    return u


def _check_ode_args(x_max: float, steps: int, limit: float, family: str) -> None:
    if steps < 100:
        raise DomainError(f"steps must be >= 100, got {steps}")
    if not math.isfinite(x_max) or x_max <= 0.0:
        raise DomainError(f"x_max must be a finite number > 0, got {x_max!r}")
    if x_max >= 0.95 * limit:
        raise DomainError(
            f"x_max={x_max!r} is too close to the end of the {family} domain ({limit:.6g}); "
            f"keep it below {0.95 * limit:.6g}"
        )


def ode_oracle_sin(pq: ParamPair, x_max: float, steps: int) -> pd.DataFrame:
    """RK4 on u' = (1 - u^q)^{1/p}, u(0) = 0: the energy form of the p-Laplacian IVP.

    Returns a validated table with columns x, u, du.
    """
    _check_ode_args(x_max, steps, sin_limit(pq), "sine")
    p, q = pq.p, pq.q

    def slope(u: float) -> float:
        return max(1.0 - u**q, 0.0) ** (1.0 / p)

    u = _rk4(slope, x_max, steps)
    du = np.maximum(1.0 - u**q, 0.0) ** (1.0 / p)
    df = pd.DataFrame({"x": np.linspace(0.0, x_max, steps + 1), "u": u, "du": du})
    return validate_df(df, "ode_table")


def ode_oracle_sinh(pq: ParamPair, x_max: float, steps: int) -> pd.DataFrame:
    """RK4 on u' = (1 + u^q)^{1/p}, u(0) = 0: the hyperbolic counterpart."""
    _check_ode_args(x_max, steps, sinh_limit(pq), "sinh")
    p, q = pq.p, pq.q
    u = _rk4(lambda w: (1.0 + w**q) ** (1.0 / p), x_max, steps)
    du = (1.0 + u**q) ** (1.0 / p)
    df = pd.DataFrame({"x": np.linspace(0.0, x_max, steps + 1), "u": u, "du": du})
    return validate_df(df, "ode_sinh_table")


def _sample(df: pd.DataFrame, samples: int) -> pd.DataFrame:
    idx = np.unique(np.linspace(0, len(df) - 1, samples).round().astype(int))
    return df.iloc[idx]


def check_ode(pq: ParamPair, steps: int = 10_000, samples: int = 41) -> CheckReport:
    """RK4 solution against sin_{p,q} at evenly strided nodes, fixed tolerance 1e-8."""
    x_max = min(0.8 * sin_limit(pq), 2.0)
    table = _sample(ode_oracle_sin(pq, x_max, steps), samples)
    detail: dict[str, float | str] = {"x_max": x_max, "steps": float(steps)}
    points = table["x"].tolist()
    res = _residuals(
        range(len(table)),
        lambda i: abs(table["u"].iloc[i] - (sin_pq(pq, points[i]).value if points[i] else 0.0)),
        detail,
    )
    grid = f"{len(points)} of {steps + 1} RK4 nodes on [0, {x_max:.6g}]"
    return _build_report(check_name("ODE_SIN", pq), grid, points, res, ODE_TOLERANCE,
                         detail=detail)


def check_ode_sinh(pq: ParamPair, steps: int = 10_000, samples: int = 41) -> CheckReport:
    """RK4 solution of the hyperbolic IVP against sinh_{p,q}, fixed tolerance 1e-8 (scaled)."""
    end = sinh_limit(pq)
    x_max = min(0.5 * end, 2.0) if math.isfinite(end) else 2.0
    table = _sample(ode_oracle_sinh(pq, x_max, steps), samples)
    detail: dict[str, float | str] = {"x_max": x_max, "steps": float(steps)}
    points = table["x"].tolist()
    res = _residuals(
        range(len(table)),
        lambda i: _scaled(table["u"].iloc[i], sinh_pq(pq, points[i]).value if points[i] else 0.0),
        detail,
    )
    grid = f"{len(points)} of {steps + 1} RK4 nodes on [0, {x_max:.6g}]"
    return _build_report(check_name("ODE_SINH", pq), grid, points, res, ODE_TOLERANCE,
                         detail=detail)


def _ode_error(pq: ParamPair, x_max: float, steps: int, nodes: int) -> float:
    table = ode_oracle_sin(pq, x_max, steps)
    stride = steps // nodes
    coarse = table.iloc[::stride]
    return max(
        abs(u - (sin_pq(pq, x).value if x else 0.0))
        for x, u in zip(coarse["x"].tolist(), coarse["u"].tolist())
    )


def check_ode_order(pq: ParamPair, steps: int = 100, nodes: int = 20) -> CheckReport:
    """Halving the RK4 step should cut the error by 16: residual |log2(ratio) - 4|, tolerance 1."""
    x_max = min(0.6 * sin_limit(pq), 2.0)
    detail: dict[str, float | str] = {"x_max": x_max}
    try:
        coarse = _ode_error(pq, x_max, steps, nodes)
        fine = _ode_error(pq, x_max, 2 * steps, nodes)
    except _RECOVERABLE as e:
        detail["first_error"] = str(e)
        return _build_report(check_name("ODE_ORDER", pq), "not evaluated", [x_max], [math.inf],
                             ODE_ORDER_TOLERANCE, detail=detail)
    detail.update({"error_coarse": coarse, "error_fine": fine})
    if fine <= ODE_FLOOR:
        detail["note"] = "fine-step error at the floating-point floor; order not measurable"
        residual = 0.0
    else:
        ratio = coarse / fine
        detail["ratio"] = ratio
        residual = abs(math.log2(ratio) - 4.0) if ratio > 0.0 else math.inf
    grid = f"{steps} vs {2 * steps} steps on [0, {x_max:.6g}], {nodes + 1} common nodes"
    return _build_report(check_name("ODE_ORDER", pq), grid, [x_max], [residual],
                         ODE_ORDER_TOLERANCE, detail=detail)


# ---------------------------------------------------------------------------
# Antiderivatives
# ---------------------------------------------------------------------------

def _vectorized(fn: Callable[[float], float]) -> Callable[[np.ndarray], np.ndarray]:
    return lambda xs: np.array([fn(float(x)) for x in np.atleast_1d(xs)])


def check_antiderivatives(
    q: float, a: float, b: float, tolerance: float | None = None
) -> CheckReport:
    """∫_a^b dx/sin_{2,q} and ∫_a^b dx/cos_{2,q}^{2/q} against τ-based antiderivatives.

    Reading A evaluates τ_{q*,q} at x/2^{2/q}, reading B at 2^{2/q}x. The report
    residual is reading A's; reading B and a pointwise derivative check for
    d/dx log τ_{q*,q}(x/2^{2/q}) = 1/sin_{2,q}x are recorded in the detail.
    """
    tol = _tolerance(tolerance)
    if not math.isfinite(q) or q <= 1.0:
        raise DomainError(f"q must be > 1, got q={q!r}")
    trig = ParamPair(2.0, q)
    end = half_period(trig).value
    if not 0.0 < a < b < end:
        raise DomainError(f"need 0 < a < b < π_{{2,q}}/2 = {end:.17g}, got a={a!r}, b={b!r}")

    scale = 2.0 ** (2.0 / q)
    tau_pair = ParamPair(conjugate(q), q)
    half_pair = ParamPair(q / 2.0, q)
    quad_tol = 1e-12

    sin_integral = gauss_kronrod(_vectorized(lambda x: 1.0 / sin_pq(trig, x).value), a, b,
                                 tol=quad_tol).value
    cos_integral = gauss_kronrod(
        _vectorized(lambda x: cos_pq(trig, x).value ** (-2.0 / q)), a, b, tol=quad_tol
    ).value

    def closed_forms(arg: Callable[[float], float]) -> tuple[float, float]:
        t_a, t_b = tau_pq(tau_pair, arg(a)), tau_pq(tau_pair, arg(b))
        log_part = math.log(t_b) - math.log(t_a)
        arc_part = scale * (F(half_pair, t_b).value - F(half_pair, t_a).value)
        return log_part, arc_part

    detail: dict[str, float | str] = {"sin_integral": sin_integral, "cos_integral": cos_integral}
    log_a, arc_a = closed_forms(lambda x: x / scale)
    residual_a = max(abs(log_a - sin_integral), abs(arc_a - cos_integral))
    detail["reading_a_residual"] = residual_a

    try:
        log_b, arc_b = closed_forms(lambda x: x * scale)
        residual_b = max(abs(log_b - sin_integral), abs(arc_b - cos_integral))
        detail["reading_b_residual"] = residual_b
    except _RECOVERABLE as e:
        residual_b = math.inf
        detail["reading_b_residual"] = f"outside domain: {e}"
    detail["preferred_reading"] = "A" if residual_a <= residual_b else "B"

    derivative_pts = interior_points(b - a, 5)
    fd_res = _residuals(
        [a + t for t in derivative_pts],
        lambda x: abs(
            _central_difference(lambda y: math.log(tau_pq(tau_pair, y / scale)), x)
            - 1.0 / sin_pq(trig, x).value
        ),
        detail,
    )
    detail["derivative_max_residual"] = max(fd_res)

    grid = f"[{a:.6g}, {b:.6g}], adaptive G7/K15"
    return _build_report(check_name("ANTIDERIVATIVES", q=q), grid, [b], [residual_a], tol,
                         detail=detail)


# ---------------------------------------------------------------------------
# Formula registry sweeps
# ---------------------------------------------------------------------------

def check_formula(
    formula_id: FormulaId | str,
    q: float | None = None,
    n_points: int = 100,
    tolerance: float | None = None,
) -> CheckReport:
    """|lhs - rhs| / max(1, |rhs|) over the formula's interior grid.

    The plain |lhs - rhs| maximum is kept in detail as max_abs_residual.
    """
    tol = _tolerance(tolerance)
    spec = get_formula(formula_id)
    points = sweep_points(spec.formula_id, n_points, q)
    detail: dict[str, float | str] = {"description": spec.description}
    abs_residuals: list[float] = []

    def scaled(x: float) -> float:
        result = evaluate(spec.formula_id, x, q)
        abs_residuals.append(result.residual)
        return result.scaled_residual

    res = _residuals(points, scaled, detail)
    detail["max_abs_residual"] = max(abs_residuals, default=0.0)
    end = spec.domain_end(q)
    grid = _grid(end if math.isfinite(end) else 2.0, n_points)
    name = check_name(spec.formula_id.value, q=q) if spec.q_parametrized else spec.formula_id.value
    return _build_report(name, grid, points, res, tol, detail=detail)


def check_chain(
    kind: str, q: float, n_points: int = 50, tolerance: float | None = None
) -> CheckReport:
    """One multiple-angle pair carried through the duality onto the other pair."""
    tol = _tolerance(tolerance)
    end = maf1_domain_end(q) if kind == "maf1" else maf2_domain_end(q)
    end = end if math.isfinite(end) else 2.0
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {}
    res = _residuals(points, lambda x: chain_consistency(kind, q, x), detail)
    return _build_report(check_name(f"CHAIN_{kind.upper()}", q=q), _grid(end, n_points), points,
                         res, tol, detail=detail)


def check_dixon_doubling_cos(n_points: int = 100, tolerance: float | None = None) -> CheckReport:
    """cos^{1/2}_{3/2,3}(2u) from the doubling law; the quoted variant's residual goes to detail."""
    tol = _tolerance(tolerance)
    pq = ParamPair(1.5, 3.0)
    end = half_period(pq).value / 2.0
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {}

    def direct(u: float) -> float:
        return math.sqrt(cos_pq(pq, 2.0 * u).value)

    res = _residuals(points, lambda u: abs(dixon_add(u, u).cos_sum - direct(u)), detail)
    printed = _residuals(points, lambda u: abs(dixon_double_printed_cos(u) - direct(u)), {})
    detail["printed_denominator_max_residual"] = max(printed, default=0.0)
    return _build_report("DIXON_DOUBLE_COS", _grid(end, n_points), points, res, tol,
                         detail=detail)


def check_dixon_from_cos(n_points: int = 100, tolerance: float | None = None) -> CheckReport:
    """sin_{3/2,3}^{3/2} x against its expression through cos_{6/5,3}(2^{2/3}x)."""
    tol = _tolerance(tolerance)
    end = half_period(ParamPair(1.5, 3.0)).value
    points = interior_points(end, n_points)
    detail: dict[str, float | str] = {}
    res = _residuals(points, lambda x: dixon_from_cos_6_5_3(x).residual, detail)
    return _build_report("DIXON_FROM_COS_6_5_3", _grid(end, n_points), points, res, tol,
                         detail=detail)


def check_cs_symmetry(n_points: int = 50, tolerance: float | None = None) -> CheckReport:
    """The Cox-Shurman addition quotient is symmetric in its two arguments."""
    tol = _tolerance(tolerance)
    end = half_period(ParamPair(2.0, 3.0)).value
    xs = interior_points(end, n_points)
    detail: dict[str, float | str] = {}

    def residual(x: float) -> float:
        y = 0.9 * (end - x)
        if x == y:
            return 0.0
        return abs(cox_shurman_add(x, y) - cox_shurman_add(y, x))

    res = _residuals(xs, residual, detail)
    grid = f"{n_points} pairs (x, 0.9(π_{{2,3}}/2 - x))"
    return _build_report("CS_SYMMETRY", grid, xs, res, tol, detail=detail)


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------

def check_r_involution(pairs: Sequence[ParamPair]) -> CheckReport:
    """r(r(p)) = p for fixed q, relative, tolerance 1e-12."""
    ps = [pq.p for pq in pairs]
    res = [abs(r_map(pq.dual()) - pq.p) / pq.p for pq in pairs]
    return _build_report("R_INVOLUTION", f"{len(pairs)} parameter pairs", ps, res,
                         EXACT_TOLERANCE)


def check_dual_pairs(q_values: Sequence[float]) -> CheckReport:
    """Each convertible pair (trig, hyp) satisfies r_map(trig) = hyp.p."""
    points, res = [], []
    for q in q_values:
        for pair in dual_pairs(q):
            points.append(q)
            res.append(abs(r_map(pair.trig) - pair.hyp.p) / pair.hyp.p)
    return _build_report("DUAL_PAIRS", f"six correspondences for q in {list(q_values)}", points,
                         res, EXACT_TOLERANCE)


def check_half_periods(pairs: Sequence[ParamPair], tolerance: float | None = None) -> CheckReport:
    """π_{p,q}/2 from log-Beta against direct quadrature of F_{p,q}(1)."""
    tol = _tolerance(tolerance)
    finite = [pq for pq in pairs if pq.has_finite_period]
    res = []
    for pq in finite:
        closed = half_period(pq).value
        res.append(abs(F_to_one(pq).value - closed) / closed)
    return _build_report("HALF_PERIODS", f"{len(finite)} pairs with p > 1",
                         [pq.p for pq in finite], res, tol)


def check_pi_relations(
    pairs: Sequence[ParamPair], q_values: Sequence[float], tolerance: float | None = None
) -> CheckReport:
    """qπ_{p,q} = p*π_{q*,p*} and π_{q/2,q}/2 = π_{2q/(q+2),q}/2^{1+2/q} (relative)."""
    tol = _tolerance(tolerance)
    points, res = [], []
    for pq in pairs:
        p, q = pq.p, pq.q
        lhs = q * 2.0 * half_period(pq).value
        rhs = conjugate(p) * 2.0 * half_period(ParamPair(conjugate(q), conjugate(p))).value
        points.append(q)
        res.append(abs(lhs - rhs) / lhs)
    for q in q_values:
        lhs = half_period(ParamPair(q / 2.0, q)).value
        rhs = 2.0 * half_period(ParamPair(2.0 * q / (q + 2.0), q)).value / 2.0 ** (1.0 + 2.0 / q)
        points.append(q)
        res.append(0.0 if math.isinf(lhs) and math.isinf(rhs) else abs(lhs - rhs) / lhs)
    grid = f"{len(pairs)} reflection pairs + q in {list(q_values)}"
    return _build_report("PI_RELATIONS", grid, points, res, tol)


def check_phi_round_trip(n_points: int = 101, tolerance: float | None = None) -> CheckReport:
    """Φ(Φ⁻¹(x)) = x on a uniform grid of [0, 1]."""
    tol = _tolerance(tolerance)
    xs = [k / (n_points - 1) for k in range(n_points)]
    detail: dict[str, float | str] = {}
    res = _residuals(xs, lambda x: abs(phi(phi_inv(x)) - x), detail)
    return _build_report("PHI_ROUND_TRIP", f"{n_points} points on [0, 1]", xs, res, tol,
                         detail=detail)


def _special_values() -> dict[str, tuple[Callable[[], float], float]]:
    root3 = math.sqrt(3.0)
    return {
        "SPECIAL_SINH_2_6": (
            lambda: sinh_pq(ParamPair(2.0, 6.0), half_period(ParamPair(1.5, 6.0)).value / 2).value,
            2.0**-0.5,
        ),
        "SPECIAL_SIN_3_2_6": (
            lambda: sin_pq(ParamPair(1.5, 6.0), half_period(ParamPair(1.5, 6.0)).value / 2).value,
            3.0 ** (-1.0 / 3.0),
        ),
        "SPECIAL_SIN_3_6": (
            lambda: sin_pq(ParamPair(3.0, 6.0), half_period(ParamPair(3.0, 6.0)).value / 2).value,
            (3.0 - 2.0 * math.sqrt(2.0)) ** (1.0 / 3.0),
        ),
        "SPECIAL_COS_6_5_3": (
            lambda: cos_pq(ParamPair(1.2, 3.0), half_period(ParamPair(1.2, 3.0)).value / 2).value,
            3.0 ** (-5.0 / 3.0),
        ),
        "SPECIAL_SIN_3_2_2": (
            lambda: sin_pq(ParamPair(1.5, 2.0), half_period(ParamPair(1.5, 2.0)).value / 2).value,
            math.sqrt(135.0 + 78.0 * root3 - 6.0 * math.sqrt(6.0 * (168.0 + 97.0 * root3))),
        ),
    }


SPECIAL_VALUE_NAMES = tuple(_special_values())


def check_special_value(name: str, tolerance: float | None = None) -> CheckReport:
    """A quarter-period value against its closed form."""
    tol = _tolerance(tolerance)
    table = _special_values()
    if name not in table:
        raise DomainError(f"Unknown special value '{name}'. Valid: {list(table)}")
    compute, expected = table[name]
    detail: dict[str, float | str] = {"expected": expected}
    res = _residuals([0.0], lambda _: abs(compute() - expected), detail)
    return _build_report(name, "quarter period", [0.0], res, tol, detail=detail)


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

def _pairs(values: Iterable[tuple[float, float]]) -> list[ParamPair]:
    return [ParamPair(p, q) for p, q in values]


def default_pair_grid() -> list[tuple[float, float]]:
    """60 pairs: q in {1.5, 2, 2.5, 3, 4, 6} × ten p values spanning p <= 1 and p > 1."""
    grid = []
    for q in (1.5, 2.0, 2.5, 3.0, 4.0, 6.0):
        for p in (q / (q + 1.0) + 0.05, 0.95, 1.0, 1.2, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0):
            grid.append((p, q))
    return grid


def default_ma_pairs() -> list[tuple[float, float]]:
    """25 pairs for the inequality checks, five with p < 1 and five with p = 1."""
    return [
        (p, q)
        for q in (1.5, 2.0, 3.0, 4.0, 6.0)
        for p in (q / (q + 1.0) + 0.05, 1.0, 1.5, 2.0, 4.0)
    ]


def default_ode_pairs() -> list[tuple[float, float]]:
    return [
        (2.0, 2.0), (1.0, 2.0), (4.0 / 3.0, 4.0), (1.5, 3.0), (1.5, 6.0), (3.0, 6.0), (2.0, 4.0),
    ]


def default_reflection_pairs() -> list[tuple[float, float]]:
    return [(p, q) for q in (1.5, 2.0, 3.0, 4.0) for p in (1.5, 2.0, 3.0, 4.0)]


def default_tau_pairs() -> list[tuple[float, float]]:
    return [(2.0, 2.0), (1.0, 2.0), (1.5, 3.0), (4.0 / 3.0, 4.0), (3.0, 6.0), (1.2, 3.0),
            (2.0, 4.0), (3.0, 2.0)]


class SuiteConfig(BaseModel):
    """What run_suite checks. `SuiteConfig.empty()` selects nothing."""

    model_config = ConfigDict(frozen=True)

    name_prefix: str | None = None
    pair_grid: list[tuple[float, float]] = Field(default_factory=default_pair_grid)
    ma_pairs: list[tuple[float, float]] = Field(default_factory=default_ma_pairs)
    ode_pairs: list[tuple[float, float]] = Field(default_factory=default_ode_pairs)
    reflection_pairs: list[tuple[float, float]] = Field(default_factory=default_reflection_pairs)
    tau_pairs: list[tuple[float, float]] = Field(default_factory=default_tau_pairs)
    formula_ids: list[FormulaId] = Field(default_factory=lambda: list(FormulaId))
    chain_q_values: list[float] = Field(default_factory=lambda: list(MAF_Q_VALUES))
    antiderivative_q_values: list[float] = Field(default_factory=lambda: [2.0, 3.0, 4.0, 6.0])
    pi_relation_q_values: list[float] = Field(default_factory=lambda: [2.0, 3.0, 4.0, 6.0])
    identity_points: int = Field(20, ge=1)
    ma_points: int = Field(50, ge=2)
    formula_points: int = Field(100, ge=1)
    ode_steps: int = Field(10_000, ge=100)
    special_values: bool = True
    structural: bool = True

    @classmethod
    def empty(cls) -> SuiteConfig:
        return cls(
            pair_grid=[], ma_pairs=[], ode_pairs=[], reflection_pairs=[], tau_pairs=[],
            formula_ids=[], chain_q_values=[], antiderivative_q_values=[],
            pi_relation_q_values=[], special_values=False, structural=False,
        )


Plan = list[tuple[str, Callable[[], CheckReport]]]


def _plan(tol: float, config: SuiteConfig) -> Plan:
    plan: Plan = []
    add = plan.append
    grid = _pairs(config.pair_grid)
    n_id = config.identity_points

    if config.structural:
        reflection = _pairs(config.reflection_pairs)
        add(("R_INVOLUTION", lambda: check_r_involution(grid)))
        add(("DUAL_PAIRS", lambda: check_dual_pairs(config.pi_relation_q_values)))
        add(("HALF_PERIODS", lambda: check_half_periods(grid, tol)))
        add(("PI_RELATIONS", lambda: check_pi_relations(reflection, config.pi_relation_q_values,
                                                        tol)))
        add(("PHI_ROUND_TRIP", lambda: check_phi_round_trip(tolerance=tol)))

    for pq in grid:
        add((check_name("PYTHAGOREAN", pq), lambda pq=pq: check_pythagorean(pq, n_id, tol)))
        add((check_name("PYTHAGOREAN_HYP", pq),
             lambda pq=pq: check_hyperbolic_pythagorean(pq, n_id, tol)))
        add((check_name("ROUND_TRIP", pq), lambda pq=pq: check_round_trip(pq, n_id, tol)))
        add((check_name("DERIVATIVES", pq), lambda pq=pq: check_derivatives(pq, n_id)))
        add((check_name("DUALITY", pq), lambda pq=pq: check_duality(pq, n_id, tol)))
        add((check_name("DUALITY_IDENTITIES", pq),
             lambda pq=pq: check_duality_identities(pq, n_id, tol)))

    for pq in _pairs(config.reflection_pairs):
        add((check_name("REFLECTION", pq), lambda pq=pq: check_reflection(pq, tolerance=tol)))

    for pq in _pairs(config.tau_pairs):
        add((check_name("TAU_IDENTITIES", pq), lambda pq=pq: check_tau_identities(pq, n_id, tol)))
        add((check_name("TAU_DERIVATIVE", pq), lambda pq=pq: check_tau_derivative(pq, n_id)))

    for pq in _pairs(config.ma_pairs):
        add((check_name("MAI", pq), lambda pq=pq: check_mai(pq, config.ma_points)))
        add((check_name("MAIH", pq), lambda pq=pq: check_maih(pq, config.ma_points)))

    for fid in config.formula_ids:
        spec = get_formula(fid)
        n = config.formula_points
        if spec.q_parametrized:
            for q in spec.default_q_values:
                add((check_name(fid.value, q=q),
                     lambda fid=fid, q=q: check_formula(fid, q, n, tol)))
        else:
            add((fid.value, lambda fid=fid: check_formula(fid, None, n, tol)))

    for kind in ("maf1", "maf2"):
        for q in config.chain_q_values:
            add((check_name(f"CHAIN_{kind.upper()}", q=q),
                 lambda kind=kind, q=q: check_chain(kind, q, tolerance=tol)))

    if config.structural:
        add(("DIXON_DOUBLE_COS", lambda: check_dixon_doubling_cos(tolerance=tol)))
        add(("DIXON_FROM_COS_6_5_3", lambda: check_dixon_from_cos(tolerance=tol)))
        add(("CS_SYMMETRY", lambda: check_cs_symmetry(tolerance=tol)))

    if config.special_values:
        for name in SPECIAL_VALUE_NAMES:
            add((name, lambda name=name: check_special_value(name, tol)))

    for q in config.antiderivative_q_values:
        end = half_period(ParamPair(2.0, q)).value
        add((check_name("ANTIDERIVATIVES", q=q),
             lambda q=q, end=end: check_antiderivatives(q, 0.2 * end, 0.8 * end, tol)))

    for pq in _pairs(config.ode_pairs):
        add((check_name("ODE_SIN", pq), lambda pq=pq: check_ode(pq, config.ode_steps)))
        add((check_name("ODE_ORDER", pq), lambda pq=pq: check_ode_order(pq)))
        add((check_name("ODE_SINH", pq), lambda pq=pq: check_ode_sinh(pq, config.ode_steps)))

    if config.name_prefix:
        plan = [(name, thunk) for name, thunk in plan if name.startswith(config.name_prefix)]
    return plan


def list_check_names(config: SuiteConfig | None = None) -> list[str]:
    """Names run_suite would produce, in order, without running anything."""
    return [name for name, _ in _plan(_tolerance(None), config or SuiteConfig())]


def run_suite(
    tolerance: float | None = None, config: SuiteConfig | None = None
) -> list[CheckReport]:
    """Run every selected check in plan order; a check that raises becomes a failed report."""
    tol = _tolerance(tolerance)
    config = config or SuiteConfig()
    plan = _plan(tol, config)
    logger.info(f"Running {len(plan)} checks at tolerance {tol:g}")

    reports = []
    for name, thunk in plan:
        try:
            report = thunk()
        except _RECOVERABLE as e:
            logger.warning(f"{name}: check raised {type(e).__name__}: {e}")
            report = CheckReport(
                name=name, grid="not evaluated", max_residual=math.inf, worst_point=None,
                passed=False, tolerance=tol, detail={"first_error": str(e)},
            )
        logger.info(f"{'PASS' if report.passed else 'FAIL'} {name} "
                    f"max_residual={report.max_residual:.3g}")
        reports.append(report)
    return reports


def summarize(reports: Sequence[CheckReport]) -> dict[str, int]:
    passed = sum(r.passed for r in reports)
    return {
        "total": len(reports),
        "passed": passed,
        "failed": len(reports) - passed,
        "indeterminate_points": sum(r.indeterminate for r in reports),
    }


def reports_to_frame(reports: Sequence[CheckReport]) -> pd.DataFrame:
    """One row per report (detail omitted), validated against the check_reports schema."""
    columns = [
        "name", "grid", "max_residual", "worst_point", "passed", "tolerance", "indeterminate",
    ]
    rows = [r.model_dump(exclude={"detail"}) for r in reports]
    df = pd.DataFrame(rows, columns=columns)
    df["worst_point"] = df["worst_point"].astype(float)
    df["passed"] = df["passed"].astype(bool)
    return validate_df(df, "check_reports")


def write_jsonl(reports: Sequence[CheckReport], path: str | Path) -> Path:
    """One JSON object per line, in report order."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for report in reports:
            fh.write(report.model_dump_json() + "\n")
    logger.info(f"Wrote {len(reports)} reports to {path}")
    return path
