"""Numeric evaluation of the defining integrals F_{p,q} and G_{p,q}.

    F_{p,q}(y) = ∫_0^y (1 - t^q)^(-1/p) dt,   0 <= y < 1
    G_{p,q}(y) = ∫_0^y (1 + t^q)^(-1/p) dt,   y >= 0

Both are evaluated with tanh-sinh (double-exponential) quadrature; adaptive
Gauss-Kronrod (G7/K15) is the fallback when tanh-sinh runs into its level cap.

F is split at t0 = min(y, 1/2). The tail [t0, y] is rewritten in w = 1 - t^q
(formed with expm1 so it never cancels) and then
    p > 1:  w = z^{p*}   ->  (p*/q) (1 - z^{p*})^{1/q - 1} dz   (bounded, F(1) finite)
    p <= 1: w = e^{-z}   ->  (1/q) e^{z(1/p - 1)} (1 - e^{-z})^{1/q - 1} dz
G is split at t = 1 and the tail [1, y] is rewritten with t = e^s.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from pqtrig.config import get_settings
from pqtrig.errors import DomainError
from pqtrig.params import ExtReal, ParamPair, conjugate

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

__all__ = [
    "QuadResult",
    "tanh_sinh",
    "gauss_kronrod",
    "F",
    "F_to_one",
    "G",
]


# ---------------------------------------------------------------------------
# Result type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadResult:
    """A quadrature value with its error estimate and integrand evaluation count."""

    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError(f"abs_error_estimate must be >= 0, got {self.abs_error_estimate!r}")
        if self.evaluations <= 0:
            raise ValueError(f"evaluations must be > 0, got {self.evaluations!r}")

    def __add__(self, other: QuadResult) -> QuadResult:
        return QuadResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.evaluations + other.evaluations,
        )


def _honest(err: float) -> float:
    return err if math.isfinite(err) else math.inf


# ---------------------------------------------------------------------------
# Tanh-sinh
# ---------------------------------------------------------------------------

_HALF_PI = 0.5 * math.pi
_T_MAX = 4.0  # complement 1 - tanh(π/2 sinh 4) ≈ 1e-37


@lru_cache(maxsize=None)
def _ts_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Complements 1 - tanh(π/2 sinh t) and weights at t = j·2^-level, j = 1..T_MAX·2^level."""
    h = 2.0 ** -level
    t = np.arange(1, int(_T_MAX * 2**level) + 1) * h
    u = _HALF_PI * np.sinh(t)
    comp = 2.0 / (np.exp(2.0 * u) + 1.0)
    weight = _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    comp.setflags(write=False)
    weight.setflags(write=False)
    return comp, weight


def tanh_sinh(
    f: Integrand,
    a: float,
    b: float,
    *,
    tol: float | None = None,
    max_level: int | None = None,
) -> QuadResult:
    """Integrate a vectorized integrand over [a, b] by tanh-sinh quadrature.

    The base lattice (step 2^-base_level) is evaluated in one pass; the coarser
    nested estimates are read off it by striding. Refinement then halves the
    step until |I_L - I_{L-1}| <= tol·(1 + |I_L|) or max_level is reached.
    On a cap hit the best estimate is returned with that difference as its error.
    """
    settings = get_settings()
    tol = settings.quad_tolerance if tol is None else tol
    max_level = settings.quad_max_level if max_level is None else max_level
    base = min(settings.quad_base_level, max_level)

    if a == b:
        return QuadResult(0.0, 0.0, 1)
    if b < a:
        flipped = tanh_sinh(f, b, a, tol=tol, max_level=max_level)
        return QuadResult(-flipped.value, flipped.abs_error_estimate, flipped.evaluations)

    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        comp, weight = _ts_nodes(base)
        f_mid = float(f(np.array([mid]))[0])
        terms = weight * (f(a + half * comp) + f(b - half * comp))
        evaluations = 1 + 2 * comp.size

        estimates = []
        for level in range(base + 1):
            stride = 2 ** (base - level)
            s = _HALF_PI * f_mid + terms[stride - 1 :: stride].sum()
            estimates.append(half * s * 2.0**-level)

        total = _HALF_PI * f_mid + terms.sum()
        value = estimates[-1]
        err = _honest(abs(estimates[-1] - estimates[-2]))

        level = base
        while err > tol * (1.0 + abs(value)) and level < max_level:
            level += 1
            comp, weight = _ts_nodes(level)
            comp, weight = comp[::2], weight[::2]  # odd j: nodes new at this level
            total += (weight * (f(a + half * comp) + f(b - half * comp))).sum()
            evaluations += 2 * comp.size
            refined = half * total * 2.0**-level
            err = _honest(abs(refined - value))
            value = refined

    if err > tol * (1.0 + abs(value)):
        logger.warning(
            f"tanh-sinh on [{a:.6g}, {b:.6g}] hit level cap {max_level}: "
            f"value={value:.17g}, error estimate={err:.3g}"
        )
    logger.debug(f"tanh-sinh [{a:.6g}, {b:.6g}] level={level} evaluations={evaluations}")
    return QuadResult(float(value), float(err), evaluations)


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod (G7/K15)
# ---------------------------------------------------------------------------

# Positive Kronrod abscissae; indices 1, 3, 5 are the Gauss nodes
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
])
_WGK_CENTER = 0.209482141084727828012999174891714
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
])
_WG_CENTER = 0.417959183673469387755102040816327


def _gk15(f: Integrand, a: float, b: float) -> tuple[float, float]:
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = np.concatenate(([center], center - half * _XGK, center + half * _XGK))
    fx = np.asarray(f(x), dtype=float)
    f_center = fx[0]
    f_pairs = fx[1:8] + fx[8:15]
    kronrod = half * (_WGK_CENTER * f_center + np.dot(_WGK, f_pairs))
    gauss = half * (_WG_CENTER * f_center + np.dot(_WG, f_pairs[1::2]))
    return float(kronrod), _honest(float(abs(kronrod - gauss)))


def gauss_kronrod(
    f: Integrand,
    a: float,
    b: float,
    *,
    tol: float | None = None,
    max_intervals: int | None = None,
) -> QuadResult:
    """Globally adaptive G7/K15: always bisect the interval with the largest error."""
    settings = get_settings()
    tol = settings.quad_tolerance if tol is None else tol
    max_intervals = settings.gk_max_intervals if max_intervals is None else max_intervals

    if a == b:
        return QuadResult(0.0, 0.0, 1)
    if b < a:
        flipped = gauss_kronrod(f, b, a, tol=tol, max_intervals=max_intervals)
        return QuadResult(-flipped.value, flipped.abs_error_estimate, flipped.evaluations)

    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value)]
    evaluations = 15
    total, total_err = value, err

    while total_err > tol * (1.0 + abs(total)) and len(heap) < max_intervals:
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for left, right in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, left, right)
            heapq.heappush(heap, (-e, left, right, v))
        evaluations += 30
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)

    if total_err > tol * (1.0 + abs(total)):
        logger.warning(
            f"Gauss-Kronrod on [{a:.6g}, {b:.6g}] stopped at {len(heap)} intervals: "
            f"error estimate={total_err:.3g}"
        )
    return QuadResult(total, _honest(total_err), evaluations)


# ---------------------------------------------------------------------------
# F_{p,q}
# ---------------------------------------------------------------------------

def _with_fallback(f: Integrand, a: float, b: float, tol: float) -> QuadResult:
    result = tanh_sinh(f, a, b, tol=tol)
    if result.abs_error_estimate <= tol * (1.0 + abs(result.value)):
        return result
    logger.warning(
        f"tanh-sinh on [{a:.6g}, {b:.6g}] did not settle: falling back to Gauss-Kronrod"
    )
    fallback = gauss_kronrod(f, a, b, tol=tol)
    best = min(result, fallback, key=lambda r: r.abs_error_estimate)
    evaluations = result.evaluations + fallback.evaluations
    return QuadResult(best.value, best.abs_error_estimate, evaluations)


_SPLIT = 0.5


def _check_unit_interval(y: float) -> None:
    if not math.isfinite(y) or y < 0.0 or y >= 1.0:
        raise DomainError(f"F_{{p,q}}(y) needs 0 <= y < 1, got y={y!r}")


def _f_head(pq: ParamPair, t0: float, tol: float) -> QuadResult:
    p, q = pq.p, pq.q
    return _with_fallback(lambda t: np.exp(-np.log1p(-(t**q)) / p), 0.0, t0, tol)


def _f_tail(pq: ParamPair, w_lo: float, w_hi: float, tol: float) -> QuadResult:
    """∫ (1/q) w^{-1/p} (1-w)^{1/q-1} dw over [w_lo, w_hi] (the t-tail in w = 1 - t^q)."""
    p, q = pq.p, pq.q
    if pq.has_finite_period:
        k = conjugate(p)

        def power_form(z):
            return (k / q) * np.exp((1.0 / q - 1.0) * np.log1p(-(z**k)))

        return _with_fallback(power_form, w_lo ** (1.0 / k), w_hi ** (1.0 / k), tol)

    def exp_form(z):
        return np.exp(z * (1.0 / p - 1.0) + (1.0 / q - 1.0) * np.log(-np.expm1(-z))) / q

    return _with_fallback(exp_form, -math.log(w_hi), -math.log(w_lo), tol)


def F(pq: ParamPair, y: float, *, tol: float | None = None) -> QuadResult:
    """F_{p,q}(y) = ∫_0^y (1 - t^q)^{-1/p} dt for 0 <= y < 1 (the inverse of sin_{p,q})."""
    _check_unit_interval(y)
    tol = get_settings().quad_tolerance if tol is None else tol
    if y == 0.0:
        return QuadResult(0.0, 0.0, 1)

    head = _f_head(pq, min(y, _SPLIT), tol)
    if y <= _SPLIT:
        return head

    w_split = -math.expm1(pq.q * math.log(_SPLIT))
    w_y = -math.expm1(pq.q * math.log(y))
    return head + _f_tail(pq, w_y, w_split, tol)


def F_to_one(pq: ParamPair, *, tol: float | None = None) -> ExtReal:
    """F_{p,q}(1) = π_{p,q}/2 by direct quadrature; +infinity when p <= 1."""
    if not pq.has_finite_period:
        return ExtReal.infinite()
    tol = get_settings().quad_tolerance if tol is None else tol
    head = _f_head(pq, _SPLIT, tol)
    w_split = -math.expm1(pq.q * math.log(_SPLIT))
    return ExtReal((head + _f_tail(pq, 0.0, w_split, tol)).value)


# ---------------------------------------------------------------------------
# G_{p,q}
# ---------------------------------------------------------------------------

def G(pq: ParamPair, y: float, *, tol: float | None = None) -> QuadResult:
    """G_{p,q}(y) = ∫_0^y (1 + t^q)^{-1/p} dt for y >= 0 (the inverse of sinh_{p,q})."""
    if not math.isfinite(y) or y < 0.0:
        raise DomainError(f"G_{{p,q}}(y) needs a finite y >= 0, got y={y!r}")
    tol = get_settings().quad_tolerance if tol is None else tol
    if y == 0.0:
        return QuadResult(0.0, 0.0, 1)

    p, q = pq.p, pq.q
    head = _with_fallback(lambda t: np.exp(-np.log1p(t**q) / p), 0.0, min(y, 1.0), tol)
    if y <= 1.0:
        return head

    def log_form(s):
        return np.exp(s * (1.0 - q / p) - np.log1p(np.exp(-q * s)) / p)

    return head + _with_fallback(log_form, 0.0, math.log(y), tol)
