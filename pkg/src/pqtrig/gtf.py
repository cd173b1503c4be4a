"""Generalized trigonometric and hyperbolic functions with parameters (p, q).

    sin_{p,q}  = F_{p,q}^{-1}          cos_{p,q}  = (1 - sin^q)^{1/p}
    sinh_{p,q} = G_{p,q}^{-1}          cosh_{p,q} = (1 + sinh^q)^{1/p}
    tan_{p,q}  = sin / cos             τ_{p,q}    = sin / cos^{p/q}

All functions live on [0, end): no odd or periodic extension. For p <= 1 the
sine domain is unbounded; its usable end is F_{p,q}(y_cap) with
y_cap = 1 - 1e-15 (beyond that sin rounds to 1).

Inversion is a safeguarded Newton iteration on F(y) - x (resp. G(y) - x)
with the analytic derivative. A result is accepted when its residual is
within residual_tolerance·(1 + x). When the iteration stalls at the resolution
of y (a collapsed bracket or a step of a few ulps) the bound widens by what
one ulp of y moves the integral by; the bound applied is returned with the
result, and a residual above it raises ConvergenceError.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from pqtrig.config import get_settings
from pqtrig.errors import ConvergenceError, DomainError
from pqtrig.params import ParamPair, half_period, sin_domain_end, sinh_domain_end
from pqtrig.quadrature import F, G
from pqtrig.roots import RootResult, safeguarded_newton

logger = logging.getLogger(__name__)

_HUGE = 1e300


# ---------------------------------------------------------------------------
# Result type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalResult:
    """A function value with the inversion residual |F(y) - x| (or |G(y) - x|).

    residual <= residual_bound always holds; residual_bound is
    residual_tolerance·(1 + x) unless the inversion stalled at the resolution of y.
    """

    value: float
    residual: float
    iterations: int
    residual_bound: float


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1024)
def _sin_limit(pq: ParamPair, y_cap: float, key: tuple) -> float:
    end = sin_domain_end(pq)
    if end.is_finite:
        return end.value
    return F(pq, y_cap).value


def sin_limit(pq: ParamPair) -> float:
    """Usable right end of the sine domain: π_{p,q}/2, or F_{p,q}(y_cap) when p <= 1."""
    return _sin_limit(pq, get_settings().y_cap, _numerics_key())


def sinh_limit(pq: ParamPair) -> float:
    """Right end of the sinh domain: π_{r,q}/2, +inf when r <= 1."""
    return sinh_domain_end(pq).value


def _check_argument(x: float, end: float, family: str, pq: ParamPair) -> None:
    margin = get_settings().singular_margin
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"{family}_{{p,q}} needs a finite x >= 0, got x={x!r}")
    if x >= end - margin:
        raise DomainError(
            f"{family}_{{{pq.p:g},{pq.q:g}}}: x={x!r} is not below the domain end "
            f"{end:.17g} (minus margin {margin:g}); no extension beyond [0, end)"
        )


def _one_minus_power(y: float, q: float) -> float:
    """1 - y^q without cancellation."""
    return -math.expm1(q * math.log(y)) if y > 0.0 else 1.0


def _log_one_plus_power(y: float, q: float) -> float:
    """log(1 + y^q), overflow-free for large y."""
    if y <= 0.0:
        return 0.0
    u = q * math.log(y)
    return u + math.log1p(math.exp(-u)) if u > 0.0 else math.log1p(math.exp(u))


# ---------------------------------------------------------------------------
# Inversion
# ---------------------------------------------------------------------------

def _numerics_key() -> tuple:
    """Settings the cached inversions depend on; part of every cache key."""
    s = get_settings()
    return (s.residual_tolerance, s.newton_max_iter, s.quad_tolerance, s.quad_base_level,
            s.quad_max_level, s.gk_max_intervals)


def _f_slope(pq: ParamPair, y: float) -> float:
    return _one_minus_power(y, pq.q) ** (-1.0 / pq.p)


def _g_slope(pq: ParamPair, y: float) -> float:
    return math.exp(-_log_one_plus_power(y, pq.q) / pq.p)


@lru_cache(maxsize=32768)
def _invert_f(pq: ParamPair, x: float, key: tuple) -> EvalResult:
    residual_tol, max_iter = key[0], key[1]
    p, q = pq.p, pq.q

    def value_and_slope(y: float) -> tuple[float, float]:
        return F(pq, y).value - x, _f_slope(pq, y)

    end = half_period(pq)
    guess = x / end.value if end.is_finite else math.tanh(x)
    root = safeguarded_newton(value_and_slope, 0.0, 1.0, guess, max_iter=max_iter)
    return _accept(
        root, x, residual_tol, f"sin_{{{p:g},{q:g}}}",
        slope=_f_slope(pq, root.value),
        quad_error=lambda: F(pq, root.value).abs_error_estimate,
    )


@lru_cache(maxsize=32768)
def _invert_g(pq: ParamPair, x: float, key: tuple) -> EvalResult:
    residual_tol, max_iter = key[0], key[1]
    p, q = pq.p, pq.q

    def value_and_slope(y: float) -> tuple[float, float]:
        return G(pq, y).value - x, _g_slope(pq, y)

    # G(y) <= y, so the root is >= x; grow hi until G(hi) >= x
    lo, hi = 0.0, 2.0 * x + 1.0
    spent = 0
    while G(pq, hi).value < x:
        spent += 1
        lo, hi = hi, max(2.0 * hi, hi * hi)
        if hi > _HUGE or spent >= max_iter:
            raise ConvergenceError(
                f"sinh_{{{p:g},{q:g}}}({x!r}) exceeds the floating-point range", hi, math.inf
            )

    root = safeguarded_newton(
        value_and_slope, lo, hi, max(x, lo), max_iter=max_iter - spent, geometric=True
    )
    result = _accept(
        root, x, residual_tol, f"sinh_{{{p:g},{q:g}}}",
        slope=_g_slope(pq, root.value),
        quad_error=lambda: G(pq, root.value).abs_error_estimate,
    )
    return EvalResult(result.value, result.residual, result.iterations + spent,
                      result.residual_bound)


def _accept(
    root: RootResult,
    x: float,
    residual_tol: float,
    label: str,
    *,
    slope: float,
    quad_error: Callable[[], float],
) -> EvalResult:
    """Accept a root whose residual is within its bound, raise ConvergenceError otherwise.

    The bound is residual_tol·(1 + x). When the iteration stalled at the
    resolution of y, the residual cannot go below what one ulp of y moves the
    integral by, so the bound widens to include 8·slope·ulp(y) plus the
    quadrature error at y. The bound used is returned as residual_bound.
    """
    bound = residual_tol * (1.0 + abs(x))
    if root.residual > bound and root.stalled:
        floor = 8.0 * slope * math.ulp(root.value) + quad_error()
        bound += floor if math.isfinite(floor) else 0.0
        logger.debug(
            f"{label}({x!r}): stalled at {root.value!r}, residual {root.residual:.3g}, "
            f"resolution bound {bound:.3g}"
        )
    if not root.residual <= bound:
        raise ConvergenceError(
            f"{label}({x!r}) did not converge in {root.iterations} iterations: "
            f"residual {root.residual:.3g} > {bound:.3g}",
            root.value,
            root.residual,
        )
    logger.debug(f"{label}({x!r}) = {root.value!r} after {root.iterations} iterations")
    return EvalResult(root.value, root.residual, root.iterations, bound)


# ---------------------------------------------------------------------------
# Public functions
# ---------------------------------------------------------------------------

def sin_pq(pq: ParamPair, x: float) -> EvalResult:
    """sin_{p,q}(x) = F_{p,q}^{-1}(x) on [0, π_{p,q}/2)."""
    _check_argument(x, sin_limit(pq), "sin", pq)
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, 0.0)
    return _invert_f(pq, float(x), _numerics_key())


def cos_pq(pq: ParamPair, x: float) -> EvalResult:
    """cos_{p,q}(x) = (1 - sin_{p,q}^q x)^{1/p}, the derivative of sin_{p,q}."""
    s = sin_pq(pq, x)
    value = _one_minus_power(s.value, pq.q) ** (1.0 / pq.p)
    return EvalResult(value, s.residual, s.iterations, s.residual_bound)


def sinh_pq(pq: ParamPair, x: float) -> EvalResult:
    """sinh_{p,q}(x) = G_{p,q}^{-1}(x) on [0, π_{r,q}/2)."""
    _check_argument(x, sinh_limit(pq), "sinh", pq)
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, 0.0)
    return _invert_g(pq, float(x), _numerics_key())


def cosh_pq(pq: ParamPair, x: float) -> EvalResult:
    """cosh_{p,q}(x) = (1 + sinh_{p,q}^q x)^{1/p}, the derivative of sinh_{p,q}."""
    s = sinh_pq(pq, x)
    log_value = _log_one_plus_power(s.value, pq.q) / pq.p
    return EvalResult(math.exp(log_value), s.residual, s.iterations, s.residual_bound)


def tan_pq(pq: ParamPair, x: float) -> float:
    """tan_{p,q}(x) = sin_{p,q}(x) / cos_{p,q}(x)."""
    s = sin_pq(pq, x).value
    return s / _one_minus_power(s, pq.q) ** (1.0 / pq.p)


def tau_pq(pq: ParamPair, x: float) -> float:
    """τ_{p,q}(x) = sin_{p,q}(x) / cos_{p,q}^{p/q}(x) = sin / (1 - sin^q)^{1/q}."""
    s = sin_pq(pq, x).value
    return s / _one_minus_power(s, pq.q) ** (1.0 / pq.q)


FUNCTIONS = {
    "sin": sin_pq,
    "cos": cos_pq,
    "sinh": sinh_pq,
    "cosh": cosh_pq,
    "tan": tan_pq,
    "tau": tau_pq,
}


def domain_end(fn_name: str, pq: ParamPair) -> float:
    """Usable right end of the domain of a named function."""
    if fn_name not in FUNCTIONS:
        raise DomainError(f"Unknown function '{fn_name}'. Valid: {sorted(FUNCTIONS)}")
    return sinh_limit(pq) if fn_name in ("sinh", "cosh") else sin_limit(pq)


def evaluate(fn_name: str, pq: ParamPair, x: float) -> EvalResult:
    """Evaluate a named function; tan and τ carry the sine's residual."""
    if fn_name not in FUNCTIONS:
        raise DomainError(f"Unknown function '{fn_name}'. Valid: {sorted(FUNCTIONS)}")
    if fn_name in ("tan", "tau"):
        s = sin_pq(pq, x)
        return EvalResult(FUNCTIONS[fn_name](pq, x), s.residual, s.iterations, s.residual_bound)
    return FUNCTIONS[fn_name](pq, x)
