"""Safeguarded Newton iteration on a bracketed, increasing function.

Newton steps are taken while they stay strictly inside the bracket and
shrink fast enough; otherwise the bracket is bisected. With geometric=True
the bisection point is sqrt(lo·hi) whenever hi > 2·lo > 0, which keeps wide
brackets (e.g. [1, 1e40]) to a logarithmic number of steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

_EPS = 2.220446049250313e-16

# y -> (g(y), g'(y)), g increasing
ValueAndSlope = Callable[[float], tuple[float, float]]


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int
    bracket_collapsed: bool
    step_stalled: bool = False

    @property
    def stalled(self) -> bool:
        """True when the iteration stopped at the resolution of y rather than on |g|."""
        return self.bracket_collapsed or self.step_stalled


def _split(lo: float, hi: float, geometric: bool) -> float:
    if geometric and lo > 0.0 and hi > 2.0 * lo:
        return math.sqrt(lo) * math.sqrt(hi)
    return lo + 0.5 * (hi - lo)


def _collapsed(lo: float, hi: float) -> bool:
    return hi - lo <= 4.0 * _EPS * max(abs(lo), abs(hi), 1e-300)


def safeguarded_newton(
    func: ValueAndSlope,
    lo: float,
    hi: float,
    guess: float,
    *,
    max_iter: int,
    geometric: bool = False,
) -> RootResult:
    """Find y in (lo, hi) with g(y) = 0, given g(lo) <= 0 <= g(hi).

    Stops on an exact zero, a Newton step below a few ulps of y, or a bracket
    collapsed to a few ulps. Returns the evaluated point with the smallest |g|.
    """
    y = guess if lo < guess < hi else _split(lo, hi, geometric)
    dx_old = hi - lo
    dx = dx_old

    best_y, best_g = y, math.inf
    collapsed = False
    stalled = False
    iterations = 0
    while iterations < max_iter:
        g, dg = func(y)
        iterations += 1
        if abs(g) < abs(best_g):
            best_y, best_g = y, g
        if g == 0.0:
            break
        if g < 0.0:
            lo = y
        else:
            hi = y
        if _collapsed(lo, hi):
            collapsed = True
            break

        step = g / dg if dg > 0.0 and math.isfinite(dg) else math.nan
        candidate = y - step
        newton_ok = (
            math.isfinite(candidate)
            and lo < candidate < hi
            and abs(2.0 * g) <= abs(dx_old * dg)
        )
        dx_old = dx
        if newton_ok:
            dx = step
            tiny = abs(step) <= 4.0 * _EPS * abs(y)
            y = candidate
            if tiny:
                g, _ = func(y)
                iterations += 1
                if abs(g) < abs(best_g):
                    best_y, best_g = y, g
                stalled = True
                break
        else:
            y_next = _split(lo, hi, geometric)
            if not lo < y_next < hi:
                collapsed = True
                break
            dx = y_next - y
            y = y_next

    return RootResult(best_y, abs(best_g), iterations, collapsed, stalled)
