"""Transport between the hyperbolic family at (p, q) and the trigonometric family at (r, q).

With r = pq/(pq + p - q):

    sinh_{p,q} x = sin_{r,q} x / cos_{r,q}^{r/q} x,     cosh_{p,q} x = cos_{r,q}^{-r/p} x
    sin_{p,q} x  = sinh_{r,q} x / cosh_{r,q}^{r/q} x,   cos_{p,q} x  = cosh_{r,q}^{-r/p} x

Each transform costs one inversion on the r-side; the value-level helpers
(`hyp_values_from_trig`, `trig_values_from_hyp`) are also used to chain
closed-form formulas into one another.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from pqtrig.errors import DomainError
from pqtrig.gtf import cos_pq, cosh_pq, sin_limit, sin_pq, sinh_pq
from pqtrig.params import ParamPair, r_map


class HypPair(NamedTuple):
    sinh: float
    cosh: float


class TrigPair(NamedTuple):
    sin: float
    cos: float


class DualPair(NamedTuple):
    """A trigonometric parameter pair and the hyperbolic pair it converts to."""

    trig: ParamPair
    hyp: ParamPair


# ---------------------------------------------------------------------------
# Value-level transport
# ---------------------------------------------------------------------------

def hyp_values_from_trig(pq: ParamPair, s: float, c: float) -> HypPair:
    """(sinh_{p,q}, cosh_{p,q}) from the values (sin_{r,q} x, cos_{r,q} x)."""
    if not c > 0.0:
        raise DomainError(f"cos_{{r,q}} value must be > 0, got {c!r}")
    r = r_map(pq)
    log_c = math.log(c)
    return HypPair(s * math.exp(-log_c * r / pq.q), math.exp(-log_c * r / pq.p))


def trig_values_from_hyp(pq: ParamPair, sh: float, ch: float) -> TrigPair:
    """(sin_{p,q}, cos_{p,q}) from the values (sinh_{r,q} x, cosh_{r,q} x)."""
    if not ch >= 1.0:
        raise DomainError(f"cosh_{{r,q}} value must be >= 1, got {ch!r}")
    r = r_map(pq)
    log_ch = math.log(ch)
    return TrigPair(sh * math.exp(-log_ch * r / pq.q), math.exp(-log_ch * r / pq.p))


# ---------------------------------------------------------------------------
# Function-level transport
# ---------------------------------------------------------------------------

def hyp_from_trig(pq: ParamPair, x: float) -> HypPair:
    """sinh_{p,q} x and cosh_{p,q} x computed through sin_{r,q} and cos_{r,q}."""
    dual = pq.dual()
    if x == 0.0:
        return HypPair(0.0, 1.0)
    s = sin_pq(dual, x).value
    c = cos_pq(dual, x).value
    return hyp_values_from_trig(pq, s, c)


def trig_from_hyp(pq: ParamPair, x: float) -> TrigPair:
    """sin_{p,q} x and cos_{p,q} x computed through sinh_{r,q} and cosh_{r,q}."""
    dual = pq.dual()
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"trig_from_hyp needs a finite x >= 0, got x={x!r}")
    if x >= sin_limit(pq):
        raise DomainError(
            f"x={x!r} is outside [0, {sin_limit(pq):.17g}), "
            f"the domain of sin_{{{pq.p:g},{pq.q:g}}}"
        )
    if x == 0.0:
        return TrigPair(0.0, 1.0)
    sh = sinh_pq(dual, x).value
    ch = cosh_pq(dual, x).value
    return trig_values_from_hyp(pq, sh, ch)


# ---------------------------------------------------------------------------
# Convertible parameters
# ---------------------------------------------------------------------------

def dual_pairs(q: float) -> list[DualPair]:
    """The six (trigonometric, hyperbolic) parameter correspondences for a given q.

    Each entry satisfies r_map(trig) == hyp.p (up to rounding).
    """
    if not math.isfinite(q) or q <= 1.0:
        raise DomainError(f"dual_pairs needs q > 1, got q={q!r}")
    q_star = q / (q - 1.0)
    mid = 2.0 * q / (2.0 + q)
    rows = [
        ((q_star, 2.0), (mid, 2.0)),
        ((2.0, q), (mid, q)),
        ((q_star, q), (q / 2.0, q)),
        ((q / 2.0, q), (q_star, q)),
        ((mid, q), (2.0, q)),
        ((mid, 2.0), (q_star, 2.0)),
    ]
    return [DualPair(ParamPair(*trig), ParamPair(*hyp)) for trig, hyp in rows]
