"""Parameter pairs (p, q), the conjugate exponent, the duality r-map and domain ends.

A ParamPair is validated once at construction: every downstream formula may
assume q > 1 and p > q/(q+1).

Usage:
    from pqtrig.params import ParamPair, half_period, r_map
    pq = ParamPair(3 / 2, 6)
    r_map(pq)          # 2.0
    half_period(pq)    # ExtReal(value=...)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pqtrig.errors import DomainError
from pqtrig.special import log_beta


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamPair:
    """Validated exponent pair with q > 1 and p > q/(q+1)."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise DomainError(f"Parameters must be finite, got p={self.p!r}, q={self.q!r}")
        if q <= 1.0:
            raise DomainError(f"q must be > 1, got q={q!r}")
        if p <= q / (q + 1.0):
            raise DomainError(
                f"p must be > q/(q+1) = {q / (q + 1.0):.17g} for q={q!r}, got p={p!r}"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def has_finite_period(self) -> bool:
        """True iff π_{p,q} is finite, i.e. p > 1."""
        return self.p > 1.0

    @property
    def p_star(self) -> float:
        return conjugate(self.p)

    @property
    def r(self) -> float:
        return r_map(self)

    def dual(self) -> ParamPair:
        """The pair (r, q) linking this pair's hyperbolic and trigonometric families."""
        return ParamPair(r_map(self), self.q)


@dataclass(frozen=True)
class ExtReal:
    """Positive real or +infinity (houses π_{p,q} and its halves)."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v == -math.inf:
            raise DomainError(f"ExtReal must be a positive real or +inf, got {self.value!r}")
        if v <= 0.0:
            raise DomainError(f"ExtReal finite value must be > 0, got {self.value!r}")
        object.__setattr__(self, "value", v)

    @classmethod
    def infinite(cls) -> ExtReal:
        return cls(math.inf)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def scaled(self, factor: float) -> ExtReal:
        return ExtReal(self.value * factor)

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return f"{self.value:.17g}" if self.is_finite else "inf"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def conjugate(p: float) -> float:
    """Hölder conjugate p* = p/(p-1), defined for p > 1."""
    if not math.isfinite(p) or p <= 1.0:
        raise DomainError(f"Conjugate exponent p* = p/(p-1) needs p > 1, got p={p!r}")
    return p / (p - 1.0)


def r_map(pq: ParamPair) -> float:
    """r = pq/(pq + p - q), so that 1/p + 1/r = 1 + 1/q."""
    p, q = pq.p, pq.q
    return p * q / (p * q + p - q)


def half_period(pq: ParamPair) -> ExtReal:
    """π_{p,q}/2 = (1/q) B(1/p*, 1/q) for p > 1, +infinity for p <= 1."""
    if not pq.has_finite_period:
        return ExtReal.infinite()
    return ExtReal(math.exp(log_beta(1.0 / conjugate(pq.p), 1.0 / pq.q)) / pq.q)


def pi_pq(pq: ParamPair) -> ExtReal:
    """π_{p,q}, twice the half period."""
    return half_period(pq).scaled(2.0)


def sin_domain_end(pq: ParamPair) -> ExtReal:
    """Right end of the domain of sin_{p,q}, cos_{p,q}, tan_{p,q} and τ_{p,q}."""
    return half_period(pq)


def sinh_domain_end(pq: ParamPair) -> ExtReal:
    """Right end of the domain of sinh_{p,q} and cosh_{p,q}: π_{r,q}/2."""
    return half_period(pq.dual())
