"""Closed-form multiple-angle, double-angle and addition formulas.

Each formula is registered under a FormulaId together with the end of its
argument range and an evaluator returning FormulaEval(lhs, rhs, residual):
lhs is the closed form evaluated from function values at the small argument,
rhs is the direct inversion-based value at the combined argument.

Two-argument addition laws are registered along the line (u, v) = (x, x/2);
the dedicated functions `dixon_add` and `cox_shurman_add` take both arguments.

Usage:
    from pqtrig.formulas import FormulaId, evaluate, sweep_points
    ev = evaluate(FormulaId.DA_SIN_3_6, 0.4)
    ev.residual                      # |lhs - rhs|
    evaluate("MAF1_SIN", 0.3, q=4)   # q-parametrised ids need q
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

from pqtrig.duality import hyp_values_from_trig, trig_values_from_hyp
from pqtrig.errors import DomainError, FormulaDomainError, NearDegenerateError
from pqtrig.gtf import cos_pq, cosh_pq, sin_pq, sinh_pq, tau_pq
from pqtrig.params import ParamPair, conjugate, half_period

logger = logging.getLogger(__name__)

DEGENERATE_DENOMINATOR = 1e-14
INFINITE_SWEEP_END = 2.0
MAF_Q_VALUES = (1.5, 2.0, 3.0, 4.0, 6.0)
TAU_Q_VALUES = (2.0, 3.0, 4.0, 6.0)

_SILVER_LO = 3.0 - 2.0 * math.sqrt(2.0)
_SILVER_HI = 3.0 + 2.0 * math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

class FormulaId(str, Enum):
    MAF1_SIN = "MAF1_SIN"
    MAF1_COS = "MAF1_COS"
    MAF1_SINH = "MAF1_SINH"
    MAF1_COSH = "MAF1_COSH"
    MAF2_SINH = "MAF2_SINH"
    MAF2_COSH = "MAF2_COSH"
    MAF2_SIN = "MAF2_SIN"
    MAF2_COS = "MAF2_COS"
    DA_SINH_2_6 = "DA_SINH_2_6"
    DA_COSH_2_6 = "DA_COSH_2_6"
    DA_SIN_3_2_6 = "DA_SIN_3_2_6"
    DA_SIN_3_6 = "DA_SIN_3_6"
    DA_SIN_6_5_3 = "DA_SIN_6_5_3"
    DA_SIN_3_2_2 = "DA_SIN_3_2_2"
    DIXON_ADD_SIN = "DIXON_ADD_SIN"
    DIXON_ADD_COS = "DIXON_ADD_COS"
    DIXON_DOUBLE = "DIXON_DOUBLE"
    CS_ADD = "CS_ADD"
    CS_DOUBLE = "CS_DOUBLE"
    DA_SINH_2_4 = "DA_SINH_2_4"
    DA_SIN_2_4 = "DA_SIN_2_4"
    DA_SIN_4_3_4 = "DA_SIN_4_3_4"
    TAU_DOUBLE = "TAU_DOUBLE"


@dataclass(frozen=True)
class FormulaEval:
    """Closed form (lhs) against direct evaluation (rhs)."""

    lhs: float
    rhs: float
    residual: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", abs(self.lhs - self.rhs))

    @property
    def scaled_residual(self) -> float:
        """|lhs - rhs| / max(1, |rhs|), used where the function grows without bound."""
        return self.residual / max(1.0, abs(self.rhs))


@dataclass(frozen=True)
class FormulaSpec:
    """Registry entry: argument range [0, domain_end(q)) and evaluator(x, q)."""

    formula_id: FormulaId
    description: str
    domain_end: Callable[[float | None], float]
    evaluator: Callable[[float, float | None], FormulaEval]
    q_parametrized: bool = False
    doubling: bool = False
    default_q_values: tuple[float, ...] = ()


class Maf1Values(NamedTuple):
    sin2q_at_scaled: float
    cos2q_at_scaled: float
    sinh_at_scaled: float
    cosh_at_scaled: float


class Maf2Values(NamedTuple):
    sinh2q: float
    cosh2q: float
    sin2q_dual: float
    cos2q_dual: float


class PhiPsi(NamedTuple):
    phi: float
    psi: float
    phi_inv: float


class DixonValues(NamedTuple):
    """sin_{3/2,3}(u+v) and cos^{1/2}_{3/2,3}(u+v)."""

    sin_sum: float
    cos_sum: float


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def _half(p: float, q: float) -> float:
    """π_{p,q}/2 as a float (inf when p <= 1)."""
    return half_period(ParamPair(p, q)).value


def _require(x: float, end: float, label: str) -> None:
    if not math.isfinite(x) or x < 0.0 or x >= end:
        raise DomainError(f"{label}: x={x!r} is outside [0, {end:.17g})")


def _check_q(q: float | None) -> float:
    if q is None or not math.isfinite(q) or q <= 1.0:
        raise DomainError(f"q must be a finite number > 1, got q={q!r}")
    return float(q)


def _one_minus_power(y: float, q: float) -> float:
    return -math.expm1(q * math.log(y)) if y > 0.0 else 1.0


def _sin(p: float, q: float, x: float) -> float:
    return sin_pq(ParamPair(p, q), x).value


def _cos(p: float, q: float, x: float) -> float:
    return cos_pq(ParamPair(p, q), x).value


def _sinh(p: float, q: float, x: float) -> float:
    return sinh_pq(ParamPair(p, q), x).value


def _cosh(p: float, q: float, x: float) -> float:
    return cosh_pq(ParamPair(p, q), x).value


def _dual_mid(q: float) -> float:
    return 2.0 * q / (q + 2.0)


# ---------------------------------------------------------------------------
# Multiple-angle formulas
# ---------------------------------------------------------------------------

def maf1_domain_end(q: float | None) -> float:
    """π_{q*,q}/4."""
    q = _check_q(q)
    return _half(conjugate(q), q) / 2.0


def maf2_domain_end(q: float | None) -> float:
    """π_{q/2,q}/2, infinite for q <= 2."""
    q = _check_q(q)
    return _half(q / 2.0, q)


def _maf1_trig(q: float, x: float) -> tuple[float, float]:
    a = 2.0 ** (2.0 / q)
    q_star = conjugate(q)
    s = _sin(q_star, q, x)
    c = _cos(q_star, q, x)
    return a * s * c ** (q_star - 1.0), c**q_star - s**q


def _maf1_hyp(q: float, x: float) -> tuple[float, float]:
    a = 2.0 ** (2.0 / q)
    sh = _sinh(q / 2.0, q, x)
    if sh**q >= 1.0:
        raise FormulaDomainError(
            f"sinh_{{q/2,q}}^q x must be < 1 for q={q:g}, x={x!r}; got {sh**q!r}"
        )
    gap = _one_minus_power(sh, q)
    return a * sh / gap ** (2.0 / q), ((1.0 + sh**q) / gap) ** (2.0 / q + 1.0)


def maf1(q: float, x: float) -> Maf1Values:
    """Right-hand sides for sin_{2,q}, cos_{2,q}, sinh_{2q/(q+2),q}, cosh_{2q/(q+2),q} at 2^{2/q}x.

    Valid for 0 <= x < π_{q*,q}/4.
    """
    q = _check_q(q)
    _require(x, maf1_domain_end(q), f"maf1 (q={q:g})")
    sin_v, cos_v = _maf1_trig(q, x)
    sinh_v, cosh_v = _maf1_hyp(q, x)
    return Maf1Values(sin_v, cos_v, sinh_v, cosh_v)


def _maf2_hyp(q: float, x: float) -> tuple[float, float]:
    a = 2.0 ** (2.0 / q)
    q_star = conjugate(q)
    sh = _sinh(q_star, q, x)
    ch = _cosh(q_star, q, x)
    return a * sh * ch ** (q_star - 1.0), ch**q_star + sh**q


def _maf2_trig(q: float, x: float) -> tuple[float, float]:
    a = 2.0 ** (2.0 / q)
    s = _sin(q / 2.0, q, x)
    sq = s**q
    ratio = _one_minus_power(s, q) / (1.0 + sq)
    return a * s / (1.0 + sq) ** (2.0 / q), ratio ** (2.0 / q + 1.0)


def maf2(q: float, x: float) -> Maf2Values:
    """Right-hand sides for sinh_{2,q}, cosh_{2,q}, sin_{2q/(q+2),q}, cos_{2q/(q+2),q} at 2^{2/q}x.

    Valid for 0 <= x < π_{q/2,q}/2 (every x >= 0 when q <= 2).
    """
    q = _check_q(q)
    _require(x, maf2_domain_end(q), f"maf2 (q={q:g})")
    sinh_v, cosh_v = _maf2_hyp(q, x)
    sin_v, cos_v = _maf2_trig(q, x)
    return Maf2Values(sinh_v, cosh_v, sin_v, cos_v)


def chain_consistency(kind: str, q: float, x: float) -> float:
    """Carry one pair of a multiple-angle formula through the duality and compare with the other.

    "maf1": (sin, cos)_{2,q} -> (sinh, cosh)_{2q/(q+2),q};
    "maf2": (sinh, cosh)_{2,q} -> (sin, cos)_{2q/(q+2),q}.
    Returns the larger scaled residual of the two components.
    """
    q = _check_q(q)
    target = ParamPair(_dual_mid(q), q)
    if kind == "maf1":
        _require(x, maf1_domain_end(q), f"maf1 chain (q={q:g})")
        sin_v, cos_v = _maf1_trig(q, x)
        carried = hyp_values_from_trig(target, sin_v, cos_v)
        direct = _maf1_hyp(q, x)
    elif kind == "maf2":
        _require(x, maf2_domain_end(q), f"maf2 chain (q={q:g})")
        sinh_v, cosh_v = _maf2_hyp(q, x)
        carried = trig_values_from_hyp(target, sinh_v, cosh_v)
        direct = _maf2_trig(q, x)
    else:
        raise DomainError(f"Unknown chain '{kind}'. Valid: ['maf1', 'maf2']")
    return max(abs(a - b) / max(1.0, abs(b)) for a, b in zip(carried, direct))


# ---------------------------------------------------------------------------
# Φ, Ψ and the (3/2, 2) doubling
# ---------------------------------------------------------------------------

def _check_unit(x: float, name: str) -> None:
    if not math.isfinite(x) or x < 0.0 or x > 1.0:
        raise DomainError(f"{name} needs 0 <= x <= 1, got x={x!r}")


def phi(x: float) -> float:
    """Φ(x) = sqrt(1 - R^3), R = (2 - 2x² + 2w)/(2 + x² + 2w), w = sqrt(1 - x³)."""
    _check_unit(x, "Φ")
    w = math.sqrt(_one_minus_power(x, 3.0))
    gap = 3.0 * x * x / (2.0 + x * x + 2.0 * w)  # 1 - R
    ratio = 1.0 - gap
    return math.sqrt(gap * (1.0 + ratio + ratio * ratio))


def psi(x: float) -> float:
    """Ψ(x) = 4x w (3 + w)³ / ((1 + w)(8 + x³)²), w = sqrt(1 - x³)."""
    _check_unit(x, "Ψ")
    w = math.sqrt(_one_minus_power(x, 3.0))
    return 4.0 * x * w * (3.0 + w) ** 3 / ((1.0 + w) * (8.0 + x**3) ** 2)


def phi_inv(x: float) -> float:
    """Φ⁻¹(x) = (6x - 2(1 - k)²)/(2 + k)², k = (1 - x²)^{1/3}."""
    _check_unit(x, "Φ⁻¹")
    if x == 1.0:
        k, gap = 0.0, 1.0
    else:
        gap = -math.expm1(math.log1p(-x * x) / 3.0)  # 1 - k
        k = 1.0 - gap
    return (6.0 * x - 2.0 * gap * gap) / (2.0 + k) ** 2


def phi_psi(x: float) -> PhiPsi:
    """The three scalar maps of the (3/2, 2) doubling at one point of [0, 1]."""
    return PhiPsi(phi(x), psi(x), phi_inv(x))


# ---------------------------------------------------------------------------
# Addition laws
# ---------------------------------------------------------------------------

def _dixon_end() -> float:
    return _half(1.5, 3.0)


def _dixon_double(u: float) -> DixonValues:
    s = _sin(1.5, 3.0, u)
    c = _cos(1.5, 3.0, u)
    root_c = math.sqrt(c)
    c32 = c * root_c
    den = root_c * (1.0 + s**3)
    return DixonValues(s * (1.0 + c32) / den, (c32 - s**3) / den)


def dixon_double_printed_cos(u: float) -> float:
    """cos^{1/2}_{3/2,3}(2u) with the denominator cos^{3/2}u(1 + sin³u) as it is usually quoted.

    Kept for comparison only; `dixon_add(u, u)` uses cos^{1/2}u(1 + sin³u).
    """
    _require(u, _dixon_end() / 2.0, "Dixon doubling")
    s = _sin(1.5, 3.0, u)
    c32 = _cos(1.5, 3.0, u) ** 1.5
    return (c32 - s**3) / (c32 * (1.0 + s**3))


def dixon_add(u: float, v: float) -> DixonValues:
    """sin_{3/2,3}(u+v) and cos^{1/2}_{3/2,3}(u+v) by Dixon's addition law.

    u == v (exact) dispatches to the doubling form. Near-equal arguments are not
    rescued: a denominator below 1e-14 raises NearDegenerateError.
    """
    end = _dixon_end()
    _require(u, end, "dixon_add u")
    _require(v, end, "dixon_add v")
    _require(u + v, end, "dixon_add u+v")
    if u == v:
        return _dixon_double(u)

    s_u, c_u = _sin(1.5, 3.0, u), _cos(1.5, 3.0, u)
    s_v, c_v = _sin(1.5, 3.0, v), _cos(1.5, 3.0, v)
    den = s_u * c_v - c_u * s_v
    if abs(den) < DEGENERATE_DENOMINATOR:
        raise NearDegenerateError(
            f"dixon_add({u!r}, {v!r}): denominator {den:.3g} vanishes; call dixon_add(u, u)"
        )
    root_u, root_v = math.sqrt(c_u), math.sqrt(c_v)
    sin_sum = (s_u * s_u * root_v - root_u * s_v * s_v) / den
    cos_sum = (s_u * root_u - root_v * s_v) / den
    return DixonValues(sin_sum, cos_sum)


def _cs_end() -> float:
    return _half(2.0, 3.0)


def _cs_double(x: float) -> float:
    s = _sin(2.0, 3.0, x)
    c = _cos(2.0, 3.0, x)
    return 4.0 * s * c * (3.0 + c) ** 3 / ((1.0 + c) * (8.0 + s**3) ** 2)


def cox_shurman_add(x: float, y: float) -> float:
    """sin_{2,3}(x+y) from s = sin_{2,3} and c = cos_{2,3} at x and y.

    Accepts x, y in [0, π_{2,3}/2) with x + y < π_{2,3}; the value at x + y beyond
    π_{2,3}/2 is the formula's own continuation. x == y dispatches to the doubling
    form, x == 0 or y == 0 returns the other sine.
    """
    end = _cs_end()
    _require(x, end, "cox_shurman_add x")
    _require(y, end, "cox_shurman_add y")
    _require(x + y, 2.0 * end, "cox_shurman_add x+y")
    if x == y:
        return _cs_double(x)
    if x == 0.0:
        return _sin(2.0, 3.0, y)
    if y == 0.0:
        return _sin(2.0, 3.0, x)

    s_x, c_x = _sin(2.0, 3.0, x), _cos(2.0, 3.0, x)
    s_y, c_y = _sin(2.0, 3.0, y), _cos(2.0, 3.0, y)
    gap_x = s_x**3 / (1.0 + c_x)  # 1 - c_x
    num = 2.0 * (s_x - s_y) * (gap_x * (1.0 + c_y) - s_x * s_y * s_y)
    den = (
        gap_x * (1.0 + c_y) ** 2
        - 2.0 * s_x * s_x * s_y * (1.0 + c_y)
        + s_x * s_y * s_y * (1.0 + c_x)
    )
    if abs(den) < DEGENERATE_DENOMINATOR:
        raise NearDegenerateError(
            f"cox_shurman_add({x!r}, {y!r}): denominator {den:.3g} vanishes"
        )
    return num / den


def dixon_from_cos_6_5_3(x: float) -> FormulaEval:
    """sin_{3/2,3}^{3/2}x against sqrt((1 - m)/(1 + m)), m = cos_{6/5,3}^{3/5}(2^{2/3}x).

    Valid for 0 <= x < π_{3/2,3}/2.
    """
    _require(x, _dixon_end(), "dixon_from_cos_6_5_3")
    s = _sin(6.0 / 5.0, 3.0, 2.0 ** (2.0 / 3.0) * x)
    m = math.sqrt(_one_minus_power(s, 3.0))  # cos^{3/5}
    lhs = s**1.5 / (1.0 + m)  # sqrt((1 - m)/(1 + m)) with 1 - m = s³/(1 + m)
    return FormulaEval(lhs, _sin(1.5, 3.0, x) ** 1.5)


# ---------------------------------------------------------------------------
# Registered evaluators
# ---------------------------------------------------------------------------

def _eval_maf1(part: int) -> Callable[[float, float | None], FormulaEval]:
    def evaluator(x: float, q: float | None) -> FormulaEval:
        q = _check_q(q)
        _require(x, maf1_domain_end(q), f"MAF1 (q={q:g})")
        y = 2.0 ** (2.0 / q) * x
        if part < 2:
            lhs = _maf1_trig(q, x)[part]
            rhs = (_sin if part == 0 else _cos)(2.0, q, y)
        else:
            lhs = _maf1_hyp(q, x)[part - 2]
            rhs = (_sinh if part == 2 else _cosh)(_dual_mid(q), q, y)
        return FormulaEval(lhs, rhs)

    return evaluator


def _eval_maf2(part: int) -> Callable[[float, float | None], FormulaEval]:
    def evaluator(x: float, q: float | None) -> FormulaEval:
        q = _check_q(q)
        _require(x, maf2_domain_end(q), f"MAF2 (q={q:g})")
        y = 2.0 ** (2.0 / q) * x
        if part < 2:
            lhs = _maf2_hyp(q, x)[part]
            rhs = (_sinh if part == 0 else _cosh)(2.0, q, y)
        else:
            lhs = _maf2_trig(q, x)[part - 2]
            rhs = (_sin if part == 2 else _cos)(_dual_mid(q), q, y)
        return FormulaEval(lhs, rhs)

    return evaluator


def _sinh_2_6_parts(x: float) -> tuple[float, float, float]:
    sh = _sinh(2.0, 6.0, x)
    ch = _cosh(2.0, 6.0, x)
    den = 1.0 - 8.0 * sh**6
    if den <= 0.0:
        raise FormulaDomainError(f"1 - 8 sinh_{{2,6}}^6 x must be > 0 at x={x!r}, got {den!r}")
    return sh, ch, den


def _da_sinh_2_6(x: float, q: float | None) -> FormulaEval:
    sh, ch, den = _sinh_2_6_parts(x)
    return FormulaEval(2.0 * sh * ch / math.sqrt(den), _sinh(2.0, 6.0, 2.0 * x))


def _da_cosh_2_6(x: float, q: float | None) -> FormulaEval:
    sh, _, den = _sinh_2_6_parts(x)
    s6 = sh**6
    return FormulaEval((1.0 + 20.0 * s6 - 8.0 * s6 * s6) / den**1.5, _cosh(2.0, 6.0, 2.0 * x))


def _da_sin_3_2_6(x: float, q: float | None) -> FormulaEval:
    s = _sin(1.5, 6.0, x)
    s6 = s**6
    den = 1.0 + 18.0 * s6 - 27.0 * s6 * s6
    if den <= 0.0:
        raise FormulaDomainError(f"1 + 18s^6 - 27s^12 must be > 0 at x={x!r}, got {den!r}")
    return FormulaEval(2.0 * s / den ** (1.0 / 3.0), _sin(1.5, 6.0, 2.0 * x))


def _da_sin_3_6(x: float, q: float | None) -> FormulaEval:
    s = _sin(3.0, 6.0, x)
    s3 = s**3
    s6 = s3 * s3
    plus = 1.0 + 6.0 * s3 + s6
    # 1 - 6s³ + s⁶ in factored form, zero at the quarter point
    minus = max((s3 - _SILVER_LO) * (s3 - _SILVER_HI), 0.0)
    den = (1.0 - s3) * plus**1.5 + (1.0 + s3) * minus**1.5
    lhs = 2.0 ** (5.0 / 3.0) * s * (1.0 + s6) / den ** (2.0 / 3.0)
    return FormulaEval(lhs, _sin(3.0, 6.0, 2.0 * x))


def _da_sin_6_5_3(x: float, q: float | None) -> FormulaEval:
    s = _sin(6.0 / 5.0, 3.0, x)
    m = math.sqrt(_one_minus_power(s, 3.0))  # cos_{6/5,3}^{3/5} x
    gap = s**3 / (1.0 + m)  # 1 - m
    den = 1.0 + 24.0 * m + 18.0 * m * m - 27.0 * m**4
    if den <= 0.0:
        raise FormulaDomainError(f"1 + 24m + 18m² - 27m⁴ must be > 0 at x={x!r}, got {den!r}")
    lhs = 4.0 * m ** (1.0 / 3.0) * (1.0 + 3.0 * m) * gap ** (1.0 / 3.0) / den ** (2.0 / 3.0)
    return FormulaEval(lhs, _sin(6.0 / 5.0, 3.0, 2.0 * x))


def _da_sin_3_2_2(x: float, q: float | None) -> FormulaEval:
    s = _sin(1.5, 2.0, x)
    return FormulaEval(phi(psi(phi_inv(s))), _sin(1.5, 2.0, 2.0 * x))


def _dixon_add_sin(x: float, q: float | None) -> FormulaEval:
    return FormulaEval(dixon_add(x, x / 2.0).sin_sum, _sin(1.5, 3.0, 1.5 * x))


def _dixon_add_cos(x: float, q: float | None) -> FormulaEval:
    return FormulaEval(dixon_add(x, x / 2.0).cos_sum, math.sqrt(_cos(1.5, 3.0, 1.5 * x)))


def _dixon_double_eval(x: float, q: float | None) -> FormulaEval:
    return FormulaEval(dixon_add(x, x).sin_sum, _sin(1.5, 3.0, 2.0 * x))


def _cs_add(x: float, q: float | None) -> FormulaEval:
    return FormulaEval(cox_shurman_add(x, x / 2.0), _sin(2.0, 3.0, 1.5 * x))


def _cs_double_eval(x: float, q: float | None) -> FormulaEval:
    return FormulaEval(cox_shurman_add(x, x), _sin(2.0, 3.0, 2.0 * x))


def _da_sinh_2_4(x: float, q: float | None) -> FormulaEval:
    sh = _sinh(2.0, 4.0, x)
    ch = _cosh(2.0, 4.0, x)
    den = 1.0 - sh**4
    if den <= 0.0:
        raise FormulaDomainError(f"1 - sinh_{{2,4}}^4 x must be > 0 at x={x!r}, got {den!r}")
    return FormulaEval(2.0 * sh * ch / den, _sinh(2.0, 4.0, 2.0 * x))


def _da_sin_2_4(x: float, q: float | None) -> FormulaEval:
    s = _sin(2.0, 4.0, x)
    c = _cos(2.0, 4.0, x)
    return FormulaEval(2.0 * s * c / (1.0 + s**4), _sin(2.0, 4.0, 2.0 * x))


def _da_sin_4_3_4(x: float, q: float | None) -> FormulaEval:
    s = _sin(4.0 / 3.0, 4.0, x)
    c = _cos(4.0 / 3.0, 4.0, x)
    c13 = c ** (1.0 / 3.0)
    lhs = 2.0 * s * c13 / math.sqrt(1.0 + 4.0 * s**4 * c13**4)
    return FormulaEval(lhs, _sin(4.0 / 3.0, 4.0, 2.0 * x))


def _tau_double(x: float, q: float | None) -> FormulaEval:
    q = _check_q(q)
    _require(x, maf1_domain_end(q), f"TAU_DOUBLE (q={q:g})")
    a = 2.0 ** (2.0 / q)
    t = tau_pq(ParamPair(conjugate(q), q), x)
    if t**q >= 1.0:
        raise FormulaDomainError(f"τ_{{q*,q}}^q x must be < 1 for q={q:g}, x={x!r}")
    lhs = a * t / _one_minus_power(t, q) ** (2.0 / q)
    return FormulaEval(lhs, tau_pq(ParamPair(2.0, q), a * x))


def _fixed(end: Callable[[], float]) -> Callable[[float | None], float]:
    def domain_end(q: float | None) -> float:
        if q is not None:
            raise DomainError("this formula has fixed parameters and takes no q")
        return end()

    return domain_end


_REGISTRY: dict[FormulaId, FormulaSpec] = {}


def _register(spec: FormulaSpec) -> None:
    _REGISTRY[spec.formula_id] = spec


_MAF1_IDS = (FormulaId.MAF1_SIN, FormulaId.MAF1_COS, FormulaId.MAF1_SINH, FormulaId.MAF1_COSH)
_MAF2_IDS = (FormulaId.MAF2_SINH, FormulaId.MAF2_COSH, FormulaId.MAF2_SIN, FormulaId.MAF2_COS)

for _i, _fid in enumerate(_MAF1_IDS):
    _register(FormulaSpec(
        _fid, "multiple-angle formula from (q*, q)", maf1_domain_end, _eval_maf1(_i),
        q_parametrized=True, default_q_values=MAF_Q_VALUES,
    ))
for _i, _fid in enumerate(_MAF2_IDS):
    _register(FormulaSpec(
        _fid, "multiple-angle formula, hyperbolic side from (q*, q)", maf2_domain_end,
        _eval_maf2(_i), q_parametrized=True, default_q_values=MAF_Q_VALUES,
    ))

_register(FormulaSpec(
    FormulaId.DA_SINH_2_6, "sinh_{2,6}(2x)", _fixed(lambda: _half(1.5, 6.0) / 2.0),
    _da_sinh_2_6, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_COSH_2_6, "cosh_{2,6}(2x)", _fixed(lambda: _half(1.5, 6.0) / 2.0),
    _da_cosh_2_6, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_3_2_6, "sin_{3/2,6}(2x)", _fixed(lambda: _half(1.5, 6.0) / 2.0),
    _da_sin_3_2_6, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_3_6, "sin_{3,6}(2x)", _fixed(lambda: _half(3.0, 6.0) / 2.0),
    _da_sin_3_6, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_6_5_3, "sin_{6/5,3}(2x)", _fixed(lambda: _half(6.0 / 5.0, 3.0) / 2.0),
    _da_sin_6_5_3, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_3_2_2, "sin_{3/2,2}(2x) = Φ∘Ψ∘Φ⁻¹(sin_{3/2,2}x)",
    _fixed(lambda: _half(1.5, 2.0) / 2.0), _da_sin_3_2_2, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DIXON_ADD_SIN, "sin_{3/2,3}(u+v) along (x, x/2)",
    _fixed(lambda: _dixon_end() / 1.5), _dixon_add_sin,
))
_register(FormulaSpec(
    FormulaId.DIXON_ADD_COS, "cos^{1/2}_{3/2,3}(u+v) along (x, x/2)",
    _fixed(lambda: _dixon_end() / 1.5), _dixon_add_cos,
))
_register(FormulaSpec(
    FormulaId.DIXON_DOUBLE, "sin_{3/2,3}(2u)", _fixed(lambda: _dixon_end() / 2.0),
    _dixon_double_eval, doubling=True,
))
_register(FormulaSpec(
    FormulaId.CS_ADD, "sin_{2,3}(x+y) along (x, x/2)", _fixed(lambda: _cs_end() / 1.5), _cs_add,
))
_register(FormulaSpec(
    FormulaId.CS_DOUBLE, "sin_{2,3}(2x)", _fixed(lambda: _cs_end() / 2.0), _cs_double_eval,
    doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SINH_2_4, "sinh_{2,4}(2x)", _fixed(lambda: _half(4.0 / 3.0, 4.0) / 2.0),
    _da_sinh_2_4, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_2_4, "sin_{2,4}(2x), lemniscate", _fixed(lambda: _half(2.0, 4.0) / 2.0),
    _da_sin_2_4, doubling=True,
))
_register(FormulaSpec(
    FormulaId.DA_SIN_4_3_4, "sin_{4/3,4}(2x)", _fixed(lambda: _half(4.0 / 3.0, 4.0) / 2.0),
    _da_sin_4_3_4, doubling=True,
))
_register(FormulaSpec(
    FormulaId.TAU_DOUBLE, "τ_{2,q}(2^{2/q}x) from τ_{q*,q}(x)", maf1_domain_end, _tau_double,
    q_parametrized=True, doubling=True, default_q_values=TAU_Q_VALUES,
))


# ---------------------------------------------------------------------------
# Public access
# ---------------------------------------------------------------------------

def get_formula(formula_id: FormulaId | str) -> FormulaSpec:
    """Look up a registry entry by id or by its string key."""
    try:
        key = FormulaId(formula_id)
    except ValueError:
        raise DomainError(
            f"Unknown formula '{formula_id}'. Valid: {[f.value for f in FormulaId]}"
        ) from None
    return _REGISTRY[key]


def list_formulas() -> list[FormulaId]:
    return list(_REGISTRY)


def evaluate(formula_id: FormulaId | str, x: float, q: float | None = None) -> FormulaEval:
    """Evaluate a registered formula at x (q required for q-parametrised ids)."""
    spec = get_formula(formula_id)
    end = spec.domain_end(q)
    _require(x, end, spec.formula_id.value)
    return spec.evaluator(x, q)


def double_angle(formula_id: FormulaId | str, x: float, q: float | None = None) -> FormulaEval:
    """Evaluate a doubling formula: lhs from values at x, rhs the function at the doubled point."""
    spec = get_formula(formula_id)
    if not spec.doubling:
        raise DomainError(f"{spec.formula_id.value} is not a double-angle formula")
    return evaluate(spec.formula_id, x, q)


def sweep_points(formula_id: FormulaId | str, n_points: int, q: float | None = None) -> list[float]:
    """Interior grid x_k = end·k/(n+1), k = 1..n; infinite ranges use [0, 2)."""
    spec = get_formula(formula_id)
    end = spec.domain_end(q)
    if not math.isfinite(end):
        end = INFINITE_SWEEP_END
    return [end * k / (n_points + 1) for k in range(1, n_points + 1)]
