"""Tests for the closed-form formula registry and the addition laws."""

import math

import pytest

from pqtrig.errors import DomainError, FormulaDomainError, NearDegenerateError
from pqtrig.formulas import (
    FormulaEval,
    FormulaId,
    chain_consistency,
    cox_shurman_add,
    dixon_add,
    dixon_double_printed_cos,
    dixon_from_cos_6_5_3,
    double_angle,
    evaluate,
    get_formula,
    list_formulas,
    maf1,
    maf1_domain_end,
    maf2,
    phi,
    phi_inv,
    phi_psi,
    psi,
    sweep_points,
)
from pqtrig.gtf import cos_pq, sin_pq
from pqtrig.params import ParamPair, half_period


def _registry_cases():
    cases = []
    for fid in FormulaId:
        spec = get_formula(fid)
        if spec.q_parametrized:
            cases.extend((fid, q) for q in spec.default_q_values)
        else:
            cases.append((fid, None))
    return cases


class TestFormulaEval:
    def test_residual(self):
        ev = FormulaEval(1.0, 1.5)
        assert ev.residual == 0.5
        assert ev.scaled_residual == pytest.approx(0.5 / 1.5)

    def test_scaled_residual_small_rhs(self):
        assert FormulaEval(0.1, 0.2).scaled_residual == pytest.approx(0.1)


class TestRegistry:
    def test_every_id_registered(self):
        assert list_formulas() == list(FormulaId)
        assert len(list_formulas()) == 23

    def test_lookup_by_string(self):
        assert get_formula("DA_SIN_2_4").formula_id is FormulaId.DA_SIN_2_4

    def test_unknown_id(self):
        with pytest.raises(DomainError, match="Unknown formula"):
            get_formula("NOPE")

    @pytest.mark.parametrize("fid,q", _registry_cases())
    def test_holds_on_interior_points(self, fid, q):
        for x in sweep_points(fid, 5, q):
            assert evaluate(fid, x, q).scaled_residual <= 1e-9, (fid, q, x)

    def test_q_required(self):
        with pytest.raises(DomainError, match="q must be"):
            evaluate(FormulaId.MAF1_SIN, 0.1)

    def test_fixed_formula_rejects_q(self):
        with pytest.raises(DomainError, match="fixed parameters"):
            evaluate(FormulaId.DA_SIN_2_4, 0.1, q=3.0)

    def test_outside_range(self):
        end = get_formula(FormulaId.DA_SIN_2_4).domain_end(None)
        with pytest.raises(DomainError, match="outside"):
            evaluate(FormulaId.DA_SIN_2_4, end)

    def test_double_angle_only_for_doubling(self):
        ev = double_angle(FormulaId.DA_SIN_2_4, 0.4)
        assert ev.residual < 1e-10
        with pytest.raises(DomainError, match="not a double-angle"):
            double_angle(FormulaId.DIXON_ADD_SIN, 0.4)


class TestSweepPoints:
    def test_interior_grid(self):
        end = half_period(ParamPair(2.0, 4.0)).value / 2.0
        points = sweep_points(FormulaId.DA_SIN_2_4, 4)
        assert points == pytest.approx([end * k / 5 for k in range(1, 5)])

    def test_infinite_range_uses_window(self):
        points = sweep_points(FormulaId.MAF2_SIN, 9, q=2.0)
        assert points == pytest.approx([0.2 * k for k in range(1, 10)])


class TestMultipleAngle:
    def test_classical_maf1(self):
        x = 0.3
        v = maf1(2.0, x)
        assert v.sin2q_at_scaled == pytest.approx(math.sin(2 * x), abs=1e-12)
        assert v.cos2q_at_scaled == pytest.approx(math.cos(2 * x), abs=1e-12)
        assert v.sinh_at_scaled == pytest.approx(math.tan(2 * x), rel=1e-11)

    def test_classical_maf2(self):
        x = 0.7
        v = maf2(2.0, x)
        assert v.sinh2q == pytest.approx(math.sinh(2 * x), rel=1e-12)
        assert v.cosh2q == pytest.approx(math.cosh(2 * x), rel=1e-12)
        assert v.sin2q_dual == pytest.approx(math.tanh(2 * x), abs=1e-12)

    def test_maf1_domain(self):
        with pytest.raises(DomainError):
            maf1(3.0, maf1_domain_end(3.0))

    @pytest.mark.parametrize("kind", ["maf1", "maf2"])
    @pytest.mark.parametrize("q", [1.5, 3.0, 6.0])
    def test_chain(self, kind, q):
        assert chain_consistency(kind, q, 0.2) < 1e-10

    def test_unknown_chain(self):
        with pytest.raises(DomainError, match="Unknown chain"):
            chain_consistency("maf3", 3.0, 0.2)


class TestPhiPsi:
    @pytest.mark.parametrize("x", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_phi_inverts(self, x):
        assert phi(phi_inv(x)) == pytest.approx(x, abs=1e-12)

    def test_endpoints(self):
        assert phi(0.0) == 0.0
        assert phi(1.0) == 1.0
        assert phi_inv(1.0) == 1.0
        assert psi(0.0) == 0.0

    def test_bundle(self):
        assert phi_psi(0.5) == (phi(0.5), psi(0.5), phi_inv(0.5))

    @pytest.mark.parametrize("x", [-0.1, 1.1, math.nan])
    def test_unit_interval(self, x):
        with pytest.raises(DomainError):
            phi(x)

    def test_quarter_value(self):
        pq = ParamPair(1.5, 2.0)
        quarter = half_period(pq).value / 2.0
        assert sin_pq(pq, quarter).value == pytest.approx(0.834896, abs=1e-6)


class TestDixon:
    def test_addition(self):
        pq = ParamPair(1.5, 3.0)
        v = dixon_add(0.4, 0.3)
        assert v.sin_sum == pytest.approx(sin_pq(pq, 0.7).value, abs=1e-10)
        assert v.cos_sum == pytest.approx(math.sqrt(cos_pq(pq, 0.7).value), abs=1e-10)

    def test_equal_arguments_dispatch_to_doubling(self):
        pq = ParamPair(1.5, 3.0)
        v = dixon_add(0.5, 0.5)
        assert v.sin_sum == pytest.approx(sin_pq(pq, 1.0).value, abs=1e-10)
        assert v.cos_sum == pytest.approx(math.sqrt(cos_pq(pq, 1.0).value), abs=1e-10)

    def test_printed_denominator_differs(self):
        assert abs(dixon_double_printed_cos(0.5) - dixon_add(0.5, 0.5).cos_sum) > 1e-3

    def test_near_equal_arguments(self):
        with pytest.raises(NearDegenerateError, match="denominator"):
            dixon_add(0.3, math.nextafter(0.3, 1.0))

    def test_near_degenerate_is_formula_domain_error(self):
        assert issubclass(NearDegenerateError, FormulaDomainError)
        assert issubclass(FormulaDomainError, DomainError)

    def test_sum_outside_range(self):
        end = half_period(ParamPair(1.5, 3.0)).value
        with pytest.raises(DomainError):
            dixon_add(0.6 * end, 0.5 * end)

    def test_from_cos_6_5_3(self):
        assert dixon_from_cos_6_5_3(0.5).residual < 1e-10


class TestCoxShurman:
    def test_addition(self):
        pq = ParamPair(2.0, 3.0)
        assert cox_shurman_add(0.3, 0.5) == pytest.approx(sin_pq(pq, 0.8).value, abs=1e-10)

    def test_symmetric(self):
        assert cox_shurman_add(0.3, 0.5) == pytest.approx(cox_shurman_add(0.5, 0.3), abs=1e-12)

    def test_zero_reduction(self):
        pq = ParamPair(2.0, 3.0)
        assert cox_shurman_add(0.4, 0.0) == sin_pq(pq, 0.4).value
        assert cox_shurman_add(0.0, 0.4) == sin_pq(pq, 0.4).value

    def test_doubling(self):
        pq = ParamPair(2.0, 3.0)
        assert cox_shurman_add(0.4, 0.4) == pytest.approx(sin_pq(pq, 0.8).value, abs=1e-10)

    def test_rejects_argument_beyond_half_period(self):
        end = half_period(ParamPair(2.0, 3.0)).value
        with pytest.raises(DomainError):
            cox_shurman_add(end, 0.1)
