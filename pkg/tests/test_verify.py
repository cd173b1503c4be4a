"""Tests for the verification harness."""

import json
import math

import pandas as pd
import pytest
from pydantic import ValidationError

import pqtrig.verify as verify
from pqtrig.errors import DomainError
from pqtrig.formulas import FormulaId
from pqtrig.params import ParamPair, half_period
from pqtrig.verify import (
    SPECIAL_VALUE_NAMES,
    CheckReport,
    SuiteConfig,
    check_antiderivatives,
    check_chain,
    check_cs_symmetry,
    check_derivatives,
    check_dixon_doubling_cos,
    check_dixon_from_cos,
    check_dual_pairs,
    check_duality,
    check_duality_identities,
    check_formula,
    check_half_periods,
    check_hyperbolic_pythagorean,
    check_mai,
    check_maih,
    check_ode,
    check_ode_order,
    check_ode_sinh,
    check_phi_round_trip,
    check_pi_relations,
    check_pythagorean,
    check_r_involution,
    check_reflection,
    check_round_trip,
    check_special_value,
    check_tau_derivative,
    check_tau_identities,
    list_check_names,
    ode_oracle_sin,
    ode_oracle_sinh,
    reports_to_frame,
    run_suite,
    summarize,
    write_jsonl,
)


def _report(**overrides):
    fields = dict(name="X", grid="g", max_residual=1e-12, worst_point=0.5, passed=True,
                  tolerance=1e-9)
    fields.update(overrides)
    return CheckReport(**fields)


class TestCheckReport:
    def test_valid(self):
        report = _report()
        assert report.passed
        assert report.indeterminate == 0
        assert report.detail == {}

    def test_passed_must_match_residual(self):
        with pytest.raises(ValidationError, match="contradicts"):
            _report(max_residual=1e-3, passed=True)

    def test_infinite_residual_fails(self):
        assert not _report(max_residual=math.inf, passed=False).passed

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValidationError):
            _report(tolerance=0.0, passed=False)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            _report().name = "Y"


class TestIdentityChecks:
    def test_pythagorean(self, classical):
        report = check_pythagorean(classical, n_points=5)
        assert report.name == "PYTHAGOREAN[p=2,q=2]"
        assert report.passed
        assert 0.0 < report.worst_point < math.pi / 2

    def test_pythagorean_unbounded_sine(self):
        assert check_pythagorean(ParamPair(0.9, 2.0), n_points=5).passed

    def test_hyperbolic_pythagorean(self):
        assert check_hyperbolic_pythagorean(ParamPair(1.5, 6.0), n_points=5).passed

    def test_round_trip(self):
        report = check_round_trip(ParamPair(3.0, 2.0), n_points=5)
        assert report.passed
        assert "max_sinh_round_trip" in report.detail

    def test_derivatives(self):
        report = check_derivatives(ParamPair(1.5, 3.0), n_points=5)
        assert report.passed
        assert report.tolerance == 1e-6

    def test_duality(self):
        assert check_duality(ParamPair(1.5, 6.0), n_points=5).passed

    def test_reflection(self):
        assert check_reflection(ParamPair(3.0, 4.0)).passed

    def test_reflection_needs_p_above_one(self, tanh_pair):
        with pytest.raises(DomainError):
            check_reflection(tanh_pair)

    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (1.5, 3.0), (0.95, 2.0)])
    def test_duality_identities(self, p, q):
        report = check_duality_identities(ParamPair(p, q), n_points=8)
        assert report.passed, report

    def test_tau_derivative(self):
        report = check_tau_derivative(ParamPair(1.5, 3.0), n_points=8)
        assert report.name == "TAU_DERIVATIVE[p=1.5,q=3]"
        assert report.tolerance == 1e-6
        assert report.passed, report

    def test_tau(self):
        assert check_tau_identities(ParamPair(1.5, 3.0), n_points=5).passed

    def test_tight_tolerance_fails_without_raising(self, classical):
        report = check_pythagorean(classical, n_points=5, tolerance=1e-300)
        assert not report.passed or report.max_residual == 0.0

    def test_rejects_non_positive_tolerance(self, classical):
        with pytest.raises(DomainError, match="tolerance"):
            check_pythagorean(classical, tolerance=0.0)


class TestInequalities:
    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (1.5, 3.0), (0.9, 2.0), (4.0, 6.0)])
    def test_mai(self, p, q):
        report = check_mai(ParamPair(p, q), n_points=10)
        assert report.passed
        assert report.tolerance > 0
        assert report.detail["min_upper_margin"] > 0

    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (1.5, 3.0), (1.0, 4.0)])
    def test_maih(self, p, q):
        report = check_maih(ParamPair(p, q), n_points=10)
        assert report.passed
        assert "intermediate_min_margin" in report.detail

    def test_needs_two_points(self, classical):
        with pytest.raises(DomainError):
            check_mai(classical, n_points=1)
        with pytest.raises(DomainError):
            check_maih(classical, n_points=1)


class TestOde:
    def test_oracle_matches_sine(self, classical):
        df = ode_oracle_sin(classical, 1.0, 1000)
        assert list(df.columns) == ["x", "u", "du"]
        assert len(df) == 1001
        assert df["u"].iloc[-1] == pytest.approx(math.sin(1.0), abs=1e-10)
        assert df["du"].iloc[-1] == pytest.approx(math.cos(1.0), abs=1e-10)

    def test_oracle_tanh(self, tanh_pair):
        df = ode_oracle_sin(tanh_pair, 2.0, 2000)
        assert df["u"].iloc[-1] == pytest.approx(math.tanh(2.0), abs=1e-10)

    def test_oracle_sinh(self, classical):
        df = ode_oracle_sinh(classical, 1.0, 1000)
        assert df["u"].iloc[-1] == pytest.approx(math.sinh(1.0), abs=1e-10)

    def test_too_few_steps(self, classical):
        with pytest.raises(DomainError, match="steps"):
            ode_oracle_sin(classical, 1.0, 99)

    @pytest.mark.parametrize("x_max", [0.0, -1.0, 1.5, math.inf])
    def test_bad_range(self, classical, x_max):
        with pytest.raises(DomainError, match="x_max"):
            ode_oracle_sin(classical, x_max, 1000)

    def test_check_ode(self):
        report = check_ode(ParamPair(1.5, 3.0), steps=2000)
        assert report.passed
        assert report.name == "ODE_SIN[p=1.5,q=3]"

    def test_oracle_sinh_slope(self):
        pq = ParamPair(2.0, 6.0)
        df = ode_oracle_sinh(pq, 0.5, 1000)
        assert list(df.columns) == ["x", "u", "du"]
        assert (df["du"] >= 1.0).all()
        assert df["du"].iloc[-1] == pytest.approx(
            (1.0 + df["u"].iloc[-1] ** 6) ** 0.5, rel=1e-14
        )

    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (1.5, 3.0)])
    def test_check_ode_sinh(self, p, q):
        report = check_ode_sinh(ParamPair(p, q))
        assert report.name == f"ODE_SINH[p={p:g},q={q:g}]"
        assert report.passed, report

    def test_fourth_order(self, classical):
        report = check_ode_order(classical)
        assert report.passed
        assert report.detail["ratio"] == pytest.approx(16.0, rel=0.2)


class TestAntiderivatives:
    @pytest.mark.parametrize("q", [2.0, 3.0, 4.0])
    def test_reading_a(self, q):
        end = half_period(ParamPair(2.0, q)).value
        report = check_antiderivatives(q, 0.2 * end, 0.8 * end)
        assert report.passed
        assert report.detail["preferred_reading"] == "A"

    def test_classical_integrals(self):
        report = check_antiderivatives(2.0, 0.5, 1.0)
        expected = math.log(math.tan(0.5)) - math.log(math.tan(0.25))
        assert report.detail["sin_integral"] == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, 0.5), (0.5, 2.0)])
    def test_precondition(self, a, b):
        with pytest.raises(DomainError, match="0 < a < b"):
            check_antiderivatives(2.0, a, b)


class TestFormulaChecks:
    def test_fixed_formula(self):
        report = check_formula(FormulaId.DA_SIN_2_4, n_points=10)
        assert report.name == "DA_SIN_2_4"
        assert report.passed

    def test_parametrised_formula(self):
        report = check_formula(FormulaId.MAF1_SIN, q=3.0, n_points=10)
        assert report.name == "MAF1_SIN[q=3]"
        assert report.passed

    def test_bounded_formula_keeps_absolute_residual(self):
        report = check_formula(FormulaId.DA_SIN_3_6, n_points=20)
        assert report.detail["max_abs_residual"] == pytest.approx(report.max_residual, abs=1e-300)

    def test_growing_formula_keeps_absolute_residual(self):
        report = check_formula(FormulaId.DA_SINH_2_6, n_points=20)
        assert report.passed, report
        assert report.detail["max_abs_residual"] >= report.max_residual

    @pytest.mark.parametrize("kind", ["maf1", "maf2"])
    def test_chain(self, kind):
        report = check_chain(kind, 3.0, n_points=10)
        assert report.name == f"CHAIN_{kind.upper()}[q=3]"
        assert report.passed, report

    def test_dixon_doubling_flags_quoted_denominator(self):
        report = check_dixon_doubling_cos(n_points=20)
        assert report.passed, report
        assert report.detail["printed_denominator_max_residual"] > report.tolerance

    def test_dixon_from_cos(self):
        report = check_dixon_from_cos(n_points=20)
        assert report.name == "DIXON_FROM_COS_6_5_3"
        assert report.passed, report

    def test_cs_symmetry(self):
        report = check_cs_symmetry(n_points=20)
        assert report.name == "CS_SYMMETRY"
        assert report.passed, report

    @pytest.mark.parametrize("name", SPECIAL_VALUE_NAMES)
    def test_special_values(self, name):
        report = check_special_value(name)
        assert report.passed, report

    def test_unknown_special_value(self):
        with pytest.raises(DomainError, match="Unknown special value"):
            check_special_value("SPECIAL_NOPE")


class TestStructuralChecks:
    def test_r_involution(self):
        pairs = [ParamPair(p, q) for p, q in verify.default_pair_grid()]
        report = check_r_involution(pairs)
        assert report.tolerance == 1e-12
        assert report.passed, report

    def test_dual_pairs(self):
        report = check_dual_pairs([2.0, 3.0, 4.0, 6.0])
        assert report.passed, report

    def test_half_periods_skip_infinite(self):
        pairs = [ParamPair(2.0, 2.0), ParamPair(1.5, 3.0), ParamPair(0.9, 2.0)]
        report = check_half_periods(pairs)
        assert report.grid == "2 pairs with p > 1"
        assert report.passed, report

    def test_pi_relations(self):
        pairs = [ParamPair(2.0, 2.0), ParamPair(1.5, 3.0), ParamPair(3.0, 1.5)]
        report = check_pi_relations(pairs, [2.0, 3.0, 4.0, 6.0])
        assert report.name == "PI_RELATIONS"
        assert report.passed, report

    def test_pi_relations_catch_a_wrong_constant(self, monkeypatch):
        real = verify.half_period

        def skewed(pq):
            result = real(pq)
            if pq.p == 1.5 and pq.q == 3.0:
                return type(result)(result.value * (1.0 + 1e-6))
            return result

        monkeypatch.setattr(verify, "half_period", skewed)
        report = check_pi_relations([ParamPair(1.5, 3.0)], [])
        assert not report.passed

    def test_phi_round_trip(self):
        report = check_phi_round_trip()
        assert report.grid == "101 points on [0, 1]"
        assert report.passed, report


def _only(**fields):
    return SuiteConfig.empty().model_copy(update=fields)


class TestSuite:
    def test_empty_config(self):
        assert run_suite(1e-9, SuiteConfig.empty()) == []

    def test_names_are_unique(self):
        names = list_check_names()
        assert len(names) == len(set(names))
        assert names[0] == "R_INVOLUTION"

    def test_prefix_filter(self):
        config = SuiteConfig(name_prefix="SPECIAL_")
        assert list_check_names(config) == list(SPECIAL_VALUE_NAMES)

    def test_single_check_filter(self):
        assert list_check_names(SuiteConfig(name_prefix="DA_SIN_3_2_2")) == ["DA_SIN_3_2_2"]

    def test_pair_checks(self):
        reports = run_suite(1e-9, _only(pair_grid=[(2.0, 2.0)], identity_points=5))
        assert [r.name for r in reports] == [
            "PYTHAGOREAN[p=2,q=2]",
            "PYTHAGOREAN_HYP[p=2,q=2]",
            "ROUND_TRIP[p=2,q=2]",
            "DERIVATIVES[p=2,q=2]",
            "DUALITY[p=2,q=2]",
            "DUALITY_IDENTITIES[p=2,q=2]",
        ]
        assert all(r.passed for r in reports)

    def test_default_suite_passes(self):
        reports = run_suite()
        failed = [r.name for r in reports if not r.passed]
        assert failed == [], failed
        assert len(reports) == len(list_check_names())

    def test_deterministic(self):
        config = _only(special_values=True)
        first = run_suite(1e-9, config)
        second = run_suite(1e-9, config)
        assert first == second

    def test_tolerance_below_precision_fails(self):
        reports = run_suite(1e-300, _only(special_values=True))
        assert summarize(reports)["failed"] > 0

    def test_rejects_bad_tolerance(self):
        with pytest.raises(DomainError):
            run_suite(-1.0, SuiteConfig.empty())

    def test_raising_check_becomes_failed_report(self, monkeypatch):
        def boom(name, tolerance=None):
            raise DomainError("boom")

        monkeypatch.setattr(verify, "check_special_value", boom)
        reports = run_suite(1e-9, _only(special_values=True))
        assert len(reports) == len(SPECIAL_VALUE_NAMES)
        assert not any(r.passed for r in reports)
        assert reports[0].detail["first_error"] == "boom"
        assert reports[0].max_residual == math.inf


class TestReportOutput:
    def test_summarize(self):
        reports = [_report(), _report(name="Y", max_residual=1.0, passed=False, indeterminate=2)]
        assert summarize(reports) == {
            "total": 2, "passed": 1, "failed": 1, "indeterminate_points": 2,
        }

    def test_frame(self):
        reports = [_report(), _report(name="Y", worst_point=None)]
        df = reports_to_frame(reports)
        assert isinstance(df, pd.DataFrame)
        assert list(df["name"]) == ["X", "Y"]
        assert "detail" not in df.columns

    def test_jsonl(self, tmp_path):
        reports = [_report(), _report(name="Y", detail={"note": "n"})]
        path = write_jsonl(reports, tmp_path / "reports.jsonl")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        assert json.loads(lines[1])["detail"] == {"note": "n"}
        assert CheckReport.model_validate_json(lines[0]) == reports[0]
