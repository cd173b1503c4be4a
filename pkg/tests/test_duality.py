"""Tests for the hyperbolic/trigonometric transport."""

import math

import pytest

from pqtrig.duality import (
    dual_pairs,
    hyp_from_trig,
    hyp_values_from_trig,
    trig_from_hyp,
    trig_values_from_hyp,
)
from pqtrig.errors import DomainError
from pqtrig.gtf import cos_pq, cosh_pq, sin_limit, sin_pq, sinh_pq
from pqtrig.params import ParamPair, r_map


class TestClassical:
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_hyp_from_trig(self, classical, x):
        sh, ch = hyp_from_trig(classical, x)
        assert sh == pytest.approx(math.sinh(x), rel=1e-12)
        assert ch == pytest.approx(math.cosh(x), rel=1e-12)

    @pytest.mark.parametrize("x", [0.3, 1.0, 1.4])
    def test_trig_from_hyp(self, classical, x):
        s, c = trig_from_hyp(classical, x)
        assert s == pytest.approx(math.sin(x), abs=1e-12)
        assert c == pytest.approx(math.cos(x), abs=1e-12)

    def test_zero(self, classical):
        assert hyp_from_trig(classical, 0.0) == (0.0, 1.0)
        assert trig_from_hyp(classical, 0.0) == (0.0, 1.0)


class TestAgainstDirect:
    @pytest.mark.parametrize("p,q", [(1.5, 6.0), (2.0, 6.0), (3.0, 2.0), (0.9, 2.0), (2.0, 4.0)])
    def test_hyperbolic_side(self, p, q):
        pq = ParamPair(p, q)
        sh, ch = hyp_from_trig(pq, 0.3)
        assert sh == pytest.approx(sinh_pq(pq, 0.3).value, rel=1e-10)
        assert ch == pytest.approx(cosh_pq(pq, 0.3).value, rel=1e-10)

    @pytest.mark.parametrize("p,q", [(1.5, 6.0), (2.0, 6.0), (3.0, 2.0), (0.9, 2.0), (2.0, 4.0)])
    def test_trigonometric_side(self, p, q):
        pq = ParamPair(p, q)
        s, c = trig_from_hyp(pq, 0.3)
        assert s == pytest.approx(sin_pq(pq, 0.3).value, abs=1e-10)
        assert c == pytest.approx(cos_pq(pq, 0.3).value, abs=1e-10)

    def test_rejects_outside_sine_domain(self):
        pq = ParamPair(2.0, 2.0)
        with pytest.raises(DomainError, match="outside"):
            trig_from_hyp(pq, sin_limit(pq))

    def test_rejects_negative(self, classical):
        with pytest.raises(DomainError):
            trig_from_hyp(classical, -0.5)


class TestValueLevel:
    def test_involution(self):
        pq = ParamPair(1.5, 6.0)
        dual = pq.dual()
        s, c = sin_pq(dual, 0.4).value, cos_pq(dual, 0.4).value
        sh, ch = hyp_values_from_trig(pq, s, c)
        back = trig_values_from_hyp(dual, sh, ch)
        assert back.sin == pytest.approx(s, abs=1e-14)
        assert back.cos == pytest.approx(c, abs=1e-14)

    @pytest.mark.parametrize("c", [0.0, -0.5])
    def test_cos_must_be_positive(self, classical, c):
        with pytest.raises(DomainError, match="> 0"):
            hyp_values_from_trig(classical, 0.5, c)

    def test_cosh_must_be_at_least_one(self, classical):
        with pytest.raises(DomainError, match=">= 1"):
            trig_values_from_hyp(classical, 0.5, 0.99)


class TestDualPairs:
    @pytest.mark.parametrize("q", [1.5, 2.0, 3.0, 4.0, 6.0])
    def test_six_correspondences(self, q):
        rows = dual_pairs(q)
        assert len(rows) == 6
        for row in rows:
            assert r_map(row.trig) == pytest.approx(row.hyp.p, rel=1e-12)
            assert row.trig.q == row.hyp.q

    def test_q_six(self):
        hyp_ps = [row.hyp.p for row in dual_pairs(6.0)]
        assert hyp_ps == pytest.approx([1.5, 1.5, 3.0, 1.2, 2.0, 1.2])

    @pytest.mark.parametrize("q", [1.0, 0.5, math.nan])
    def test_rejects_bad_q(self, q):
        with pytest.raises(DomainError):
            dual_pairs(q)
