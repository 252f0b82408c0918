"""Confluent hypergeometric pipeline and the Gauss 2F1."""

import math

import pytest

from trapfun import (ChfParams, beta, chf_c, chf_c_scaled, gauss_2f1,
                     kummer_m)
from trapfun.errors import DomainError, OverflowGuard
from trapfun.engine import MeshSpec
from trapfun.hypergeom import chf_report
from trapfun.scaled import ScaledReal

from helpers import assert_rel, rel

# independent high-precision oracle values (tests/oracles.py, mpmath)
CHF_SCALED_01_1_100 = 1.009176162478700e-2
M_01_02_1 = 1.823844396378180
F21_EULER_NEG2 = 0.8391926644427611
TWO_LN2 = 1.3862943611198906
B_01_01 = 19.714639489050162
B_01_10 = 7.591380000910990
CHF_005_005_1 = 73.31376806486321
CHF_SCALED_11_M800_SIG = 3.4079682151407082  # at exp10 = 344


class TestChfC:
    def test_e_minus_one(self):
        assert_rel(chf_c(ChfParams(1.0, 1.0, 1.0)), math.e - 1.0, 1e-13)

    def test_x_zero_is_beta(self):
        assert_rel(chf_c(ChfParams(1.0, 1.0, 0.0)), 1.0, 1e-14)

    def test_table7_x100(self):
        v = chf_c(ChfParams(0.1, 0.1, 100.0))
        assert v.exp10 == 44
        assert_rel(v.significand, 1.6150416242989859, 2e-8)  # printed digits
        assert_rel(v.significand, 1.6150416242898595, 1e-11)

    def test_table5_point(self):
        assert_rel(chf_c(ChfParams(0.1, 10.0, 1.0)), 7.67049541543288, 1e-12)

    def test_significand_domain(self):
        for p in (ChfParams(1.0, 1.0, 1.0), ChfParams(0.1, 0.1, 100.0)):
            v = chf_c(p)
            assert 1.0 <= v.significand < 10.0

    def test_domain(self):
        with pytest.raises(DomainError):
            ChfParams(0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            ChfParams(1.0, -2.0, 1.0)
        with pytest.raises(DomainError):
            chf_c(ChfParams(1.0, 1.0, 701.0))


class TestChfCScaled:
    def test_x_zero(self):
        assert_rel(chf_c_scaled(ChfParams(1.0, 1.0, 0.0)), 1.0, 1e-14)

    def test_closed_form_x100(self):
        want = (1.0 - math.exp(-100.0)) / 100.0
        assert_rel(chf_c_scaled(ChfParams(1.0, 1.0, 100.0)), want, 1e-13)

    def test_derived_table4_product(self):
        assert_rel(chf_c_scaled(ChfParams(0.1, 1.0, 100.0)), CHF_SCALED_01_1_100, 1e-12)

    def test_beyond_double_range(self):
        v = chf_c_scaled(ChfParams(1.0, 1.0, -800.0))
        assert v.exp10 == 344
        assert_rel(v.significand, CHF_SCALED_11_M800_SIG, 1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            chf_c_scaled(ChfParams(1.0, 1.0, 2.0e6))


class TestBeta:
    def test_ones(self):
        assert_rel(beta(1.0, 1.0), 1.0, 1e-13)

    def test_table7_origin(self):
        assert_rel(beta(0.1, 0.1), B_01_01, 1e-12)

    def test_table5_origin(self):
        assert_rel(beta(0.1, 10.0), B_01_10, 1e-12)

    def test_symmetry(self):
        assert_rel(beta(0.3, 2.7), beta(2.7, 0.3), 1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta(0.0, 1.0)


class TestKummerM:
    def test_one_at_origin(self):
        assert_rel(kummer_m(0.3, 1.7, 0.0), 1.0, 1e-13)

    def test_closed_form(self):
        assert_rel(kummer_m(1.0, 2.0, 1.0), math.e - 1.0, 1e-13)

    def test_derived_ratio(self):
        assert_rel(kummer_m(0.1, 0.2, 1.0), M_01_02_1, 1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            kummer_m(1.0, 1.0, 0.5)
        with pytest.raises(DomainError):
            kummer_m(-0.1, 1.0, 0.5)


class TestGauss2F1:
    def test_one_at_origin(self):
        assert_rel(gauss_2f1(0.3, 0.7, 1.5, 0.0), 1.0, 1e-14)

    def test_log_closed_form(self):
        assert_rel(gauss_2f1(1.0, 1.0, 2.0, 0.5), TWO_LN2, 1e-12)

    def test_euler_oracle_negative_z(self):
        assert_rel(gauss_2f1(0.3, 0.7, 1.5, -2.0), F21_EULER_NEG2, 1e-12)

    @pytest.mark.parametrize("bad", [
        dict(a=1.0, b=0.0, c=1.0, z=0.5),
        dict(a=1.0, b=1.0, c=0.5, z=0.5),
        dict(a=1.0, b=1.0, c=2.0, z=1.0),
        dict(a=1.0, b=1.0, c=2.0, z=2.0),
    ])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            gauss_2f1(**bad)

    def test_overflow_guard(self):
        with pytest.raises(OverflowGuard):
            gauss_2f1(-400.0, 1.0, 2.0, -1e6)


SMALL_GRID = (0.1, 1.0, 10.0)


@pytest.mark.parametrize("a", SMALL_GRID)
@pytest.mark.parametrize("b", SMALL_GRID)
@pytest.mark.parametrize("x", (0.5, 1.0, 10.0))
def test_kummer_reflection(a, b, x):
    lhs = chf_c(ChfParams(a, b, x))
    rhs = chf_c(ChfParams(b, a, -x)) * math.exp(x)
    assert rel(lhs, rhs) <= 1e-12


@pytest.mark.parametrize("a", SMALL_GRID)
@pytest.mark.parametrize("b", SMALL_GRID)
def test_beta_consistency_cross_pipeline(a, b):
    assert rel(chf_c(ChfParams(a, b, 0.0)), beta(a, b)) <= 1e-12


@pytest.mark.parametrize("a,b", [(0.1, 1.0), (0.1, 10.0), (1.0, 10.0), (0.3, 2.2)])
def test_symmetry_at_origin(a, b):
    assert rel(chf_c(ChfParams(a, b, 0.0)), chf_c(ChfParams(b, a, 0.0))) <= 1e-14


@pytest.mark.parametrize("x", (0.1, 1.0, 10.0, 100.0))
@pytest.mark.parametrize("a,b", [(0.1, 0.1), (1.0, 1.0), (0.1, 10.0)])
def test_scaling_consistency(a, b, x):
    plain = chf_c(ChfParams(a, b, x))
    scaled = chf_c_scaled(ChfParams(a, b, x)) * math.exp(x)
    assert rel(scaled, plain) <= 1e-13


def test_endpoint_singularity_robustness():
    # harsher than any published column; the table-style driver (h0 = 1)
    # converges under 400 nodes
    rep = chf_report(ChfParams(0.05, 0.05, 1.0), mesh=MeshSpec(h=1.0), max_levels=8)
    assert rep.converged
    assert rep.levels[-1].terms_used < 400
    assert_rel(rep.final_value, CHF_005_005_1, 1e-12)


def test_chf_report_scaled_real_levels():
    rep = chf_report(ChfParams(0.1, 0.1, 100.0))
    assert all(isinstance(lv.value, ScaledReal) for lv in rep.levels)
    assert rep.converged
