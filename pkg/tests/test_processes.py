import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from rhpwn.errors import NonsensicalN
from rhpwn.genfock import ladder_moment
from rhpwn.processes import (FieldProcessSpec, beta_density, density_moment, density_moment_check, gamma,
                             gaussian_density, log_gamma, mgf_series, moment)
from rhpwn.series import PowerSeries, cos_series, exp_series

# -- power series -------------------------------------------------------------------


def test_exp_log_inverse():
    x = PowerSeries([0, 1, Fraction(1, 3), -2], 6)
    assert x.exp().log() == x
    assert exp_series(8) == PowerSeries.monomial(1, 1, 8).exp()


def test_reciprocal_and_pow():
    c = cos_series(1, 8)
    assert c * c.reciprocal() == PowerSeries.constant(1, 8)
    assert c.pow(2) == c * c
    assert c.pow(Fraction(1, 2)) * c.pow(Fraction(1, 2)) == c


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        PowerSeries([1, 1], 3).exp()
    with pytest.raises(ValueError):
        PowerSeries([2, 1], 3).log()


# -- moment generating functions ---------------------------------------------------------


def test_mgf_examples():
    assert mgf_series(FieldProcessSpec(1, 1), 4) == PowerSeries([1, 0, Fraction(1, 2), 0, Fraction(1, 8)])
    assert mgf_series(FieldProcessSpec(2, 2), 4) == PowerSeries([1, 0, 2, 0, Fraction(10, 3)])
    for n in range(1, 5):
        assert mgf_series(FieldProcessSpec(n, 3), 0) == PowerSeries([1])


def test_moment_examples():
    assert moment(FieldProcessSpec(1, Fraction(5, 2)), 2) == Fraction(5, 2)
    assert moment(FieldProcessSpec(2, 2), 2) == 4
    assert moment(FieldProcessSpec(2, 2), 4) == 80


@pytest.mark.parametrize("n", range(1, 5))
def test_mgf_is_even_with_unit_constant(n):
    s = mgf_series(FieldProcessSpec(n, Fraction(3, 2)), 10)
    assert s[0] == 1
    assert all(s[i] == 0 for i in range(1, 11, 2))


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("t", [Fraction(1, 2), 1, Fraction(7, 3)])
def test_moments_agree_with_the_ladder(n, t):
    spec = FieldProcessSpec(n, t)
    for m in range(0, 7 if n <= 3 else 5):
        assert moment(spec, m) == ladder_moment(n, t, m)


def test_gaussian_moments_for_n1():
    spec = FieldProcessSpec(1, Fraction(2, 3))
    for j in range(5):
        double_fact = math.prod(range(1, 2 * j, 2))
        assert moment(spec, 2 * j) == double_fact * spec.t ** j
    assert gaussian_density(spec, 0) == pytest.approx(1 / math.sqrt(2 * math.pi * 2 / 3))


def test_alpha_and_scale():
    spec = FieldProcessSpec(3, 1)
    assert spec.scale_sq == 27
    assert spec.alpha == Fraction(1, 9)
    with pytest.raises(NonsensicalN):
        FieldProcessSpec(1, 1).alpha
    with pytest.raises(ValueError):
        FieldProcessSpec(2, 0)


# -- log-gamma and density ---------------------------------------------------------------


@settings(max_examples=100)
@given(st.floats(min_value=-20, max_value=20), st.floats(min_value=-20, max_value=20))
def test_log_gamma_matches_mpmath(re, im):
    z = complex(re, im)
    if abs(z - round(re)) < 1e-3 and re <= 0.5:
        return
    ours = gamma(z)
    ref = complex(mpmath.gamma(z))
    assert abs(ours - ref) <= 1e-11 * abs(ref)


def test_log_gamma_real_values():
    assert log_gamma(1).real == pytest.approx(0, abs=1e-14)
    assert gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(5).real == pytest.approx(24, rel=1e-14)


def test_density_examples():
    spec = FieldProcessSpec(2, 2)
    assert beta_density(spec, 0) == pytest.approx(0.5, rel=1e-13)
    for x in (0.3, 1.0, 2.5, 7.0):
        assert beta_density(spec, x) == pytest.approx(1 / (2 * math.cosh(math.pi * x / 2)), rel=1e-12)
        assert beta_density(spec, x) == pytest.approx(beta_density(spec, -x), rel=1e-14)
    assert beta_density(spec, 2, scale_corrected=True) == pytest.approx(beta_density(spec, 1) / 2, rel=1e-14)
    with pytest.raises(NonsensicalN):
        beta_density(FieldProcessSpec(1, 1), 0)


@pytest.mark.parametrize("n,t", [(2, 2), (3, 1), (2, Fraction(1, 3))])
def test_density_normalization(n, t):
    spec = FieldProcessSpec(n, t)
    for corrected in (False, True):
        val, _ = density_moment(spec, 0, corrected)
        assert val == pytest.approx(1, abs=1e-6)


def test_density_moment_check():
    report = density_moment_check(FieldProcessSpec(2, 2), 2)
    assert report["variants"]["scale_corrected"]["integral"] == pytest.approx(4, abs=1e-4)
    assert report["variants"]["raw"]["integral"] == pytest.approx(1, abs=1e-4)
    assert report["scale_discrepancy"]
    n3 = density_moment_check(FieldProcessSpec(3, 1), 2)
    assert n3["variants"]["scale_corrected"]["integral"] == pytest.approx(float(moment(FieldProcessSpec(3, 1), 2)),
                                                                           rel=1e-4)
    four = density_moment_check(FieldProcessSpec(2, 2), 4)
    assert four["variants"]["scale_corrected"]["integral"] == pytest.approx(80, rel=1e-4)
    with pytest.raises(ValueError):
        density_moment_check(FieldProcessSpec(2, 2), 3)
