from fractions import Fraction

import mpmath
import pytest

from rhpwn.errors import DomainViolation
from rhpwn.genfock import (LadderState, action_check, diag_eigenvalue, exp_kernel, exp_kernel_report,
                           exp_vector_gram, gen_fock_inner, ladder_apply, ladder_inner, ladder_moment,
                           lower_coefficient, lower_coefficient_closed)
from rhpwn.stepfn import StepFunction, chi

ZERO_FN = StepFunction([])


def test_inner_product_examples():
    assert gen_fock_inner(1, 1, 1, Fraction(3, 7)) == Fraction(3, 7)
    assert gen_fock_inner(2, 2, 2, 2) == 64
    assert gen_fock_inner(3, 2, 1, 5) == 0


def test_ladder_examples():
    zero = LadderState.basis(2, 2, 0)
    assert ladder_apply("raise", zero).amplitudes == {1: 1}
    assert ladder_apply("lower", LadderState.basis(2, 2, 1)).amplitudes == {0: 4}
    assert ladder_apply("lower", zero).amplitudes == {}
    assert ladder_apply("diag", zero).amplitudes == {0: 1}
    with pytest.raises(ValueError):
        ladder_apply("sideways", zero)


@pytest.mark.parametrize("n", range(1, 5))
def test_lowering_coefficient_derivation(n):
    for k in range(8):
        assert lower_coefficient(n, Fraction(5, 3), k) == lower_coefficient_closed(n, Fraction(5, 3), k)
        assert diag_eigenvalue(n, 0, k) == k * n * (n - 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_ladder_inner_matches_closed_form(n):
    mu = Fraction(2, 3)
    for j in range(6):
        for m in range(6):
            u, v = LadderState.basis(n, mu, j), LadderState.basis(n, mu, m)
            assert ladder_inner(u, v) == gen_fock_inner(n, j, m, mu)


def test_ladder_moments():
    assert ladder_moment(2, 2, 2) == 4
    assert ladder_moment(2, 2, 4) == 80
    assert ladder_moment(1, Fraction(1, 3), 4) == 3 * Fraction(1, 9)
    assert ladder_moment(3, 1, 3) == 0


def test_kernel_examples():
    assert exp_kernel(2, ZERO_FN, ZERO_FN) == 1
    quarter = chi(0, 1) * Fraction(1, 4)
    with mpmath.workdps(30):
        assert mpmath.almosteq(exp_kernel(1, chi(0, 1), chi(0, 1)), mpmath.e, 1e-25)
        assert mpmath.almosteq(exp_kernel(2, quarter, quarter), mpmath.sqrt(mpmath.mpf(4) / 3), 1e-25)
        assert exp_kernel_report(2, quarter, quarter)["error_bound"] < mpmath.mpf(10) ** -25


def test_domain_violation():
    with pytest.raises(DomainViolation):
        exp_kernel(2, chi(0, 1), chi(0, 1))
    # n = 2 bound squared is 1/4, so |f| = 1/2 is excluded and 0.49 is admitted
    with pytest.raises(DomainViolation):
        exp_kernel(2, chi(0, 1) * Fraction(1, 2), ZERO_FN)
    exp_kernel(2, chi(0, 1) * Fraction(49, 100), ZERO_FN)


def test_action_check():
    zero = action_check(2, ZERO_FN, chi(0, 1) * Fraction(1, 5), chi(0, 1) * Fraction(1, 7))
    assert zero["residual"] == 0
    small = chi(0, 1) * Fraction(1, 10)
    for n, f, g, h in [(2, small, chi(0, 1) * Fraction(1, 5), chi(0, 1) * Fraction(1, 8)),
                       (3, small, small, small)]:
        assert action_check(n, f, g, h)["residual"] < 1e-8


def test_exponential_vector_gram_is_positive():
    import numpy as np
    fns = [chi(0, 1) * Fraction(k, 10) for k in range(4)]
    g = np.array(exp_vector_gram(2, fns))
    assert np.allclose(g, g.conj().T)
    assert np.linalg.eigvalsh(g).min() > 0
