from fractions import Fraction
from math import factorial, prod

import pytest

from rhpwn.algebras import ConvolutionRule, IvanovRule
from rhpwn.errors import BoundaryConditionViolated, NotHermitian
from rhpwn.exact import scalar
from rhpwn.fock import (FockEngine, GeneralizedV1, GeneralizedV2, StrictFock, factorization_check, ghost_scan,
                        gram, vacuum_expectation)
from rhpwn.genfock import gen_fock_inner
from rhpwn.lie import Sym
from rhpwn.poly import poly, var
from rhpwn.stepfn import chi

MU = Fraction(3, 4)
F = chi(0, MU)
c, mu = var("c"), var("mu")


def B(n, k, f=F):
    return Sym("wn", n, k, f)


def strict(word, scheme=None):
    return vacuum_expectation(word, scheme or IvanovRule(), StrictFock())


def test_first_and_second_order_norms():
    assert strict([B(0, 1), B(1, 0)]) == poly(MU)
    assert strict([B(0, 2), B(2, 0)]) == c * 2 * MU


@pytest.mark.parametrize("n", range(1, 6))
def test_strict_norms(n):
    assert strict([B(0, n), B(n, 0)]) == c ** (n - 1) * factorial(n) * MU


def test_unmatched_creator_and_grading():
    assert not strict([B(1, 0)])
    assert not strict([B(0, 2), B(1, 0)])
    assert not strict([B(0, 1), B(2, 0)])


@pytest.mark.parametrize("m", range(1, 5))
def test_first_order_field_is_gaussian(m):
    # <(B^1_0 + B^0_1)^{2m}> = (2m-1)!! μ^m, odd moments vanish
    from rhpwn.lie import generator
    x = generator(1, 0, F) + generator(0, 1, F)
    assert strict([x] * (2 * m)) == scalar(prod(range(1, 2 * m, 2)) * MU ** m)
    assert not strict([x] * (2 * m - 1))


def test_gram_examples():
    rules = StrictFock()
    g = gram([[B(1, 0)], [B(2, 0)]], IvanovRule(), rules)
    assert g[0][0] == poly(MU) and g[1][1] == c * 2 * MU
    assert not g[0][1] and not g[1][0]
    assert gram([], IvanovRule(), rules) == []


def test_convolution_scheme_needs_vanishing_at_zero():
    with pytest.raises(BoundaryConditionViolated):
        vacuum_expectation([B(0, 1, chi(-1, 1)), B(1, 0, chi(-1, 1))], ConvolutionRule(), GeneralizedV1())


def test_memoization_reuses_words():
    engine = FockEngine(IvanovRule(), StrictFock())
    first = engine.expectation([B(0, 2), B(0, 2), B(2, 0), B(2, 0)])
    steps = engine.steps
    assert engine.expectation([B(0, 2), B(0, 2), B(2, 0), B(2, 0)]) == first
    assert engine.steps == steps


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("mu_val", [1, 2, 5])
def test_no_ghost_when_mu_at_least_one_over_c(n, mu_val):
    report = ghost_scan(n, 4 * n, 1, mu_val, "strict")
    assert report["psd"], report["pivots"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ghost_when_mu_below_one_over_c(n):
    report = ghost_scan(n, 12 if n == 3 else 6 * n, 1, Fraction(1, 2), "strict")
    assert not report["psd"]
    assert report["negative_pivot_at"] is not None
    assert Fraction(report["witness_norm"]) < 0


def test_strict_n3_ghost_position():
    report = ghost_scan(3, 12, 1, Fraction(1, 2), "strict")
    assert report["negative_pivot_at"] == 5


def test_gen1_n3_ghost_and_non_hermitian_functional():
    report = ghost_scan(3, 12, 1, Fraction(1, 2), "gen1")
    assert not report["psd"]
    assert not report["hermitian"]
    assert report["hermitian_defects"][0] == {"i": 3, "j": 4, "upper": "8991/2", "lower": "9963/2"}
    half = chi(0, Fraction(1, 2))
    words = [[B(3, 0, half)] * 3, [B(3, 0, half), B(6, 0, half)]]
    with pytest.raises(NotHermitian):
        gram(words, ConvolutionRule(), GeneralizedV1())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gen2_sector_matches_closed_form(n):
    f = chi(0, MU)
    engine = FockEngine(ConvolutionRule(), GeneralizedV2(n))
    for j in range(4):
        for m in range(4):
            word = [B(0, n, f)] * j + [B(n, 0, f)] * m
            assert engine.expectation(word) == poly(gen_fock_inner(n, j, m, MU))


def test_factorization_on_disjoint_supports():
    left = [B(0, 2, chi(0, 1)), B(2, 0, chi(0, 1))]
    right = [B(0, 1, chi(2, 3)), B(1, 1, chi(2, 3)), B(1, 0, chi(2, 3))]
    report = factorization_check([left, right], IvanovRule(), StrictFock())
    assert report["ok"]
    assert report["joint"] == c * 2
    assert factorization_check([left], IvanovRule(), StrictFock())["ok"]
    with pytest.raises(ValueError):
        factorization_check([left, [B(1, 0, chi(0, 2))]], IvanovRule(), StrictFock())
