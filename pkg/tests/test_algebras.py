from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import scalars
from rhpwn.acceptance import exhaustive_symbols
from rhpwn.algebras import ConvolutionRule, IvanovRule, WinfRule, pochhammer, scheme_from_config, theta
from rhpwn.errors import BoundaryConditionViolated, SymbolNotSupported
from rhpwn.exact import I, ONE
from rhpwn.lie import LieElement, all_triples, bracket, check_axioms, generator, involute, winf_generator
from rhpwn.poly import var
from rhpwn.stepfn import chi

F = chi(0, 1)
G = chi(Fraction(1, 2), 2) * 3


def B(n, k, f=F, coeff=1):
    return generator(n, k, f, coeff)


def W(n, k, f=F, coeff=1):
    return winf_generator(n, k, f, coeff)


def test_pochhammer():
    assert pochhammer(7, 0) == 1
    assert pochhammer(4, 2) == 12
    assert pochhammer(2, 3) == 0


def test_theta_values():
    assert theta(1, 0, 2, 2, 0) == 4
    assert theta(2, 0, 2, 2, 0) == 2
    assert theta(1, 2, 0, 0, 2) == -4


@pytest.mark.parametrize("L", range(1, 5))
def test_theta_edge_factors_never_change_the_value(L):
    from math import comb
    for N in range(5):
        for K in range(5):
            for n in range(5):
                for k in range(5):
                    plain = comb(K, L) * pochhammer(n, L) - comb(k, L) * pochhammer(N, L)
                    assert theta(L, N, K, n, k) == plain


def test_quadratic_ivanov_anchor():
    c = var("c")
    assert bracket(IvanovRule(), B(0, 2), B(2, 0)) == B(1, 1, coeff=4) + B(0, 0) * (2 * c)


@pytest.mark.parametrize("n", range(1, 6))
def test_ivanov_scalar_part(n):
    from math import factorial
    res = bracket(IvanovRule(), B(0, n), B(n, 0, G))
    (sym, unit), = B(0, 0, F * G).terms.items()
    assert res.coeff(sym) == unit * var("c") ** (n - 1) * factorial(n)


def test_convolution_examples():
    rule = ConvolutionRule()
    assert bracket(rule, B(2, 0, G), B(0, 2)) == B(1, 1, G * F, -4)
    assert bracket(rule, B(0, 1, G), B(1, 0)) == B(0, 0, G * F)
    assert bracket(rule, B(1, 1, G), B(2, 2)) == LieElement()


def test_winf_examples():
    rule = WinfRule()
    assert bracket(rule, W(3, 1), W(3, 2)) == W(4, 3, coeff=-2)
    for k in range(-3, 4):
        for K in range(-3, 4):
            assert bracket(rule, W(2, k), W(2, K)) == W(2, k + K, coeff=k - K)


def test_involution_examples():
    f = F * (ONE + I)
    assert involute(IvanovRule(), B(2, 0, f)) == B(0, 2, F * (ONE - I))
    assert involute(WinfRule(), W(3, 2)) == W(3, -2)


def test_convolution_rejects_functions_not_vanishing_at_zero():
    bad = chi(-1, 1)
    with pytest.raises(BoundaryConditionViolated):
        bracket(ConvolutionRule(), B(1, 0, bad), B(0, 1))


def test_rules_reject_foreign_symbols():
    with pytest.raises(SymbolNotSupported):
        bracket(WinfRule(), B(1, 0), W(2, 1))
    with pytest.raises(SymbolNotSupported):
        bracket(IvanovRule(), W(2, 1), B(1, 0))


def test_concrete_c_matches_formal_c():
    formal = bracket(IvanovRule(), B(0, 3), B(3, 1, G))
    concrete = bracket(IvanovRule(2), B(0, 3), B(3, 1, G))
    assert formal.subs({"c": 2}) == concrete


def test_scheme_from_config():
    assert isinstance(scheme_from_config({"scheme": "convolution"}), ConvolutionRule)
    assert scheme_from_config({"scheme": "ivanov", "c": "3"}).c == var("c").subs({"c": 3})
    with pytest.raises(ValueError):
        scheme_from_config({"scheme": "nope"})


class _FlippedConvolution(ConvolutionRule):
    name = "flipped"

    def bracket_symbols(self, a, b):
        res = super().bracket_symbols(a, b)
        return res * -1 if (a.n, a.k) == (1, 0) else res


def test_axiom_checker_finds_a_corrupted_rule():
    report = check_axioms(_FlippedConvolution(), all_triples(exhaustive_symbols("wn", 2)), max_witnesses=2)
    assert not report["ok"] and report["violations"]


@pytest.mark.parametrize("rule,kind", [(IvanovRule(), "wn"), (ConvolutionRule(), "wn"), (WinfRule(), "winf")])
def test_small_exhaustive_axioms(rule, kind):
    report = check_axioms(rule, all_triples(exhaustive_symbols(kind, 2)))
    assert report["ok"], report["violations"][:3]


indices = st.integers(min_value=0, max_value=4)


@settings(max_examples=100)
@given(indices, indices, indices, indices, scalars)
def test_bilinearity_and_antisymmetry(n, k, N, K, a):
    for rule in (IvanovRule(), ConvolutionRule()):
        x, y = B(n, k), B(N, K, G)
        assert bracket(rule, x * a, y) == bracket(rule, x, y) * a
        assert bracket(rule, x, y) == bracket(rule, y, x) * -1
        assert bracket(rule, x, x) == LieElement()
        assert involute(rule, involute(rule, x * a)) == x * a


def test_ivanov_linear_part_matches_convolution_orientation():
    # one orientation for both rules: the c^0 part of Ivanov equals convolution
    for n in range(5):
        for k in range(5):
            for N in range(5):
                for K in range(5):
                    iv = bracket(IvanovRule(), B(n, k), B(N, K, G)).subs({"c": 0})
                    assert iv == bracket(ConvolutionRule(), B(n, k), B(N, K, G))
