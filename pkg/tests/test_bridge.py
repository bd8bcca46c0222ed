import pytest
from hypothesis import given, settings, strategies as st

from rhpwn.bridge import (ComplexPoly, TrigPoly, complex_structure_constant, invert, poisson_bracket, rhpwn_generator,
                          trig_structure_constant, winf_bracket_check, winf_expand, winf_series_to_json)
from rhpwn.errors import MixedKindOperands, OrderTooSmall
from rhpwn.exact import I, ExactScalar


def test_poisson_examples():
    assert poisson_bracket(TrigPoly.f(2, 1), TrigPoly.f(2, -1)) == TrigPoly.f(2, 0, 2 * I)
    assert poisson_bracket(ComplexPoly.g(1, 0), ComplexPoly.g(0, 1)) == ComplexPoly.g(0, 0, -I)
    p = TrigPoly.f(3, 2) + TrigPoly.f(1, -1)
    assert not poisson_bracket(p, p)


def test_mixed_kinds_rejected():
    with pytest.raises(MixedKindOperands):
        poisson_bracket(TrigPoly.f(2, 1), ComplexPoly.g(1, 1))
    with pytest.raises(MixedKindOperands):
        TrigPoly.f(2, 1) + ComplexPoly.g(1, 1)


def test_structure_constants_exhaustive():
    for n in range(2, 7):
        for N in range(2, 7):
            for k in range(-6, 7):
                for K in range(-6, 7):
                    expected = TrigPoly.f(n + N - 2, k + K, trig_structure_constant(n, k, N, K))
                    assert poisson_bracket(TrigPoly.f(n, k), TrigPoly.f(N, K)) == expected
    for n in range(7):
        for k in range(7):
            for N in range(7):
                for K in range(7):
                    lhs = poisson_bracket(ComplexPoly.g(n, k), ComplexPoly.g(N, K))
                    c = complex_structure_constant(n, k, N, K)
                    if n + N == 0 or k + K == 0:
                        assert not lhs
                    else:
                        assert lhs == ComplexPoly.g(n + N - 1, k + K - 1, c)


small = st.integers(min_value=0, max_value=3)
coeffs = st.integers(min_value=-3, max_value=3)


@st.composite
def complex_polys(draw):
    out = ComplexPoly()
    for _ in range(draw(st.integers(1, 3))):
        out = out + ComplexPoly.g(draw(small), draw(small), ExactScalar(draw(coeffs), 0, draw(coeffs)))
    return out


@settings(max_examples=100)
@given(complex_polys(), complex_polys(), complex_polys())
def test_poisson_bracket_is_a_lie_bracket_and_derivation(p, q, r):
    pb = poisson_bracket
    assert pb(p, q) == -pb(q, p)
    assert not (pb(p, pb(q, r)) + pb(q, pb(r, p)) + pb(r, pb(p, q)))
    assert pb(p, q * r) == pb(p, q) * r + q * pb(p, r)


def test_winf_expand_low_orders():
    one = winf_series_to_json(winf_expand(1, 0))
    assert one == {"B^0_0": "1"}
    two = winf_series_to_json(winf_expand(2, 1))
    assert two == {"B^0_1": "1/2", "B^1_0": "1/2", "B^0_2": "1/2*k", "B^2_0": "-1/2*k"}
    assert not winf_expand(0, 3)


@pytest.mark.parametrize("n,N,order", [(2, 2, 2), (2, 3, 3), (1, 3, 3), (3, 4, 3)])
def test_winf_bracket_check(n, N, order):
    report = winf_bracket_check(n, N, order)
    assert report["ok"]
    assert report["monomials"]["k^0 K^0"]["match"]


@pytest.mark.parametrize("n,k", [(0, 0), (1, 0), (2, 1), (0, 3), (1, 2)])
def test_inversion(n, k):
    assert invert(n, k, n + k + 1) == rhpwn_generator(n, k)
    assert invert(n, k, n + k + 3) == rhpwn_generator(n, k)


def test_literal_inversion_transposes():
    assert invert(2, 1, 4, literal=True) == rhpwn_generator(1, 2)
    assert invert(1, 1, 3, literal=True) == rhpwn_generator(1, 1)


def test_inversion_needs_enough_order():
    with pytest.raises(OrderTooSmall):
        invert(2, 1, 3)
    with pytest.raises(ValueError):
        winf_expand(2, -1)


def test_structure_constant_signs():
    assert trig_structure_constant(2, 1, 2, -1) == 2 * I
    assert complex_structure_constant(1, 0, 0, 1) == -I
    assert trig_structure_constant(3, 2, 3, 2) == 0
