import pytest
from hypothesis import given, settings, strategies as st

from rhpwn.cohomology import (abelian, coboundary_space, cocycle_space, cocycle_vector, find_heisenberg_realization,
                              h2_dimension, heisenberg, heisenberg_cocycle, heisenberg_extension, is_cocycle,
                              oscillator, sl2, star_violations, trivialize)
from rhpwn.errors import NotACocycle, NotClosed
from rhpwn.exact import I, ONE, ZERO, ExactScalar, scalar
from rhpwn.finite import FiniteLieAlgebra
from rhpwn.linalg import rank
from rhpwn.weyl import WeylPoly, hoccr, p, parse_weyl, q, schrodinger_words, weyl_bracket, weyl_subalgebra_structure

ALGEBRAS = {"abelian2": abelian(2), "abelian3": abelian(3), "heisenberg": heisenberg(), "sl2": sl2(),
            "oscillator": oscillator()}


# -- Weyl normal ordering ----------------------------------------------------------------

def test_weyl_examples():
    assert weyl_bracket(p(), q()) == WeylPoly.unit().scale(-I)
    assert weyl_bracket(p() * p(), q()) == p().scale(-2 * I)
    assert weyl_bracket(p(), q() * q()) == q().scale(-2 * I)


@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("k", range(0, 5))
def test_closed_form_commutator(n, k):
    lhs = weyl_bracket(parse_weyl(f"p^{n}" if n else "1"), parse_weyl(f"q^{k}" if k else "1"))
    assert lhs == hoccr(n, k)


def test_weyl_subalgebras():
    W = weyl_subalgebra_structure(["q^2", "q", "p", "1"])
    assert W.dim == 4
    assert W.bracket_vec([ONE, ZERO, ZERO, ZERO], [ZERO, ZERO, ONE, ZERO]) == [ZERO, 2 * I, ZERO, ZERO]
    H = weyl_subalgebra_structure(["q", "p", "1"])
    assert H.bracket_vec([ONE, ZERO, ZERO], [ZERO, ONE, ZERO]) == [ZERO, ZERO, I]
    with pytest.raises(NotClosed):
        weyl_subalgebra_structure(["q^3", "p"])


def test_schrodinger_words_close():
    words, names = schrodinger_words()
    S = weyl_subalgebra_structure(words, names)
    assert S.dim == 6 and not S.validate()


# -- cocycles and coboundaries ----------------------------------------------------------

@pytest.mark.parametrize("name,z,b", [("abelian2", 1, 0), ("heisenberg", 3, 1), ("sl2", 3, 3),
                                      ("oscillator", 3, 3)])
def test_space_dimensions(name, z, b):
    L = ALGEBRAS[name]
    assert len(cocycle_space(L)) == z
    assert len(coboundary_space(L)) == b


@pytest.mark.parametrize("name,h2", [("abelian2", 1), ("abelian3", 3), ("heisenberg", 2), ("sl2", 0),
                                     ("oscillator", 0)])
def test_h2(name, h2):
    assert h2_dimension(ALGEBRAS[name]) == h2


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_coboundaries_are_cocycles(name):
    L = ALGEBRAS[name]
    Z = [cocycle_vector(phi) for phi in cocycle_space(L)]
    B = coboundary_space(L)
    assert rank(Z + [cocycle_vector(phi) for phi in B]) == len(Z)
    assert all(is_cocycle(L, phi) for phi in B)


def test_trivialize_examples():
    H = heisenberg()
    res = trivialize(H, heisenberg_cocycle(5, 0))
    assert res["trivial"] and res["f"]["B^0_0"] == scalar(5)
    res = trivialize(H, heisenberg_cocycle(0, 1))
    assert not res["trivial"] and res["certificate"]["cocycle_value"]
    zero = [[ZERO] * 3 for _ in range(3)]
    assert all(not v for v in trivialize(H, zero)["f"].values())


def test_trivialize_rejects_non_cocycles():
    bad = [[ZERO] * 3 for _ in range(3)]
    bad[0][1] = ONE
    with pytest.raises(NotACocycle):
        trivialize(sl2(), [[ONE, ZERO, ZERO], [ZERO, ZERO, ZERO], [ZERO, ZERO, ZERO]])
    with pytest.raises(NotACocycle):
        trivialize(sl2(), bad)


grid = st.sampled_from([ZERO, ONE, -ONE, I, -I, ExactScalar(2, 0, 1), ExactScalar(0, 1)])


@settings(max_examples=60)
@given(grid, grid)
def test_heisenberg_extensions(lam, z):
    L = heisenberg_extension(lam, z)
    assert L.dim == 4 and not L.validate()
    assert L.star_compatible == lam.is_real()
    assert (not star_violations(heisenberg(), heisenberg_cocycle(lam, z))) == lam.is_real()
    assert trivialize(heisenberg(), heisenberg_cocycle(lam, z))["trivial"] == (not z)


def test_extension_examples():
    assert heisenberg_extension(0, 0).star_compatible
    L = heisenberg_extension(1, I)
    assert not trivialize(heisenberg(), heisenberg_cocycle(1, I))["trivial"]
    assert L.dim == 4


def test_sl2_and_oscillator_extensions_are_trivial():
    for L in (sl2(), oscillator()):
        for phi in cocycle_space(L):
            assert trivialize(L, phi)["trivial"]


def test_finite_algebra_json_roundtrip():
    L = heisenberg_extension(2, I)
    assert FiniteLieAlgebra.from_json(L.to_json()).c == L.c


def test_weyl_realization_of_the_heisenberg_extension():
    found = find_heisenberg_realization()
    assert found is not None
    assert found["z"] == scalar(4)
    assert found["star_preserved"]
    assert found["images"]["E"] == "1"
