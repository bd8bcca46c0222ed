"""Second cohomology of finite-dimensional Lie algebras: 2-cocycles,
coboundaries, triviality witnesses, and the Heisenberg extension family."""

from __future__ import annotations

import itertools

from .errors import InvariantBreach, NotACocycle
from .exact import I, ONE, ZERO, scalar
from .finite import FiniteLieAlgebra
from .linalg import nullspace, rank, rref, solve
from .weyl import WeylPoly, parse_weyl, span_coordinates, weyl_bracket, weyl_subalgebra_structure


def _pairs(d: int):
    return list(itertools.combinations(range(d), 2))


def cocycle_matrix(d: int, values) -> list:
    """Antisymmetric d x d matrix from upper-triangle values in pair order."""
    phi = [[ZERO] * d for _ in range(d)]
    for (i, j), v in zip(_pairs(d), values):
        v = scalar(v)
        phi[i][j] = v
        phi[j][i] = -v
    return phi


def cocycle_vector(phi) -> list:
    return [scalar(phi[i][j]) for i, j in _pairs(len(phi))]


def _pair_form(L: FiniteLieAlgebra, vec, k: int) -> list:
    """Row giving φ(vec, e_k) in terms of the upper-triangle unknowns."""
    index = {p: n for n, p in enumerate(_pairs(L.dim))}
    row = [ZERO] * len(index)
    for g, coeff in enumerate(vec):
        if not coeff or g == k:
            continue
        if g < k:
            row[index[(g, k)]] = row[index[(g, k)]] + coeff
        else:
            row[index[(k, g)]] = row[index[(k, g)]] - coeff
    return row


def _cocycle_conditions(L: FiniteLieAlgebra) -> list:
    rows = []
    for i, j, k in itertools.combinations(range(L.dim), 3):
        r1 = _pair_form(L, L.c[i][j], k)
        r2 = _pair_form(L, L.c[j][k], i)
        r3 = _pair_form(L, L.c[k][i], j)
        row = [a + b + c for a, b, c in zip(r1, r2, r3)]
        if any(row):
            rows.append(row)
    return rows


def _row_basis(rows) -> list:
    if not rows:
        return []
    r, pivots = rref(rows)
    return r[: len(pivots)]


def cocycle_space(L: FiniteLieAlgebra) -> list:
    """Basis of 2-cocycles, each an antisymmetric matrix."""
    npairs = len(_pairs(L.dim))
    conditions = _cocycle_conditions(L)
    basis = nullspace(conditions, npairs) if conditions else nullspace([], npairs)
    return [cocycle_matrix(L.dim, v) for v in basis]


def _coboundary_rows(L: FiniteLieAlgebra) -> list:
    """Row g is δ(e_g^*): the cocycle (i, j) -> c^g_{ij}."""
    return [[L.c[i][j][g] for i, j in _pairs(L.dim)] for g in range(L.dim)]


def coboundary_space(L: FiniteLieAlgebra) -> list:
    """Basis of coboundaries δf(x, y) = f([x, y])."""
    rows = [r for r in _coboundary_rows(L) if any(r)]
    return [cocycle_matrix(L.dim, v) for v in _row_basis(rows)]


def h2_dimension(L: FiniteLieAlgebra) -> int:
    z = len(cocycle_space(L))
    b = len(coboundary_space(L))
    if b > z:
        raise InvariantBreach(f"coboundaries ({b}) exceed cocycles ({z})")
    return z - b


def is_cocycle(L: FiniteLieAlgebra, phi) -> bool:
    v = cocycle_vector(phi)
    for i in range(L.dim):
        if phi[i][i]:
            return False
        for j in range(L.dim):
            if scalar(phi[i][j]) != -scalar(phi[j][i]):
                return False
    for row in _cocycle_conditions(L):
        if sum((a * b for a, b in zip(row, v)), ZERO):
            return False
    return True


def trivialize(L: FiniteLieAlgebra, phi) -> dict:
    """Find f with φ(x, y) = f([x, y]).

    Returns {"trivial": True, "f": {name: value}} or {"trivial": False,
    "certificate": ...}; the certificate is a combination y of pairs with
    sum y_ij [e_i, e_j] = 0 but sum y_ij φ_ij != 0.
    """
    if not is_cocycle(L, phi):
        raise NotACocycle("input form is not an antisymmetric 2-cocycle")
    pairs = _pairs(L.dim)
    b = cocycle_vector(phi)
    a = [[L.c[i][j][g] for g in range(L.dim)] for i, j in pairs]
    if not pairs:
        return {"trivial": True, "f": {n: ZERO for n in L.names}}
    x = solve(a, b)
    if x is not None:
        recon = [sum((row[g] * x[g] for g in range(L.dim)), ZERO) for row in a]
        if recon != b:
            raise InvariantBreach("trivializing functional does not reproduce the cocycle")
        return {"trivial": True, "f": dict(zip(L.names, x))}
    # left null vectors of a; one of them pairs nontrivially with b
    at = [[a[p][g] for p in range(len(pairs))] for g in range(L.dim)]
    for y in nullspace(at, len(pairs)):
        pairing = sum((yi * bi for yi, bi in zip(y, b)), ZERO)
        if pairing:
            combo = {f"[{L.names[i]},{L.names[j]}]": yi for (i, j), yi in zip(pairs, y) if yi}
            return {"trivial": False, "certificate": {"combination": combo, "cocycle_value": pairing}}
    raise InvariantBreach("inconsistent system without a separating left null vector")


def star_violations(L: FiniteLieAlgebra, phi) -> list:
    """Pairs where the extension by φ fails to be *-compatible with E* = E:
    the condition is conj(φ(x, y)) = φ(y*, x*)."""
    if L.star is None:
        raise ValueError("algebra has no involution")
    bad = []
    for i in range(L.dim):
        for j in range(L.dim):
            xs, ys = L.star[i], L.star[j]
            rhs = sum((ys[a] * xs[b] * scalar(phi[a][b]) for a in range(L.dim) for b in range(L.dim)
                       if ys[a] and xs[b]), ZERO)
            if scalar(phi[i][j]).conjugate() != rhs:
                bad.append((L.names[i], L.names[j]))
    return bad


# -- named algebras -----------------------------------------------------------------

def abelian(d: int) -> FiniteLieAlgebra:
    return FiniteLieAlgebra([f"x{i}" for i in range(d)], {})


HEIS_NAMES = ("B^1_0", "B^0_1", "B^0_0")


def heisenberg() -> FiniteLieAlgebra:
    """[B^0_1, B^1_0] = B^0_0 central; (B^1_0)* = B^0_1."""
    return FiniteLieAlgebra(
        HEIS_NAMES, {("B^0_1", "B^1_0"): {"B^0_0": 1}},
        star={"B^1_0": {"B^0_1": 1}, "B^0_1": {"B^1_0": 1}, "B^0_0": {"B^0_0": 1}})


def sl2() -> FiniteLieAlgebra:
    """[e, f] = h, [h, e] = 2e, [h, f] = -2f; e* = f, h* = h."""
    return FiniteLieAlgebra(
        ("e", "f", "h"),
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        star={"e": {"f": 1}, "f": {"e": 1}, "h": {"h": 1}})


def oscillator() -> FiniteLieAlgebra:
    """[a, a+] = h central, [N, a+] = a+, [N, a] = -a."""
    return FiniteLieAlgebra(
        ("a+", "a", "h", "N"),
        {("a", "a+"): {"h": 1}, ("N", "a+"): {"a+": 1}, ("N", "a"): {"a": -1}},
        star={"a+": {"a": 1}, "a": {"a+": 1}, "h": {"h": 1}, "N": {"N": 1}})


def heisenberg_cocycle(lam, z) -> list:
    """φ(B^0_1, B^1_0) = λ, φ(B^0_0, B^1_0) = z, φ(B^0_1, B^0_0) = conj(z)."""
    lam, z = scalar(lam), scalar(z)
    phi = [[ZERO] * 3 for _ in range(3)]
    entries = {(1, 0): lam, (2, 0): z, (1, 2): z.conjugate()}
    for (i, j), v in entries.items():
        phi[i][j] = v
        phi[j][i] = -v
    return phi


def heisenberg_extension(lam, z) -> FiniteLieAlgebra:
    """Central extension of the Heisenberg algebra by E:
    [B^0_1, B^1_0] = B^0_0 + λE, [B^0_0, B^1_0] = zE, [B^0_1, B^0_0] = conj(z)E.

    The involution (B^1_0)* = B^0_1, B^0_0* = B^0_0, E* = E is attached only
    when it is compatible, which happens exactly for real λ.
    """
    lam, z = scalar(lam), scalar(z)
    table = {
        ("B^0_1", "B^1_0"): {"B^0_0": ONE, "E": lam},
        ("B^0_0", "B^1_0"): {"E": z},
        ("B^0_1", "B^0_0"): {"E": z.conjugate()},
    }
    star = {"B^1_0": {"B^0_1": 1}, "B^0_1": {"B^1_0": 1}, "B^0_0": {"B^0_0": 1}, "E": {"E": 1}}
    names = HEIS_NAMES + ("E",)
    compatible = not star_violations(heisenberg(), heisenberg_cocycle(lam, z))
    L = FiniteLieAlgebra(names, table, star=star if compatible else None)
    if L.validate():
        raise InvariantBreach(f"Heisenberg extension fails validation for λ={lam}, z={z}")
    L.star_compatible = compatible
    return L


# -- isomorphisms --------------------------------------------------------------

def check_isomorphism(A: FiniteLieAlgebra, B: FiniteLieAlgebra, images: dict) -> list:
    """Problems with the linear map e_a -> images[a] (coordinates in B) being a
    Lie-algebra isomorphism A -> B; empty when it is one."""
    if A.dim != B.dim:
        return [f"dimensions differ: {A.dim} vs {B.dim}"]
    T = [list(images[n]) for n in A.names]
    problems = []
    if rank(T) != A.dim:
        problems.append("map is not invertible")

    def apply(vec):
        out = [ZERO] * B.dim
        for a, va in enumerate(vec):
            if va:
                for g, tg in enumerate(T[a]):
                    if tg:
                        out[g] = out[g] + va * tg
        return out

    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            if apply(A.c[i][j]) != B.bracket_vec(T[i], T[j]):
                problems.append(f"bracket of ({A.names[i]}, {A.names[j]}) not preserved")
    return problems


def _star_preserved(A: FiniteLieAlgebra, B: FiniteLieAlgebra, images: dict) -> bool:
    if A.star is None or B.star is None:
        return False
    for i, name in enumerate(A.names):
        lhs = [ZERO] * B.dim
        for a, va in enumerate(A.star[i]):
            if va:
                for g, tg in enumerate(images[A.names[a]]):
                    lhs[g] = lhs[g] + va * tg
        if lhs != B.star_vec(images[name]):
            return False
    return True


WEYL_WORDS = ("q^2", "q", "p", "1")
GRID = (ZERO, ONE, -ONE, I, -I)


def find_heisenberg_realization(words=WEYL_WORDS, lam=0, grid=GRID) -> dict | None:
    """Search x, y in span{non-unit words} over a coefficient grid so that
    B^1_0 -> x, B^0_1 -> y, B^0_0 -> [y, x] - λ, E -> 1 is an isomorphism onto
    the Weyl subalgebra; z is read off from [B^0_0, x] = z·1.

    Candidates with y = x* are tried first so that the involution is
    preserved when possible.
    """
    W = weyl_subalgebra_structure(list(words))
    polys = [parse_weyl(w) for w in W.names]
    unit = WeylPoly.unit()
    lam = scalar(lam)
    nonunit = [P for P in polys if P != unit]
    combos = list(itertools.product(grid, repeat=len(nonunit)))

    def build(coeffs):
        out = WeylPoly()
        for c, P in zip(coeffs, nonunit):
            if c:
                out = out + P.scale(c)
        return out

    def attempt(x, y):
        if not x or not y:
            return None
        h = weyl_bracket(y, x) - unit.scale(lam)
        hx = weyl_bracket(h, x)
        zc = span_coordinates([unit], hx)
        if zc is None or not zc[0]:
            return None
        z = zc[0]
        if weyl_bracket(y, h) != unit.scale(z.conjugate()):
            return None
        images = {}
        for name, P in zip(("B^1_0", "B^0_1", "B^0_0", "E"), (x, y, h, unit)):
            coords = span_coordinates(polys, P)
            if coords is None:
                return None
            images[name] = coords
        H = heisenberg_extension(lam, z)
        if check_isomorphism(H, W, images):
            return None
        return {"lambda": lam, "z": z, "images": {k: str(P) for k, P in
                                                   zip(("B^1_0", "B^0_1", "B^0_0", "E"), (x, y, h, unit))},
                "coordinates": images, "star_preserved": _star_preserved(H, W, images),
                "algebra": W, "extension": H}

    for coeffs in combos:
        x = build(coeffs)
        found = attempt(x, x.star())
        if found:
            return found
    for cx in combos:
        for cy in combos:
            found = attempt(build(cx), build(cy))
            if found:
                return found
    return None
