"""Vacuum expectations by recursive commutation, Gram matrices and ghost scans.

A word ``W_1 W_2 ... W_m`` of smeared generators is read as an operator
product applied to the vacuum, so ``W_m`` acts first.  The engine evaluates
<Φ, W_1 ... W_m Φ> by looking at the rightmost factor:

* strict Fock rules: an annihilation-dominant factor (k >= n) kills the
  vacuum; a creation-dominant one is commuted to the far left, where its
  adjoint kills the vacuum, leaving only the commutator terms
  sum_j <Φ, W_1 .. [W_j, W_m] .. W_{m-1} Φ>;
* generalized rules (version 1): B^n_k Φ is 0 for n < k, a multiple of Φ for
  n = k, and B^{n-k}_0 Φ for n > k;
* generalized rules (version 2): evaluation inside the sector spanned by the
  vectors (B^n_0)^N Φ, where B^{n+x}_x acts like B^n_0.

Central factors B^0_0(f) are pulled out as the scalar ∫f wherever they sit.
Each commutator step shortens the word by one letter, so recursion ends.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebras import ConvolutionRule, IvanovRule
from .errors import BoundaryConditionViolated, InvariantBreach, NotHermitian, OutsideSector
from .exact import scalar
from .lie import BracketRule, LieElement, Sym, involute
from .linalg import hermitian_scan
from .poly import FormalPolynomial, ONE_POLY, ZERO_POLY, poly
from .stepfn import StepFunction, chi


@dataclass(frozen=True)
class StrictFock:
    name = "strict"


@dataclass(frozen=True)
class GeneralizedV1:
    name = "gen1"


@dataclass(frozen=True)
class GeneralizedV2:
    """``n`` is the sector's creator power; None means infer it from the word."""

    n: int | None = None
    name = "gen2"


def rules_from_name(name: str, n: int | None = None):
    if name == "strict":
        return StrictFock()
    if name == "gen1":
        return GeneralizedV1()
    if name == "gen2":
        return GeneralizedV2(n)
    raise ValueError(f"unknown vacuum rules {name!r}")


def default_scheme(rules, c=None) -> BracketRule:
    """Ivanov for the strict Fock rules, convolution for the generalized ones."""
    if isinstance(rules, StrictFock):
        return IvanovRule(c)
    return ConvolutionRule()


def _degree(sym: Sym) -> int:
    return sym.n + sym.k


class FockEngine:
    """Memoizing evaluator for one (scheme, rules) pair."""

    def __init__(self, scheme: BracketRule, rules):
        self.scheme = scheme
        self.rules = rules
        self._memo = {}
        self._checked = set()
        self.steps = 0

    # -- bracket with the degree law asserted ------------------------------
    def commutator(self, a: Sym, b: Sym) -> LieElement:
        res = self.scheme.sym_bracket(a, b)
        key = (a, b)
        if key not in self._checked:
            bound = _degree(a) + _degree(b) - 2
            for s in res.terms:
                if _degree(s) > bound:
                    raise InvariantBreach(f"bracket [{a}, {b}] produced {s} violating the degree law")
            self._checked.add(key)
        return res

    def check_symbol(self, sym: Sym) -> None:
        if sym.kind != "wn":
            raise ValueError(f"Fock words contain RHPWN generators only, got {sym}")
        if isinstance(self.scheme, ConvolutionRule) and not sym.f.vanishes_at_zero():
            raise BoundaryConditionViolated(f"convolution renormalization needs f(0) = 0, got {sym}",
                                            symbol=str(sym))

    # -- public entry points -------------------------------------------------
    def expectation(self, word) -> FormalPolynomial:
        """<Φ, word Φ> for a sequence of LieElements / Syms (multilinear)."""
        factors = []
        for w in word:
            elem = LieElement.of(w) if isinstance(w, Sym) else w
            factors.append(list(elem.terms.items()))
        total = ZERO_POLY
        for combo in itertools.product(*factors):
            coeff = ONE_POLY
            syms = []
            for sym, c in combo:
                self.check_symbol(sym)
                coeff = coeff * c
                syms.append(sym)
            val = self.eval_word(tuple(syms))
            if val:
                total = total + coeff * val
        return total

    def eval_word(self, word: tuple) -> FormalPolynomial:
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        if isinstance(self.rules, GeneralizedV2):
            val = self._eval_sector(word)
        else:
            val = self._eval(word)
        self._memo[word] = val
        return val

    # -- strict and generalized-v1 -------------------------------------------
    def _eval(self, word: tuple) -> FormalPolynomial:
        self.steps += 1
        if not word:
            return ONE_POLY
        # grading: n - k is conserved by brackets and by every vacuum rule
        if sum(s.n - s.k for s in word) != 0:
            return ZERO_POLY
        for pos, s in enumerate(word):
            if s.n == 0 and s.k == 0:
                rest = word[:pos] + word[pos + 1:]
                return poly(s.f.integral()) * self.eval_word(rest)
        last = word[-1]
        rest = word[:-1]
        n, k = last.n, last.k
        if isinstance(self.rules, StrictFock):
            if k >= n:
                return ZERO_POLY
        else:
            if n < k:
                return ZERO_POLY
            if n == k:
                return poly(last.f.integral() / (n + 1)) * self.eval_word(rest)
            if k > 0:
                return self.eval_word(rest + (Sym("wn", n - k, 0, last.f),))
        # creation-dominant rightmost factor: commute it to the far left
        total = ZERO_POLY
        for j, wj in enumerate(rest):
            br = self.commutator(wj, last)
            for sym, c in br.terms.items():
                val = self.eval_word(rest[:j] + (sym,) + rest[j + 1:])
                if val:
                    total = total + c * val
        return total

    # -- generalized-v2 sector evaluation ---------------------------------------
    def _eval_sector(self, word: tuple) -> FormalPolynomial:
        if not word:
            return ONE_POLY
        if sum(s.n - s.k for s in word) != 0:
            return ZERO_POLY
        fs = {s.f for s in word}
        if len(fs) != 1 or not next(iter(fs)).is_indicator():
            raise OutsideSector("generalized-v2 evaluation needs one common indicator test function")
        f = next(iter(fs))
        n = self.rules.n
        if n is None:
            diffs = {s.n - s.k for s in word if s.n > s.k}
            if len(diffs) != 1:
                raise OutsideSector("cannot infer the sector index n from the word")
            n = diffs.pop()
        mu = f.integral()
        state = {0: ONE_POLY}
        for sym in reversed(word):
            new = {}
            for level, amp in state.items():
                for lvl, c in self._apply_sector(sym.n, sym.k, level, n, f, mu).items():
                    new[lvl] = new.get(lvl, ZERO_POLY) + amp * c
            state = {lvl: c for lvl, c in new.items() if c}
        return state.get(0, ZERO_POLY)

    def _apply_sector(self, a: int, b: int, level: int, n: int, f: StepFunction, mu) -> dict:
        key = ("sector", a, b, level, n, f)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        if a == 0 and b == 0:
            out = {level: poly(mu)}
        elif a - b == n:
            out = {level + 1: ONE_POLY}
        elif level == 0:
            if a < b:
                out = {}
            elif a == b:
                out = {0: poly(mu / (a + 1))}
            else:
                raise OutsideSector(f"B^{a}_{b} maps the vacuum outside the B^{n}_0 sector")
        else:
            # G |N> = B^n_0 G |N-1> + [G, B^n_0] |N-1>
            out = {}
            for lvl, c in self._apply_sector(a, b, level - 1, n, f, mu).items():
                out[lvl + 1] = out.get(lvl + 1, ZERO_POLY) + c
            br = self.commutator(Sym("wn", a, b, f), Sym("wn", n, 0, f))
            for sym, c in br.terms.items():
                for lvl, c2 in self._apply_sector(sym.n, sym.k, level - 1, n, f, mu).items():
                    out[lvl] = out.get(lvl, ZERO_POLY) + c * c2
            out = {lvl: c for lvl, c in out.items() if c}
        self._memo[key] = out
        return out


def vacuum_expectation(word, scheme: BracketRule, rules) -> FormalPolynomial:
    return FockEngine(scheme, rules).expectation(word)


def word_star(scheme: BracketRule, word) -> list:
    """Adjoint of a product: (W_1 ... W_m)* = W_m* ... W_1*."""
    out = []
    for w in reversed(word):
        elem = LieElement.of(w) if isinstance(w, Sym) else w
        out.append(involute(scheme, elem))
    return out


def gram(words, scheme: BracketRule, rules, engine: FockEngine | None = None,
         completion: str | None = None, defects: list | None = None) -> list:
    """G_ij = <w_i Φ, w_j Φ> = <Φ, w_i* w_j Φ>.

    Both triangles are evaluated.  With ``completion=None`` a mismatch
    G_ji != conj(G_ij) raises NotHermitian.  With ``completion="upper"`` the
    upper triangle is kept, the lower one is filled by conjugation and each
    mismatch is appended to ``defects`` as (i, j, G_ij, G_ji).  The
    generalized-v1 vacuum rules need this: they do not define a Hermitian
    functional on words mixing B^n_0 and B^{2n}_0.
    """
    engine = engine or FockEngine(scheme, rules)
    words = [list(w) for w in words]
    stars = [word_star(scheme, w) for w in words]
    g = [[None] * len(words) for _ in words]
    for i in range(len(words)):
        for j in range(i, len(words)):
            g[i][j] = engine.expectation(stars[i] + words[j])
            if i == j:
                lower = g[i][i]
            else:
                lower = engine.expectation(stars[j] + words[i])
            if lower != g[i][j].conjugate():
                if completion != "upper":
                    raise NotHermitian(f"Gram matrix not conjugate-symmetric at ({i},{j})",
                                       upper=str(g[i][j]), lower=str(lower))
                if defects is not None:
                    defects.append((i, j, g[i][j], lower))
            if i != j:
                g[j][i] = g[i][j].conjugate() if completion == "upper" else lower
    if completion == "upper":
        for i in range(len(words)):
            if g[i][i] != g[i][i].conjugate():
                raise NotHermitian(f"Gram diagonal entry {i} is not real", value=str(g[i][i]))
    return g


def gram_values(g, assignment: dict | None = None) -> list:
    """Substitute parameters and return a matrix of ExactScalars."""
    assignment = assignment or {}
    return [[entry.evaluate(assignment) for entry in row] for row in g]


def scan_words(n: int, degree_bound: int, f: StepFunction, rules=None) -> list:
    """Words (B^n_0)^a (B^{2n}_0)^b with n a + 2n b <= degree_bound, (a, b) != (0, 0).

    Under the generalized-v2 rules B^{2n}_0 Φ leaves the sector on which those
    rules are defined, so only powers of B^n_0 are used there.
    """
    out = []
    labels = []
    gens = [Sym("wn", n, 0, f), Sym("wn", 2 * n, 0, f)]
    for total in range(n, degree_bound + 1, n):
        for b in range(total // (2 * n) + 1):
            rem = total - 2 * n * b
            if rem % n:
                continue
            a = rem // n
            if isinstance(rules, GeneralizedV2) and b:
                continue
            out.append([gens[0]] * a + [gens[1]] * b)
            labels.append(f"(B^{n}_0)^{a} (B^{2 * n}_0)^{b}")
    return out, labels


def ghost_scan(n: int, degree_bound: int, c, mu, rules, scheme: BracketRule | None = None) -> dict:
    """Exact positivity scan of the Gram matrix on (B^n_0)^a (B^{2n}_0)^b Φ,
    test function χ_(0, μ].  Returns a JSON-ready report."""
    from .serialize import scalar_to_json

    if n < 1:
        raise ValueError("n must be >= 1")
    if degree_bound < 2 * n:
        raise ValueError("degree bound must be at least 2n")
    c = scalar(c)
    mu = scalar(mu)
    if isinstance(rules, str):
        rules = rules_from_name(rules, n)
    if isinstance(rules, GeneralizedV2) and rules.n is None:
        rules = GeneralizedV2(n)
    scheme = scheme or default_scheme(rules, c)
    f = chi(0, mu.to_fraction())
    words, labels = scan_words(n, degree_bound, f, rules)
    engine = FockEngine(scheme, rules)
    defects = []
    g = gram(words, scheme, rules, engine, completion="upper", defects=defects)
    values = gram_values(g, {"c": c})
    scan = hermitian_scan(values)
    report = {
        "n": n,
        "c": scalar_to_json(c) if not c.is_rational() else str(c.to_fraction()),
        "mu": str(mu.to_fraction()),
        "degree_bound": degree_bound,
        "rules": rules.name,
        "scheme": scheme.name,
        "basis": labels,
        "psd": scan["psd"],
        "negative_pivot_at": None,
        "witness": None,
        "witness_norm": None,
        "pivots": [str(p) for p in scan["pivots"]],
        "hermitian": not defects,
        "hermitian_defects": [
            {"i": i, "j": j, "upper": str(u.evaluate({"c": c})), "lower": str(lo.evaluate({"c": c}))}
            for i, j, u, lo in defects
        ],
    }
    if not scan["psd"]:
        report["negative_pivot_at"] = scan["negative_pivot_at"]
        report["negative_pivot_word"] = labels[scan["negative_pivot_at"]]
        report["witness"] = [str(x) for x in scan["witness"]]
        report["witness_norm"] = str(scan["witness_norm"])
    report["gram"] = [[str(x) for x in row] for row in values]
    return report


def factorization_check(words, scheme: BracketRule, rules) -> dict:
    """Compare <Φ, w_1 ... w_m Φ> with the product of the <Φ, w_i Φ>.

    Each ``w_i`` is a list of generators whose test functions live on a region
    disjoint from the regions of the other words.
    """
    words = [list(w) for w in words]
    supports = []
    for w in words:
        supp = None
        for g in w:
            elem = LieElement.of(g) if isinstance(g, Sym) else g
            for sym in elem.terms:
                supp = sym.f if supp is None else supp + sym.f
        supports.append(supp)
    for i, j in itertools.combinations(range(len(words)), 2):
        if supports[i] is not None and supports[j] is not None:
            if not (_support_indicator(supports[i]) * _support_indicator(supports[j])).is_zero():
                raise ValueError(f"words {i} and {j} have overlapping supports")
    engine = FockEngine(scheme, rules)
    joint = engine.expectation([g for w in words for g in w])
    product = ONE_POLY
    parts = []
    for w in words:
        val = engine.expectation(w)
        parts.append(val)
        product = product * val
    return {"joint": joint, "factors": parts, "product": product, "ok": joint == product}


def _support_indicator(f: StepFunction) -> StepFunction:
    return StepFunction([(lo, hi, 1) for lo, hi, _ in f.pieces])


__all__ = ["StrictFock", "GeneralizedV1", "GeneralizedV2", "FockEngine", "vacuum_expectation", "gram",
           "ghost_scan", "factorization_check", "rules_from_name", "default_scheme", "word_star",
           "gram_values", "scan_words"]
