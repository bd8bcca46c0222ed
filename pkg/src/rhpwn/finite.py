"""Finite-dimensional *-Lie algebras given by structure-constant tables."""

from __future__ import annotations

import itertools

from .errors import InvariantBreach
from .exact import ZERO, scalar
from .lie import BracketRule, LieElement, Sym


class FiniteLieAlgebra:
    """Lie algebra on named basis vectors.

    ``table`` maps ordered pairs (a, b) to {c: coefficient}, meaning
    [a, b] = sum coefficient * c.  Only one of (a, b) / (b, a) needs to be
    given; the other is filled in by antisymmetry (giving both is allowed if
    they agree).  ``star`` optionally maps each basis name to the coordinates
    of its adjoint; it is extended antilinearly.

    Construction validates antisymmetry, Jacobi and, when present, that the
    star is an involutive anti-homomorphism.
    """

    def __init__(self, names, table, star=None, validate=True):
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        self.index = {name: i for i, name in enumerate(self.names)}
        d = len(self.names)
        self.dim = d
        zero = [ZERO] * d
        self.c = [[list(zero) for _ in range(d)] for _ in range(d)]
        given = {}
        for (a, b), row in table.items():
            i, j = self.index[a], self.index[b]
            vec = list(zero)
            for name, coeff in row.items():
                vec[self.index[name]] = scalar(coeff)
            if i == j and any(vec):
                raise ValueError(f"[{a}, {a}] must vanish")
            if (j, i) in given:
                if [-x for x in given[(j, i)]] != vec:
                    raise ValueError(f"table entries for ({a},{b}) and ({b},{a}) are not antisymmetric")
            given[(i, j)] = vec
            self.c[i][j] = vec
            self.c[j][i] = [-x for x in vec]
        self.star = None
        if star is not None:
            self.star = []
            for name in self.names:
                vec = list(zero)
                for other, coeff in star[name].items():
                    vec[self.index[other]] = scalar(coeff)
                self.star.append(vec)
        if validate:
            problems = self.validate()
            if problems:
                raise ValueError(f"not a *-Lie algebra: {problems[0]}")

    # -- coordinates -------------------------------------------------------
    def basis_vector(self, name) -> list:
        v = [ZERO] * self.dim
        v[self.index[name]] = scalar(1)
        return v

    def bracket_vec(self, u, v) -> list:
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                w = ui * vj
                for g, cg in enumerate(self.c[i][j]):
                    if cg:
                        out[g] = out[g] + w * cg
        return out

    def star_vec(self, u) -> list:
        if self.star is None:
            raise ValueError("algebra has no involution")
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if ui:
                uc = ui.conjugate()
                for g, sg in enumerate(self.star[i]):
                    if sg:
                        out[g] = out[g] + uc * sg
        return out

    def structure_constant(self, a, b, c):
        return self.c[self.index[a]][self.index[b]][self.index[c]]

    def derived_algebra_rank(self) -> int:
        from .linalg import rank

        rows = [self.c[i][j] for i in range(self.dim) for j in range(i + 1, self.dim)]
        return rank(rows) if rows else 0

    # -- checks --------------------------------------------------------------
    def validate(self) -> list:
        problems = []
        d = self.dim
        e = [self.basis_vector(n) for n in self.names]
        for i, j, k in itertools.combinations(range(d), 3):
            jac = [x + y + z for x, y, z in zip(
                self.bracket_vec(self.c[i][j], e[k]),
                self.bracket_vec(self.c[j][k], e[i]),
                self.bracket_vec(self.c[k][i], e[j]))]
            if any(jac):
                problems.append(f"Jacobi fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        if self.star is not None:
            for i in range(d):
                if self.star_vec(self.star[i]) != e[i]:
                    problems.append(f"star is not involutive on {self.names[i]}")
                for j in range(d):
                    lhs = self.star_vec(self.c[i][j])
                    rhs = self.bracket_vec(self.star[j], self.star[i])
                    if lhs != rhs:
                        problems.append(f"star is not an anti-homomorphism on ({self.names[i]}, {self.names[j]})")
        return problems

    def assert_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise InvariantBreach(problems[0])

    # -- views ---------------------------------------------------------------
    def rule(self) -> "TableRule":
        return TableRule(self)

    def to_json(self) -> dict:
        from .serialize import scalar_to_json

        table = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                row = {self.names[g]: scalar_to_json(x) for g, x in enumerate(self.c[i][j]) if x}
                if row:
                    table.append({"x": self.names[i], "y": self.names[j], "bracket": row})
        out = {"basis": self.names, "brackets": table}
        if self.star is not None:
            out["star"] = {self.names[i]: {self.names[g]: scalar_to_json(x) for g, x in enumerate(v) if x}
                           for i, v in enumerate(self.star)}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLieAlgebra":
        from .serialize import scalar_from_json

        table = {}
        for entry in data.get("brackets", []):
            table[(entry["x"], entry["y"])] = {k: scalar_from_json(v) for k, v in entry["bracket"].items()}
        star = None
        if data.get("star") is not None:
            star = {k: {n: scalar_from_json(v) for n, v in row.items()} for k, row in data["star"].items()}
        return cls(data["basis"], table, star=star)

    def __repr__(self):
        return f"FiniteLieAlgebra({self.names})"


class TableRule(BracketRule):
    """Bracket rule over ``label`` symbols backed by a FiniteLieAlgebra."""

    def __init__(self, algebra: FiniteLieAlgebra):
        super().__init__()
        self.algebra = algebra
        self.name = f"table{algebra.names}"

    def supports(self, sym: Sym) -> bool:
        return sym.kind == "label" and sym.name in self.algebra.index

    def bracket_symbols(self, a, b):
        vec = self.algebra.c[self.algebra.index[a.name]][self.algebra.index[b.name]]
        return LieElement({Sym("label", name=self.algebra.names[g]): x for g, x in enumerate(vec) if x})

    def star_symbol(self, a):
        if self.algebra.star is None:
            raise ValueError("algebra has no involution")
        vec = self.algebra.star[self.algebra.index[a.name]]
        return LieElement({Sym("label", name=self.algebra.names[g]): x for g, x in enumerate(vec) if x})
