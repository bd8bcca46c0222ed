"""Exact dense linear algebra over ExactScalar.

Matrices are lists of rows.  Everything here is exact: pivots are chosen by
exact nonzero tests, and the Hermitian scan decides definiteness by the signs
of exact pivots instead of floating-point eigenvalues.
"""

from __future__ import annotations

from .exact import ExactScalar, ONE, ZERO, scalar


def matrix(rows) -> list:
    return [[scalar(x) for x in row] for row in rows]


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def conj_transpose(a) -> list:
    if not a:
        return []
    return [[a[i][j].conjugate() for i in range(len(a))] for j in range(len(a[0]))]


def mat_vec(a, v) -> list:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def hermitian_form(a, v) -> ExactScalar:
    """v* A v."""
    av = mat_vec(a, v)
    acc = ZERO
    for x, y in zip(v, av):
        if x and y:
            acc = acc + x.conjugate() * y
    return acc


def rref(a, ncols: int | None = None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = [list(row) for row in a]
    if not m:
        return m, []
    cols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def nullspace(a, ncols: int | None = None) -> list:
    """Basis of {x : A x = 0}."""
    if not a:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    n = len(a[0])
    r, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * n
        v[fcol] = ONE
        for row_i, pc in enumerate(pivots):
            v[pc] = -r[row_i][fcol]
        basis.append(v)
    return basis


def solve(a, b) -> list | None:
    """One solution of A x = b, or None when the system is inconsistent."""
    if not a:
        return []
    n = len(a[0])
    aug = [list(row) + [scalar(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug, ncols=n)
    for row in r[len(pivots):]:
        if row[n]:
            return None
    x = [ZERO] * n
    for row_i, pc in enumerate(pivots):
        x[pc] = r[row_i][n]
    return x


def hermitian_scan(g) -> dict:
    """Decide positive semidefiniteness of a Hermitian matrix exactly.

    Symmetric Gaussian elimination with diagonal pivoting (an LDL* scan).  At
    each step the largest positive diagonal entry of the current Schur
    complement is eliminated.  A negative diagonal entry, or a zero diagonal
    entry with a nonzero off-diagonal entry in its row, proves indefiniteness;
    in that case a witness x with x* G x < 0 is built, lifted back to the
    original coordinates and checked against G itself.
    """
    n = len(g)
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i].conjugate():
                raise ValueError(f"matrix is not Hermitian at ({i},{j})")
    s = [list(row) for row in g]
    active = list(range(n))
    pivots = []
    pivot_values = []
    while active:
        neg = next((i for i in active if s[i][i].real().sign() < 0), None)
        if neg is not None:
            local = {neg: ONE}
            return _ghost(g, pivots, local, neg, pivot_values)
        zero_rows = [i for i in active if not s[i][i]]
        for i in zero_rows:
            j = next((j for j in active if j != i and s[i][j]), None)
            if j is not None:
                sij = s[i][j]
                t = s[j][j] / sij.abs2() + 1
                local = {i: -sij * t, j: ONE}
                return _ghost(g, pivots, local, i, pivot_values)
        # zero rows with zero off-diagonals are null directions: drop them
        active = [i for i in active if s[i][i]]
        if not active:
            break
        p = active[0]
        for i in active[1:]:
            if s[i][i] > s[p][p]:
                p = i
        pv = s[p][p]
        pivots.append(p)
        pivot_values.append(pv)
        active.remove(p)
        inv = pv.inverse()
        for a in active:
            if not s[a][p]:
                continue
            fa = s[a][p] * inv
            for b in active:
                if s[p][b]:
                    s[a][b] = s[a][b] - fa * s[p][b]
    return {"psd": True, "pivot_order": pivots, "pivots": pivot_values,
            "negative_pivot_at": None, "witness": None, "witness_norm": None}


def _ghost(g, pivots, local, at, pivot_values) -> dict:
    """Lift a Schur-complement witness to full coordinates and verify it."""
    n = len(g)
    x = [ZERO] * n
    for i, v in local.items():
        x[i] = v
    if pivots:
        gpp = [[g[a][b] for b in pivots] for a in pivots]
        rhs = []
        for a in pivots:
            acc = ZERO
            for i, v in local.items():
                acc = acc - g[a][i] * v
            rhs.append(acc)
        u = solve(gpp, rhs)
        if u is None:
            raise ArithmeticError("singular pivot block while lifting witness")
        for a, ua in zip(pivots, u):
            x[a] = ua
    norm = hermitian_form(g, x)
    if norm.real().sign() >= 0:
        raise ArithmeticError(f"witness failed verification: norm {norm}")
    return {"psd": False, "pivot_order": pivots, "pivots": pivot_values,
            "negative_pivot_at": at, "witness": x, "witness_norm": norm}
