"""Exact dense/sparse linear algebra over the duck-typed scalar fields
(Fraction or RationalFunction).  Matrices are lists of rows in the column
convention: M[i][j] is the coefficient of basis vector i in the image of
basis vector j, so matrices compose like the maps they represent.
"""

from __future__ import annotations

from .errors import SingularSystem


def identity_matrix(n: int, ctx):
    one, zero = ctx.one, ctx.zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int, ctx):
    zero = ctx.zero
    return [[zero] * cols for _ in range(rows)]


def mat_mul(a, b, ctx):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    zero = ctx.zero
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            c = ai[k]
            if not c:
                continue
            bk = b[k]
            for j in range(p):
                if bk[j]:
                    oi[j] = oi[j] + c * bk[j]
    return out


def mat_vec(a, v, ctx):
    zero = ctx.zero
    out = [zero] * len(a)
    for i, row in enumerate(a):
        acc = zero
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out[i] = acc
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def trace(a, ctx):
    t = ctx.zero
    for i in range(len(a)):
        t = t + a[i][i]
    return t


def charpoly(a, ctx) -> list:
    """Monic characteristic polynomial by Faddeev-LeVerrier; returns
    coefficients [c_0, ..., c_{n-1}, 1] with p(x) = sum c_k x^k."""
    n = len(a)
    coeffs = [ctx.zero] * n + [ctx.one]
    m = identity_matrix(n, ctx)
    for k in range(1, n + 1):
        m = mat_mul(a, m, ctx)
        c = -(trace(m, ctx) / ctx.rational(k))
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] = m[i][i] + c
    return coeffs


def poly_div_linear(coeffs: list, root, ctx):
    """Divide sum c_k x^k by (x - root): (quotient coeffs, remainder)."""
    d = len(coeffs) - 1
    q = [ctx.zero] * d
    acc = coeffs[d]
    for k in range(d - 1, -1, -1):
        q[k] = acc
        acc = coeffs[k] + acc * root
    return q, acc


def eval_poly(coeffs: list, x, ctx):
    acc = ctx.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class Echelon:
    """Incremental row echelon over sparse {index: scalar} vectors, with
    optional tracking of how each stored row decomposes over the inserted
    vectors (for change-of-basis bookkeeping)."""

    def __init__(self, track: bool = False, one=1):
        self.rows: dict = {}  # pivot -> (vec, combo | None)
        self.track = track
        self.one = one
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict, combo: dict | None):
        vec = dict(vec)
        while vec:
            p = min(vec)
            if p not in self.rows:
                return vec, combo, p
            rvec, rcombo = self.rows[p]
            c = vec[p]
            for k, x in rvec.items():
                s = vec.get(k)
                s = -c * x if s is None else s - c * x
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            if combo is not None:
                for k, x in rcombo.items():
                    s = combo.get(k)
                    s = -c * x if s is None else s - c * x
                    if s:
                        combo[k] = s
                    else:
                        combo.pop(k, None)
        return vec, combo, None

    def reduce(self, vec: dict) -> dict:
        """Residual of vec modulo the current span (no insertion)."""
        out, _, _ = self._reduce(vec, None)
        return out

    def reduce_with_combo(self, vec: dict):
        """Residual plus the expression of the removed part over the
        previously inserted vectors (requires track=True)."""
        assert self.track
        residual, combo, _ = self._reduce(vec, {})
        return residual, {k: -c for k, c in combo.items()}

    def insert(self, vec: dict):
        """Insert vec; returns the residual (empty dict if dependent)."""
        tag = self._count
        self._count += 1
        combo = {tag: self.one} if self.track else None
        residual, combo, pivot = self._reduce(vec, combo)
        if pivot is None:
            return {}
        inv = residual[pivot]
        normvec = {k: v / inv for k, v in residual.items()}
        if self.track:
            normcombo = {k: v / inv for k, v in combo.items()}
        else:
            normcombo = None
        self.rows[pivot] = (normvec, normcombo)
        return residual

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis_vectors(self) -> list[dict]:
        return [self.rows[p][0] for p in sorted(self.rows)]


def lagrange_projectors(m, eigvals: list, ctx) -> list:
    """Spectral projectors of a diagonalizable matrix with the given
    pairwise-distinct eigenvalues: P_i = prod_{j!=i} (M - x_j)/(x_i - x_j)."""
    n = len(m)
    for i in range(len(eigvals)):
        for j in range(i + 1, len(eigvals)):
            if eigvals[i] == eigvals[j]:
                raise SingularSystem(
                    f"coincident eigenvalues {ctx.text(eigvals[i])}; "
                    "parameters are not generic"
                )
    projectors = []
    for i, xi in enumerate(eigvals):
        p = identity_matrix(n, ctx)
        for j, xj in enumerate(eigvals):
            if j == i:
                continue
            num = [row[:] for row in m]
            for k in range(n):
                num[k][k] = num[k][k] - xj
            p = mat_mul(p, num, ctx)
            p = mat_scale(p, ctx.one / (xi - xj))
        projectors.append(p)
    return projectors


def mat_inverse(a, ctx):
    """Gauss-Jordan inverse; raises SingularSystem when a is singular."""
    n = len(a)
    work = [row[:] + ident_row for row, ident_row in zip(a, identity_matrix(n, ctx))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise SingularSystem("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = ctx.one / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r == col or not work[r][col]:
                continue
            c = work[r][col]
            work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_rank(a, ctx) -> int:
    ech = Echelon()
    for row in a:
        ech.insert({j: x for j, x in enumerate(row) if x})
    return ech.rank


def dense_to_sparse(row) -> dict:
    return {j: x for j, x in enumerate(row) if x}
