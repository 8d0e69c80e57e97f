"""Exact dense linear algebra over Q or Q(mu_N).

Entries are Fractions or CycNums; both support the field protocol used here
(+, -, *, /, ==, truth value).  Elimination is fraction-exact with pivot
selection preferring +-1 entries, which measurably limits coefficient growth
at the sizes the graded solvers produce (a few hundred rows).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycContext, CycNum


def _is_pm_one(x) -> bool:
    if isinstance(x, Fraction):
        return x == 1 or x == -1
    if isinstance(x, CycNum):
        if not x.is_rational():
            return False
        q = x.rational()
        return q == 1 or q == -1
    return x == 1 or x == -1


def rref(rows, track: bool = False):
    """Reduced row echelon form.

    Returns (R, pivots) or, with ``track``, (R, pivots, T) where T is the
    recorded row-operation matrix with T @ A = R exactly.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    t = None
    if track:
        one = Fraction(1)
        zero = Fraction(0)
        if nrows and isinstance(a[0][0], CycNum):
            ctx = a[0][0].ctx
            one, zero = ctx.one, ctx.zero
        t = [[one if i == j else zero for j in range(nrows)] for i in range(nrows)]
    pivots = []
    pr = 0
    for c in range(ncols):
        best = None
        for r in range(pr, nrows):
            if a[r][c]:
                if _is_pm_one(a[r][c]):
                    best = r
                    break
                if best is None:
                    best = r
        if best is None:
            continue
        a[pr], a[best] = a[best], a[pr]
        if track:
            t[pr], t[best] = t[best], t[pr]
        piv = a[pr][c]
        if not _is_one(piv):
            inv = _field_one(piv) / piv
            a[pr] = [x * inv for x in a[pr]]
            if track:
                t[pr] = [x * inv for x in t[pr]]
        for r in range(nrows):
            if r != pr and a[r][c]:
                factor = a[r][c]
                arow, prow = a[r], a[pr]
                a[r] = [x - factor * y for x, y in zip(arow, prow)]
                if track:
                    t[r] = [x - factor * y for x, y in zip(t[r], t[pr])]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    if track:
        return a, pivots, t
    return a, pivots


def _is_one(x):
    if isinstance(x, Fraction):
        return x == 1
    if isinstance(x, CycNum):
        return x.is_rational() and x.rational() == 1
    return x == 1


def _field_one(sample):
    if isinstance(sample, CycNum):
        return sample.ctx.one
    return Fraction(1)


def rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def kernel_basis(rows, ncols: int, one=Fraction(1)):
    """Basis of the right kernel in echelon-complement form.

    Each basis vector carries a 1 at its own free column and zeros at the
    other free columns, so coordinates w.r.t. this basis can be read off the
    free columns directly.
    """
    zero = one - one
    if not rows:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    r, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            v = r[i][fc]
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def mat_mul(a, b):
    if not a or not b:
        return []
    cols = len(b[0])
    return [
        [sum((x * b[k][j] for k, x in enumerate(row) if x), start=row[0] - row[0])
         for j in range(cols)]
        for row in a
    ]


def mat_vec(a, v):
    return [sum((x * v[k] for k, x in enumerate(row) if x), start=row[0] - row[0]) for row in a]


def mat_identity(n, one=Fraction(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kron(a, b):
    """Kronecker product, index (i, s) -> i * len(b) + s."""
    if not a or not b:
        return []
    bn = len(b)
    bm = len(b[0])
    out = []
    for arow in a:
        for s in range(bn):
            row = []
            for x in arow:
                row.extend(x * y for y in b[s])
            out.append(row)
    return out


def invariant_subspace(ops, one=Fraction(1)):
    """Basis of the common fixed space of a family of square matrices."""
    if not ops:
        raise ValueError("need at least one operator")
    n = len(ops[0])
    stacked = []
    for op in ops:
        if len(op) != n or any(len(row) != n for row in op):
            raise ValueError("operators must be square of equal size")
        stacked.extend(mat_sub(op, mat_identity(n, one)))
    return kernel_basis(stacked, n, one=one)


# ---------------------------------------------------------------------------
# restriction of scalars Q(mu_N) -> Q

def cyc_mult_matrix(ctx: CycContext, c: CycNum):
    """phi x phi rational matrix of multiplication by c in the power basis."""
    cols = []
    for j in range(ctx.phi):
        cols.append((c * ctx.zeta_power(j)).coordinates())
    return [[cols[j][i] for j in range(ctx.phi)] for i in range(ctx.phi)]


def galois_matrix(ctx: CycContext, k: int):
    """phi x phi rational matrix of zeta -> zeta^k in the power basis."""
    cols = [ctx.zeta_power(j * k).coordinates() for j in range(ctx.phi)]
    return [[cols[j][i] for j in range(ctx.phi)] for i in range(ctx.phi)]


def restrict_scalars(a_cyc, ctx: CycContext):
    """Q-linear matrix of a Q(mu_N)-linear matrix, basis v_j x zeta^i."""
    if not a_cyc:
        return []
    n = len(a_cyc)
    m = len(a_cyc[0])
    phi = ctx.phi
    out = [[Fraction(0)] * (m * phi) for _ in range(n * phi)]
    for i in range(n):
        for j in range(m):
            block = cyc_mult_matrix(ctx, a_cyc[i][j])
            for s in range(phi):
                for u in range(phi):
                    out[i * phi + s][j * phi + u] = block[s][u]
    return out


def semilinear_restriction(p_rational, ctx: CycContext, k: int):
    """Q-matrix of v ⊗ r -> P(v) ⊗ sigma_k(r) on the basis v_j x zeta^i."""
    return kron(p_rational, galois_matrix(ctx, k))
