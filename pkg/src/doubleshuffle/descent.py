"""Galois descent between the two rational forms.

The semilinear action (sigma on coefficients, index scaling on words)
stabilizes each graded membership space after scalar extension.  Restriction
of scalars turns it into commuting rational matrices, one per unit mod N;
their common fixed space is the descent datum: mapped through the Fourier
isomorphism it lands exactly in the other rational form.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycContext
from .dmr import graded_basis, variant_alphabet
from .linalg import galois_matrix, invariant_subspace, kron, rref
from .morphisms import delta_unit
from .series import Series
from .words import enumerate_words


def _coords_in_span(basis_vecs, targets):
    """Exact coordinates of each target in the span of the basis vectors.

    Raises ValueError when a target leaves the span (the stability tests
    rely on this to detect a broken action).
    """
    if not basis_vecs:
        if any(any(t) for t in targets):
            raise ValueError("nonzero target in empty span")
        return [[] for _ in targets]
    m = len(basis_vecs[0])
    k = len(basis_vecs)
    rows = []
    for i in range(m):
        rows.append([bv[i] for bv in basis_vecs] + [t[i] for t in targets])
    r, pivots = rref(rows)
    if any(p >= k for p in pivots):
        raise ValueError("target outside the span of the basis")
    coords = [[Fraction(0)] * k for _ in targets]
    for row_idx, p in enumerate(pivots):
        for t_idx in range(len(targets)):
            coords[t_idx][p] = r[row_idx][k + t_idx]
    return coords


def _basis_vectors(basis, words):
    index = {w: i for i, w in enumerate(words)}
    out = []
    for b in basis:
        vec = [Fraction(0)] * len(words)
        for w, c in b.terms.items():
            vec[index[w]] = c.rational()
        out.append(vec)
    return out


def unit_action_matrix(basis, words, gamma):
    """Rational matrix of the index-scaling action on a graded basis."""
    vecs = _basis_vectors(basis, words)
    images = []
    index = {w: i for i, w in enumerate(words)}
    for b in basis:
        img = delta_unit(b, gamma)
        vec = [Fraction(0)] * len(words)
        for w, c in img.terms.items():
            vec[index[w]] = c.rational()
        images.append(vec)
    cols = _coords_in_span(vecs, images)
    k = len(basis)
    return [[cols[j][l] for j in range(k)] for l in range(k)]


def semilinear_ops(n: int, degree: int, variant: str):
    """Restricted-scalars matrices of the semilinear action on the graded
    membership space, one per unit mod N."""
    ctx = CycContext(n)
    basis = graded_basis(n, degree, variant)
    words = enumerate_words(n, degree)
    ops = []
    for k in ctx.units():
        p = unit_action_matrix(basis, words, k)
        ops.append(kron(p, galois_matrix(ctx, k)))
    return ops, basis, ctx


def invariant_basis_series(n: int, degree: int, variant: str):
    """Q-basis of the G_N-invariants of Q(mu_N) ⊗ (graded piece), as series.

    Basis ordering of the restricted space is v_j ⊗ zeta^i at flat index
    j * phi + i.
    """
    ops, basis, ctx = semilinear_ops(n, degree, variant)
    if not basis:
        return []
    vectors = invariant_subspace(ops)
    phi = ctx.phi
    alphabet = variant_alphabet(variant)
    out = []
    for vec in vectors:
        acc = Series.zero(ctx, alphabet, degree)
        for j, b in enumerate(basis):
            coeff = ctx.from_coordinates(vec[j * phi : (j + 1) * phi])
            if coeff:
                acc = acc + b.scale(coeff)
        out.append(acc)
    return out


def descent_dimension(n: int, degree: int, variant: str) -> int:
    """Q-dimension of the invariant subspace of the scalar-extended graded
    piece of ``variant`` under the semilinear action."""
    ops, basis, _ = semilinear_ops(n, degree, variant)
    if not basis:
        return 0
    return len(invariant_subspace(ops))
