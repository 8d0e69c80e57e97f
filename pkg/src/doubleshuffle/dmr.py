"""Double shuffle conditions, derivations, brackets, graded solver.

Both membership variants are supported: the root-of-unity form on alphabet
X and the congruence form on alphabet Xt, plus the divisor-extended (dist)
variants.  Membership at truncation degree D means every residual below is
exactly zero for all degrees <= D:

  (i)   the degree-one scalar conditions,
  (ii)  shuffle primitivity,
  (iii) the letter symmetry under index negation,
  (iv)  harmonic primitivity of the star-corrected projection,

together with a zero constant term (the bracket and the primitivity
conditions only see the augmentation ideal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycContext, CycNum
from .distribution import distribution_residuals, divisors
from .linalg import kernel_basis
from .morphisms import p_map, proj_y, q_map, t_root, weight_projector
from .products import harmonic, is_primitive, product_expand
from .series import ContextMismatchError, Series
from .words import (
    SizeLimitError,
    class_letter,
    count_words,
    enumerate_words,
    enumerate_y_words,
    word_str,
    y_embed,
)

VARIANTS = ("dmr0-muN", "dmr0-N", "dmrd0-muN", "dmrd0-N")


def variant_alphabet(variant: str) -> str:
    return "Xt" if variant.endswith("-N") else "X"


def variant_with_dist(variant: str) -> bool:
    return variant.startswith("dmrd")


# ---------------------------------------------------------------------------
# star corrections

def _correction_coeff(n: int) -> Fraction:
    """Coefficient of the n-th logarithmic correction term, (-1)^(n-1) / n."""
    return Fraction((-1) ** (n - 1), n)


def _correction_coeff_tilde(n: int, level: int) -> Fraction:
    """Congruence-side correction coefficient, (-1)^(n-1) / (n N^n).

    The N-power makes the Fourier image of the corrected projection match
    the root-of-unity correction exactly (each of the N^n enumerated
    degree-n monomials carries this coefficient, and the class sums collapse
    to a single N^n factor).
    """
    return Fraction((-1) ** (n - 1), n * level**n)


def psi_star(f: Series) -> Series:
    """Harmonic-side regularized projection on the root-of-unity alphabet."""
    if f.alphabet != "X":
        raise ContextMismatchError("psi_star expects alphabet X")
    ctx, d = f.ctx, f.max_degree
    out = proj_y(p_map(f, inverse=True))
    if d < 2:
        return out
    y11 = Series.from_word(ctx, "X", d, (ctx.N,))
    power = y11 * y11
    for n in range(2, d + 1):
        c = f.coefficient((0,) * (n - 1) + (ctx.N,))
        if c:
            out = out + power.scale(c * _correction_coeff(n))
        power = power * y11
    return out


def psi_star_tilde(f: Series) -> Series:
    """Harmonic-side regularized projection on the congruence alphabet."""
    if f.alphabet != "Xt":
        raise ContextMismatchError("psi_star_tilde expects alphabet Xt")
    ctx, d = f.ctx, f.max_degree
    n_level = ctx.N
    out = proj_y(q_map(f, inverse=True))
    if d < 2:
        return out
    ysum = Series(ctx, "Xt", d, {(b,): ctx.one for b in range(1, n_level + 1)})
    power = ysum * ysum
    for n in range(2, d + 1):
        total = ctx.zero
        for a in range(1, n_level + 1):
            total = total + f.coefficient((0,) * (n - 1) + (a,))
        if total:
            out = out + power.scale(total * _correction_coeff_tilde(n, n_level))
        power = power * ysum
    return out


def star_projection(f: Series) -> Series:
    return psi_star(f) if f.alphabet == "X" else psi_star_tilde(f)


# ---------------------------------------------------------------------------
# membership report

@dataclass
class DmrReport:
    variant: str
    max_degree: int
    constant_term: CycNum
    scalar_residuals: list        # [(label, CycNum)]
    shuffle_witness: tuple | None  # (u, v, value) or None
    letter_residuals: list        # [(index m, CycNum)]
    harmonic_witness: tuple | None
    dist_term_counts: dict = field(default_factory=dict)   # divisor -> count
    warnings: list = field(default_factory=list)

    @property
    def member(self) -> bool:
        return (
            not self.constant_term
            and not any(v for _, v in self.scalar_residuals)
            and self.shuffle_witness is None
            and not any(v for _, v in self.letter_residuals)
            and self.harmonic_witness is None
            and not any(self.dist_term_counts.values())
        )

    def to_dict(self, alphabet: str, level: int) -> dict:
        def witness(w):
            if w is None:
                return None
            u, v, value = w
            return {
                "left": list(u),
                "right": list(v),
                "left_str": word_str(u, alphabet, level),
                "right_str": word_str(v, alphabet, level),
                "value": value.serialize(),
            }

        return {
            "variant": self.variant,
            "max_degree": self.max_degree,
            "member": self.member,
            "constant_term": self.constant_term.serialize(),
            "scalar_residuals": [
                {"label": lab, "value": v.serialize()} for lab, v in self.scalar_residuals
            ],
            "shuffle_primitivity_witness": witness(self.shuffle_witness),
            "letter_residuals": [
                {"index": m, "value": v.serialize()} for m, v in self.letter_residuals
            ],
            "harmonic_primitivity_witness": witness(self.harmonic_witness),
            "dist_residual_terms": {str(k): v for k, v in sorted(self.dist_term_counts.items())},
            "warnings": list(self.warnings),
        }


def dmr_report(
    f: Series,
    variant: str | None = None,
    dist_correction: str = "letter",
    higher_k_diagnostics: bool = True,
) -> DmrReport:
    """Evaluate the membership conditions and collect exact residuals."""
    ctx, d = f.ctx, f.max_degree
    n = ctx.N
    tilde = f.alphabet == "Xt"
    if variant is None:
        variant = "dmr0-N" if tilde else "dmr0-muN"
    if variant_alphabet(variant) != f.alphabet:
        raise ContextMismatchError(f"variant {variant} expects {variant_alphabet(variant)}")

    scalars = []
    if tilde:
        scalars.append(("coeff of the xt word", f.coefficient((0,))))
        total = ctx.zero
        for m in range(1, n + 1):
            total = total + f.coefficient((m,))
        scalars.append(("sum of class-letter coefficients", total))
    else:
        scalars.append(("coeff of x0", f.coefficient((0,))))
        scalars.append(("coeff of x1", f.coefficient((n,))))

    _, sh_witness = is_primitive(f, "shuffle")

    letters = []
    for m in range(1, n + 1):
        m_neg = class_letter(-m, n)
        if m < m_neg or m == n:
            continue
        letters.append((m, f.coefficient((m,)) - f.coefficient((m_neg,))))

    star = star_projection(f)
    _, ha_witness = is_primitive(star, "harmonic")

    warnings = []
    if higher_k_diagnostics and not tilde:
        for k in range(2, d + 1):
            for m in range(1, n + 1):
                lhs = star.coefficient((0,) * (k - 1) + (m,))
                rhs = star.coefficient((0,) * (k - 1) + (class_letter(-m, n),))
                resid = lhs - rhs * ((-1) ** (k - 1))
                if resid:
                    warnings.append(
                        f"higher-depth harmonic symmetry fails at (k={k}, m={m}); "
                        "diagnostic only, not a membership condition"
                    )

    dist_counts = {}
    if variant_with_dist(variant):
        for dv, residual in distribution_residuals(f, correction=dist_correction).items():
            dist_counts[dv] = len(residual.terms)

    return DmrReport(
        variant=variant,
        max_degree=d,
        constant_term=f.constant_term(),
        scalar_residuals=scalars,
        shuffle_witness=sh_witness,
        letter_residuals=letters,
        harmonic_witness=ha_witness,
        dist_term_counts=dist_counts,
        warnings=warnings,
    )


# ---------------------------------------------------------------------------
# derivations and the bracket

def derivation_letter_images(psi: Series) -> dict:
    """Images of the letters under the derivation attached to psi."""
    ctx, d = psi.ctx, psi.max_degree
    images = {0: Series.zero(ctx, psi.alphabet, d)}
    if psi.alphabet == "X":
        for m in range(1, ctx.N + 1):
            xm = Series.from_word(ctx, "X", d, (m,))
            images[m] = xm.commutator(t_root(psi, m))
    else:
        lsum = Series(ctx, "Xt", d, {(b,): ctx.one for b in range(1, ctx.N + 1)})
        base = lsum.commutator(psi)
        for m in range(1, ctx.N + 1):
            images[m] = weight_projector(base, m)
    return images


def derivation_apply(psi: Series, target: Series) -> Series:
    """Extend the letter images by the Leibniz rule, truncated at D."""
    psi._check_compatible(target)
    d = min(psi.max_degree, target.max_degree)
    images = derivation_letter_images(psi.truncate(d))
    out = {}
    for w, c in target.terms.items():
        if len(w) > d:
            continue
        budget = d - (len(w) - 1)
        for i, letter in enumerate(w):
            img = images[letter]
            if not img.terms:
                continue
            head, tail = w[:i], w[i + 1:]
            for u, cu in img.terms.items():
                if len(u) > budget:
                    continue
                nw = head + u + tail
                add = c * cu
                s = out.get(nw)
                s = add if s is None else s + add
                if s:
                    out[nw] = s
                else:
                    out.pop(nw, None)
    return Series(psi.ctx, psi.alphabet, d, out)


def ihara_bracket(f: Series, g: Series) -> Series:
    """d_f(g) - d_g(f) + [f, g] on either alphabet."""
    return derivation_apply(f, g) - derivation_apply(g, f) + f.commutator(g)


# ---------------------------------------------------------------------------
# graded linear system and kernel

def graded_matrix(
    n: int,
    degree: int,
    tilde: bool,
    include_dist: bool = False,
    dist_correction: str = "letter",
    cap: int = 200_000,
):
    """Rows (over Q) of the degree-``degree`` membership conditions.

    Returns (rows, basis_words).  All conditions are linear with rational
    coefficients degree by degree, so the graded piece is the kernel.
    """
    if count_words(n, degree) > cap:
        raise SizeLimitError(
            f"{count_words(n, degree)} words exceed the configured cap {cap}"
        )
    basis_words = enumerate_words(n, degree, cap=cap)
    index = {w: i for i, w in enumerate(basis_words)}
    ncols = len(basis_words)
    rows = []

    def new_row():
        return [Fraction(0)] * ncols

    alphabet = "Xt" if tilde else "X"

    if degree == 1:
        row = new_row()
        row[index[(0,)]] = Fraction(1)
        rows.append(row)
        if tilde:
            row = new_row()
            for m in range(1, n + 1):
                row[index[(m,)]] = Fraction(1)
            rows.append(row)
        else:
            row = new_row()
            row[index[(n,)]] = Fraction(1)
            rows.append(row)
        for m in range(1, n + 1):
            m_neg = class_letter(-m, n)
            if m >= m_neg:
                continue
            row = new_row()
            row[index[(m,)]] = Fraction(1)
            row[index[(m_neg,)]] = Fraction(-1)
            rows.append(row)

    # (ii) shuffle primitivity rows
    for du in range(1, degree):
        dv = degree - du
        if dv < du:
            break
        us = enumerate_words(n, du, cap=cap)
        vs = enumerate_words(n, dv, cap=cap)
        for iu, u in enumerate(us):
            for v in vs:
                if du == dv and v < u:
                    continue
                row = new_row()
                for w, mult in product_expand(u, v, "shuffle", n, alphabet).items():
                    row[index[w]] += mult
                rows.append(row)

    # (iv) harmonic primitivity of the star projection
    corr = (
        _correction_coeff_tilde(degree, n) if tilde else _correction_coeff(degree)
    ) if degree >= 2 else None
    transform = q_map if tilde else p_map
    ctx_cache = {}

    ctx = CycContext(n)

    def star_row_add(row, yword, mult):
        w = y_embed(yword)
        tw = ctx_cache.get(w)
        if tw is None:
            s = Series.from_word(ctx, alphabet, degree, w)
            ((tw, _),) = transform(s).terms.items()
            ctx_cache[w] = tw
        row[index[tw]] += mult
        if corr is not None and all(k == 1 for k, _ in yword):
            if tilde:
                for a in range(1, n + 1):
                    row[index[(0,) * (degree - 1) + (a,)]] += mult * corr
            else:
                if all(m == n for _, m in yword):
                    row[index[(0,) * (degree - 1) + (n,)]] += mult * corr

    for du in range(1, degree):
        dv = degree - du
        if dv < du:
            break
        yus = enumerate_y_words(n, du, cap=cap)
        yvs = enumerate_y_words(n, dv, cap=cap)
        for yu in yus:
            for yv in yvs:
                if du == dv and yv < yu:
                    continue
                row = new_row()
                for yw, mult in harmonic(yu, yv, n, tilde).items():
                    star_row_add(row, yw, mult)
                rows.append(row)

    if include_dist:
        rows.extend(
            _dist_rows(n, degree, tilde, basis_words, index, dist_correction)
        )
    return rows, basis_words


def _dist_rows(n, degree, tilde, basis_words, index, correction):
    rows = []
    for dv in divisors(n):
        targets = {}

        def bump(target_word, col, value):
            row = targets.get(target_word)
            if row is None:
                row = targets[target_word] = [Fraction(0)] * len(basis_words)
            row[col] += value

        for col, w in enumerate(basis_words):
            if tilde:
                if all(l == 0 or l % dv == 0 for l in w):
                    bump(w, col, Fraction(dv ** len(w)))
                iw = tuple(l if l == 0 else class_letter(l * dv, n) for l in w)
                bump(iw, col, Fraction(-1))
            else:
                zeros = sum(1 for l in w if l == 0)
                pw = tuple(l if l == 0 else class_letter(l * dv, n) for l in w)
                bump(pw, col, Fraction(dv**zeros))
                if all(l == 0 or l % dv == 0 for l in w):
                    bump(w, col, Fraction(-1))
        if degree == 1:
            if tilde:
                source = (n,) if correction == "letter" else (0,)
                for s in range(dv, n + 1, dv):
                    bump((s,), index[source], Fraction(-1))
            else:
                for m in range(dv, n + 1, dv):
                    bump((n,), index[(m,)], Fraction(-1))
        rows.extend(targets.values())
    return rows


def graded_basis(n: int, degree: int, variant: str, field_name: str = "Q", cap: int = 200_000):
    """Kernel basis of the graded membership conditions, as Series."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    tilde = variant_alphabet(variant) == "Xt"
    rows, basis_words = graded_matrix(
        n, degree, tilde, include_dist=variant_with_dist(variant), cap=cap
    )
    ctx = CycContext(n)
    if field_name == "QmuN":
        rows = [[ctx.from_rational(x) for x in row] for row in rows]
        vectors = kernel_basis(rows, len(basis_words), one=ctx.one)
    elif field_name == "Q":
        vectors = kernel_basis(rows, len(basis_words))
    else:
        raise ValueError(f"unknown field {field_name!r}; expected Q or QmuN")
    alphabet = variant_alphabet(variant)
    out = []
    for vec in vectors:
        terms = {w: c for w, c in zip(basis_words, vec) if c}
        out.append(Series(ctx, alphabet, degree, terms))
    return out


def graded_dimension(n: int, degree: int, variant: str, field_name: str = "Q", cap: int = 200_000) -> int:
    return len(graded_basis(n, degree, variant, field_name, cap))
