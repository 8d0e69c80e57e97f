"""Divisor-level (distribution) maps and membership conditions.

For each divisor d of N the level-N/d alphabets are represented inside the
level-N letter space: valid root letters are the exponents divisible by d,
valid class letters are the classes divisible by d (both via their
representative in [1, N]).  A letter then corresponds to the sub-level
letter through the group isomorphism nu_d : Z/(N/d)Z -> dZ/NZ fixed by
nu_d(iota_d(a)) = iota(d a).

With that embedding the four algebra morphisms become index computations:

    lower_p on X:   x0 -> d x0,            x_(zeta^m) -> x_(zeta^(d m))
    lower_i on X:   x0 -> x0,              x_(zeta^m) -> kept iff d | m
    lower_p on Xt:  xt -> d xt,            xt_a -> d xt_a iff d | a else 0
    lower_i on Xt:  xt -> xt,              xt_a -> xt_(d a)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import ContextMismatchError, Series
from .words import class_letter

CORRECTION_MODES = ("letter", "word")


def divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class DivisorContext:
    """Level N, divisor d, and the isomorphism nu_d with its inverse."""

    N: int
    d: int

    def __post_init__(self):
        if self.N % self.d:
            raise ValueError(f"{self.d} does not divide {self.N}")

    @property
    def sub_level(self) -> int:
        return self.N // self.d

    def nu(self, beta: int) -> int:
        """Z/(N/d)Z -> dZ/NZ, beta -> class of d * beta."""
        return (self.d * beta) % self.N

    def nu_inv(self, alpha: int) -> int:
        if alpha % self.N % self.d:
            raise ValueError(f"{alpha} is not in {self.d}Z/{self.N}Z")
        return (alpha % self.N) // self.d % self.sub_level

    def valid_letter(self, letter: int) -> bool:
        return letter == 0 or letter % self.d == 0

    def valid_word(self, word) -> bool:
        return all(self.valid_letter(l) for l in word)


def lower_p(f: Series, d: int) -> Series:
    """The divisor projection: exponent/class dilation with the d factors."""
    n = f.ctx.N
    dctx = DivisorContext(n, d)
    out = {}
    if f.alphabet == "X":
        for w, c in f.terms.items():
            zeros = sum(1 for l in w if l == 0)
            nw = tuple(l if l == 0 else class_letter(l * d, n) for l in w)
            add = c * d**zeros
            s = out.get(nw)
            s = add if s is None else s + add
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
    else:
        for w, c in f.terms.items():
            if not dctx.valid_word(w):
                continue
            out[w] = c * d ** len(w)
    return f._bare(out)


def lower_i(f: Series, d: int) -> Series:
    """The divisor restriction: kill letters outside the sub-level (on X),
    multiply classes by d (on Xt)."""
    n = f.ctx.N
    dctx = DivisorContext(n, d)
    out = {}
    if f.alphabet == "X":
        for w, c in f.terms.items():
            if dctx.valid_word(w):
                out[w] = c
    else:
        for w, c in f.terms.items():
            nw = tuple(l if l == 0 else class_letter(l * d, n) for l in w)
            s = out.get(nw)
            s = c if s is None else s + c
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
    return f._bare(out)


def fourier_lower(f: Series, d: int, inverse: bool = False) -> Series:
    """The Fourier isomorphism at sub-level N/d, with root of unity zeta^d
    and coefficients still in Q(mu_N)."""
    from .morphisms import apply_letter_images

    ctx = f.ctx
    n = ctx.N
    dctx = DivisorContext(n, d)
    m_sub = dctx.sub_level
    for w in f.terms:
        if not dctx.valid_word(w):
            raise ContextMismatchError(
                f"word {w} has letters outside the level-{m_sub} subspace"
            )
    target = "Xt" if inverse else "X"
    images = {0: Series.from_word(ctx, target, f.max_degree, (0,))}
    if inverse:
        if f.alphabet != "X":
            raise ContextMismatchError("inverse lowered Fourier expects alphabet X")
        scale = ctx.from_rational(Fraction(d, n))
        for s in range(d, n + 1, d):
            terms = {
                (a * d,): ctx.zeta_power(a * s) * scale for a in range(1, m_sub + 1)
            }
            images[s] = Series(ctx, "Xt", f.max_degree, terms)
        return apply_letter_images(f, images, "Xt")
    if f.alphabet != "Xt":
        raise ContextMismatchError("lowered Fourier expects alphabet Xt")
    for s in range(d, n + 1, d):
        b = s // d  # representative of iota_d^{-1}(nu_d^{-1}(class of s)) in [1, N/d]
        terms = {
            (mm * d,): ctx.zeta_power(-mm * d * b) for mm in range(1, m_sub + 1)
        }
        images[s] = Series(ctx, "X", f.max_degree, terms)
    return apply_letter_images(f, images, "X")


def _sub_level_class_letters(n: int, d: int):
    return list(range(d, n + 1, d))


def distribution_residuals(f: Series, correction: str = "letter") -> dict:
    """Residual series  lower_p(f) - lower_i(f) - correction  per divisor.

    ``correction`` selects the reading of the degree-one correction term on
    the congruence side: coefficient of the <letter> of class zero (default)
    or of the <word> of the single 0-letter.  The root-of-unity side is
    unambiguous: the sum of the root-letter coefficients of the sub-level
    times x_1.
    """
    if correction not in CORRECTION_MODES:
        raise ValueError(f"unknown correction mode {correction!r}")
    n = f.ctx.N
    out = {}
    for d in divisors(n):
        residual = lower_p(f, d) - lower_i(f, d)
        if f.alphabet == "X":
            total = f.ctx.zero
            for s in _sub_level_class_letters(n, d):
                total = total + f.coefficient((s,))
            corr = Series.from_word(f.ctx, "X", f.max_degree, (n,), total)
        else:
            c = f.coefficient((n,) if correction == "letter" else (0,))
            corr = Series(
                f.ctx, "Xt", f.max_degree,
                {(s,): c for s in _sub_level_class_letters(n, d)},
            )
        out[d] = residual - corr
    return out


def distribution_report(f: Series, correction: str = "letter") -> dict:
    """Per-divisor residual term counts, the CLI surface of the check."""
    res = distribution_residuals(f, correction=correction)
    return {
        d: {
            "terms": len(r.terms),
            "member": r.is_zero(),
        }
        for d, r in sorted(res.items())
    }
