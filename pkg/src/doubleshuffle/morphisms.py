"""Structure maps between the two series algebras.

Word-permuting maps (the partial-product map ``p`` and the consecutive-
difference map ``q``), the letter automorphisms ``t``, the averaged weight
projectors, the discrete-Fourier change of alphabet and its inverse, the
index-scaling automorphisms ``delta`` and the three Galois-action flavors:
coefficients only, words only, and the semilinear combination.

Root and class letters are both stored by their representative in [1, N];
this makes every formula below a literal index computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import CycContext, CyclotomicError
from .series import ContextMismatchError, Series
from .words import NotInYError, class_letter, is_y_word, word_weight


def _expect_alphabet(f: Series, alphabet: str, what: str):
    if f.alphabet != alphabet:
        raise ContextMismatchError(f"{what} expects alphabet {alphabet}, got {f.alphabet}")


def relabel_words(f: Series, word_fn) -> Series:
    """Apply a word -> word | None bijection-with-kill, keeping coefficients."""
    out = {}
    for w, c in f.terms.items():
        nw = word_fn(w)
        if nw is None:
            continue
        s = out.get(nw)
        s = c if s is None else s + c
        if s:
            out[nw] = s
        else:
            out.pop(nw, None)
    return f._bare(out)


def proj_y(f: Series) -> Series:
    """Kill every word ending in the 0-letter; identity on the Y part."""
    return f._bare({w: c for w, c in f.terms.items() if is_y_word(w)})


# ---------------------------------------------------------------------------
# p and q

def _root_positions(word):
    return [i for i, letter in enumerate(word) if letter != 0]


def p_map(f: Series, inverse: bool = False) -> Series:
    """Partial-product relabeling of the root letters.

    Forward: the i-th root exponent becomes e_1 + ... + e_i.  Inverse: the
    i-th exponent becomes e_i - e_(i-1).  Trailing 0-blocks are untouched.
    """
    _expect_alphabet(f, "X", "p")
    n = f.ctx.N

    def fn(word):
        pos = _root_positions(word)
        if not pos:
            return word
        w = list(word)
        if inverse:
            prev = 0
            for i in pos:
                e = word[i]
                w[i] = class_letter(e - prev, n)
                prev = e
        else:
            acc = 0
            for i in pos:
                acc += word[i]
                w[i] = class_letter(acc, n)
        return tuple(w)

    return relabel_words(f, fn)


def _q_shift(classes: tuple, n: int, inverse: bool) -> tuple:
    """Index transform of the q map on class values in [0, N).

    Forward takes consecutive differences (last class fixed); inverse takes
    suffix sums.
    """
    r = len(classes)
    if inverse:
        acc = 0
        out = [0] * r
        for i in range(r - 1, -1, -1):
            acc = (acc + classes[i]) % n
            out[i] = acc
        return tuple(out)
    return tuple(
        (classes[i] - classes[i + 1]) % n if i + 1 < r else classes[i] % n
        for i in range(r)
    )


def q_map(f: Series, inverse: bool = False) -> Series:
    """Consecutive-difference relabeling of the class letters."""
    _expect_alphabet(f, "Xt", "q")
    n = f.ctx.N

    def fn(word):
        pos = _root_positions(word)
        if not pos:
            return word
        classes = tuple(word[i] % n for i in pos)
        new = _q_shift(classes, n, inverse)
        w = list(word)
        for i, alpha in zip(pos, new):
            w[i] = class_letter(alpha, n)
        return tuple(w)

    return relabel_words(f, fn)


# ---------------------------------------------------------------------------
# t automorphisms and weight projectors

def t_root(f: Series, m: int) -> Series:
    """Root-index shift x_eta -> x_(zeta^m eta); the 0-letter is fixed."""
    _expect_alphabet(f, "X", "t")
    n = f.ctx.N

    def fn(word):
        return tuple(l if l == 0 else class_letter(l + m, n) for l in word)

    return relabel_words(f, fn)


def t_scale(f: Series, a: int) -> Series:
    """Scale each word by zeta^(a * weight); the class-letter automorphism."""
    _expect_alphabet(f, "Xt", "t~")
    ctx = f.ctx
    out = {}
    for w, c in f.terms.items():
        out[w] = c * ctx.zeta_power(a * word_weight(w, ctx.N))
    return f._bare(out)


def _projector_phase(m: int, a: int) -> int:
    """zeta exponent of the m-th term of the averaged projector."""
    return -m * a


def weight_projector(f: Series, a: int) -> Series:
    """The averaged operator (1/N) sum_m zeta^(-m a) t~_m.

    Computed literally as the average; that it projects onto words of class
    weight a mod N is a theorem the tests check independently.
    """
    _expect_alphabet(f, "Xt", "T~")
    ctx = f.ctx
    n = ctx.N
    acc = Series.zero(ctx, f.alphabet, f.max_degree)
    inv_n = ctx.from_rational(1) / ctx.from_rational(n)
    for m in range(1, n + 1):
        acc = acc + t_scale(f, m).scale(ctx.zeta_power(_projector_phase(m, a)))
    return acc.scale(inv_n)


# ---------------------------------------------------------------------------
# letterwise algebra morphisms

def apply_letter_images(f: Series, images: dict, out_alphabet: str, cache=None) -> Series:
    """Extend letter -> Series images to an algebra morphism and apply it.

    ``cache`` maps word prefixes to their image term dicts and may be shared
    across calls at the same level and truncation degree.
    """
    ctx, d = f.ctx, f.max_degree
    if cache is None:
        cache = {}

    def word_image(w):
        hit = cache.get(w)
        if hit is not None:
            return hit
        if not w:
            res = {(): ctx.one}
        else:
            left = word_image(w[:-1])
            img = images[w[-1]]
            res = {}
            for u, cu in left.items():
                room = d - len(u)
                for v, cv in img.terms.items():
                    if len(v) > room:
                        continue
                    key = u + v
                    s = res.get(key)
                    add = cu * cv
                    s = add if s is None else s + add
                    if s:
                        res[key] = s
                    else:
                        res.pop(key, None)
        cache[w] = res
        return res

    out = {}
    for w, c in f.terms.items():
        for u, cu in word_image(w).items():
            s = out.get(u)
            add = c * cu
            s = add if s is None else s + add
            if s:
                out[u] = s
            else:
                out.pop(u, None)
    return Series(ctx, out_alphabet, d, out)


def fourier_letter_images(ctx: CycContext, max_degree: int, inverse: bool) -> dict:
    """Generator images of the Fourier change of alphabet.

    Forward (Xt -> X):   xt -> x0,  xt_a -> sum_m zeta^(-m a) x_(zeta^m).
    Inverse (X -> Xt):   x0 -> xt,  x_(zeta^m) -> (1/N) sum_a zeta^(a m) xt_a.
    """
    n = ctx.N
    images = {}
    if inverse:
        images[0] = Series.from_word(ctx, "Xt", max_degree, (0,))
        inv_n = ctx.from_rational(1) / ctx.from_rational(n)
        for m in range(1, n + 1):
            terms = {
                (a,): ctx.zeta_power(a * m) * inv_n for a in range(1, n + 1)
            }
            images[m] = Series(ctx, "Xt", max_degree, terms)
    else:
        images[0] = Series.from_word(ctx, "X", max_degree, (0,))
        for a in range(1, n + 1):
            terms = {(m,): ctx.zeta_power(-m * a) for m in range(1, n + 1)}
            images[a] = Series(ctx, "X", max_degree, terms)
    return images


def fourier(f: Series, inverse: bool = False, restrict_y: bool = False, cache=None) -> Series:
    """The discrete-Fourier algebra isomorphism between the two alphabets."""
    _expect_alphabet(f, "X" if inverse else "Xt", "fourier")
    if restrict_y:
        for w in f.terms:
            if not is_y_word(w):
                raise NotInYError(f"Y-restricted map applied to word {w}")
    images = fourier_letter_images(f.ctx, f.max_degree, inverse)
    return apply_letter_images(f, images, "Xt" if inverse else "X", cache=cache)


def fourier_y(f: Series, inverse: bool = False, cache=None) -> Series:
    """Restriction of the Fourier isomorphism to the Y subalgebras."""
    return fourier(f, inverse=inverse, restrict_y=True, cache=cache)


# ---------------------------------------------------------------------------
# index-scaling automorphisms and Galois actions

def delta_unit(f: Series, gamma: int) -> Series:
    """Multiply letter indices by the unit gamma.

    On X this is x_zeta -> x_(zeta^gamma); on Xt it is xt_a -> xt_(gamma a).
    """
    n = f.ctx.N
    if math.gcd(gamma, n) != 1:
        raise CyclotomicError(f"{gamma} is not a unit mod {n}")

    def fn(word):
        return tuple(l if l == 0 else class_letter(l * gamma, n) for l in word)

    return relabel_words(f, fn)


def galois_coeff(f: Series, k: int) -> Series:
    """Apply zeta -> zeta^k to every coefficient, fixing the words."""
    sigma = f.ctx.galois_element(k)
    return f.map_coefficients(sigma.apply)


def galois_semilinear(f: Series, k: int) -> Series:
    """The semilinear action: sigma on coefficients and delta_k on words."""
    return delta_unit(galois_coeff(f, k), k)


# ---------------------------------------------------------------------------
# map descriptors (CLI surface)

@dataclass(frozen=True)
class MapDescriptor:
    map_id: str
    param: int | None = None


_PARAMETRIC = {"Tzeta", "Tta", "TTa", "Delta", "DeltaTilde",
               "GaloisDelta", "GaloisDeltaTilde", "SigmaCoeff"}

MAP_IDS = ("ProjY", "P", "Pinv", "Qt", "Qtinv", "Tzeta", "Tta", "TTa",
           "F", "Finv", "FY", "FYinv", "Delta", "DeltaTilde",
           "GaloisDelta", "GaloisDeltaTilde", "SigmaCoeff")


def apply_descriptor(f: Series, desc: MapDescriptor) -> Series:
    mid, k = desc.map_id, desc.param
    if mid in _PARAMETRIC and k is None:
        raise ValueError(f"map {mid} requires --param")
    if mid == "ProjY":
        return proj_y(f)
    if mid == "P":
        return p_map(f)
    if mid == "Pinv":
        return p_map(f, inverse=True)
    if mid == "Qt":
        return q_map(f)
    if mid == "Qtinv":
        return q_map(f, inverse=True)
    if mid == "Tzeta":
        return t_root(f, k)
    if mid == "Tta":
        return t_scale(f, k)
    if mid == "TTa":
        return weight_projector(f, k)
    if mid == "F":
        return fourier(f)
    if mid == "Finv":
        return fourier(f, inverse=True)
    if mid == "FY":
        return fourier_y(f)
    if mid == "FYinv":
        return fourier_y(f, inverse=True)
    if mid == "Delta":
        return galois_semilinear(f, k) if f.alphabet == "X" else _wrong(mid, f)
    if mid == "DeltaTilde":
        return galois_semilinear(f, k) if f.alphabet == "Xt" else _wrong(mid, f)
    if mid == "GaloisDelta":
        return delta_unit(f, k) if f.alphabet == "X" else _wrong(mid, f)
    if mid == "GaloisDeltaTilde":
        return delta_unit(f, k) if f.alphabet == "Xt" else _wrong(mid, f)
    if mid == "SigmaCoeff":
        return galois_coeff(f, k)
    raise ValueError(f"unknown map id {mid!r}")


def _wrong(mid, f):
    raise ContextMismatchError(f"map {mid} does not apply to alphabet {f.alphabet}")
