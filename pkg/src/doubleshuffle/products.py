"""Shuffle and harmonic products, their dual coproducts, primitivity.

The products are computed by the defining recursions:

    u·w1 ⧢ v·w2 = u (w1 ⧢ v·w2) + v (u·w1 ⧢ w2)

on letters u, v, and for the harmonic case on leading blocks, with the
contraction term y(k1+k2, m1+m2) on the root-of-unity side and the
contraction restricted to equal classes on the congruence side.

Coproducts are *not* extended from generator images; they are assembled
from the pairing formula

    cop(f) = sum over word pairs (u, v) of (f | u • v) u ⊗ v

restricted to deg u + deg v <= D, so the generator formulas stay available
as an independent oracle for the tests.
"""

from __future__ import annotations

from functools import lru_cache

from .series import ContextMismatchError, Series, TensorSeries
from .words import (
    NotInYError,
    class_letter,
    enumerate_words,
    enumerate_y_words,
    y_embed,
    y_factor,
)

SHUFFLE_KINDS = ("shuffle",)
HARMONIC_KINDS = ("harmonic",)
PRODUCT_KINDS = SHUFFLE_KINDS + HARMONIC_KINDS


@lru_cache(maxsize=200_000)
def shuffle(u: tuple, v: tuple) -> dict:
    """Shuffle product of two words as a word -> int multiplicity map."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, c in shuffle(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in shuffle(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return out


@lru_cache(maxsize=200_000)
def _harmonic_blocks(u: tuple, v: tuple, n: int, tilde: bool) -> dict:
    """Harmonic product on block tuples ((k, m), ...)."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    (k1, m1), (k2, m2) = u[0], v[0]
    out = {}

    def acc(head, tail_map):
        for w, c in tail_map.items():
            key = (head,) + w
            out[key] = out.get(key, 0) + c

    if tilde and m1 != m2:
        acc(u[0], _harmonic_blocks(u[1:], v, n, tilde))
        acc(v[0], _harmonic_blocks(u, v[1:], n, tilde))
    else:
        acc(u[0], _harmonic_blocks(u[1:], v, n, tilde))
        acc(v[0], _harmonic_blocks(u, v[1:], n, tilde))
        merged = (k1 + k2, m1 if tilde else class_letter(m1 + m2, n))
        acc(merged, _harmonic_blocks(u[1:], v[1:], n, tilde))
    return out


def harmonic(u_blocks, v_blocks, n: int, tilde: bool) -> dict:
    return _harmonic_blocks(tuple(u_blocks), tuple(v_blocks), n, bool(tilde))


def product_expand(u: tuple, v: tuple, kind: str, n: int, alphabet: str) -> dict:
    """u • v as an embedded-word -> int map; harmonic inputs must be Y-words."""
    if kind == "shuffle":
        return shuffle(tuple(u), tuple(v))
    if kind == "harmonic":
        bu, bv = y_factor(tuple(u)), y_factor(tuple(v))
        raw = harmonic(bu, bv, n, tilde=(alphabet == "Xt"))
        out = {}
        for blocks, c in raw.items():
            w = y_embed(blocks)
            out[w] = out.get(w, 0) + c
        return out
    raise ValueError(f"unknown product kind {kind!r}")


def _pair_iter(n: int, max_degree: int, kind: str, nonempty: bool):
    """Deterministic enumeration of word pairs with bounded total degree."""
    lo = 1 if nonempty else 0
    if kind == "shuffle":
        for du in range(lo, max_degree + 1):
            us = enumerate_words(n, du)
            for dv in range(lo, max_degree - du + 1):
                vs = enumerate_words(n, dv)
                for u in us:
                    for v in vs:
                        yield u, v
    else:
        for du in range(lo, max_degree + 1):
            us = [y_embed(b) for b in enumerate_y_words(n, du)]
            for dv in range(lo, max_degree - du + 1):
                vs = [y_embed(b) for b in enumerate_y_words(n, dv)]
                for u in us:
                    for v in vs:
                        yield u, v


def _require_y_support(f: Series):
    for w in f.terms:
        if w and w[-1] == 0:
            raise NotInYError(
                f"series has support outside the Y subalgebra at word {w}"
            )


def coproduct(f: Series, kind: str) -> TensorSeries:
    """Truncated coproduct with entries (f | u • v), via the pairing formula."""
    if kind not in PRODUCT_KINDS:
        raise ValueError(f"unknown coproduct kind {kind!r}")
    if kind == "harmonic":
        _require_y_support(f)
    n, d = f.ctx.N, f.max_degree
    out = {}
    for u, v in _pair_iter(n, d, kind, nonempty=False):
        c = _pairing_with_product(f, u, v, kind)
        if c:
            out[(u, v)] = c
    return TensorSeries(f.ctx, f.alphabet, d, out)


def _pairing_with_product(f: Series, u, v, kind):
    total = f.ctx.zero
    for w, mult in product_expand(u, v, kind, f.ctx.N, f.alphabet).items():
        c = f.terms.get(w)
        if c is not None:
            total = total + c * mult
    return total


def is_primitive(f: Series, kind: str):
    """True iff (f | u • v) = 0 for all nonempty u, v with deg u + deg v <= D.

    On failure returns (False, (u, v, value)) for the first violating pair in
    enumeration order.
    """
    if kind == "harmonic":
        _require_y_support(f)
    n, d = f.ctx.N, f.max_degree
    for u, v in _pair_iter(n, d, kind, nonempty=True):
        c = _pairing_with_product(f, u, v, kind)
        if c:
            return False, (u, v, c)
    return True, None


def coproduct_on_generators(f: Series, kind: str) -> TensorSeries:
    """Independent construction of the coproduct by extending the generator
    images multiplicatively; test oracle for :func:`coproduct`."""
    ctx, d = f.ctx, f.max_degree
    n = ctx.N
    out = {}

    def tensor_mul(a, b):
        res = {}
        for (u1, v1), c1 in a.items():
            for (u2, v2), c2 in b.items():
                if len(u1) + len(u2) + len(v1) + len(v2) > d:
                    continue
                key = (u1 + u2, v1 + v2)
                s = res.get(key)
                add = c1 * c2
                s = add if s is None else s + add
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        return res

    if kind == "shuffle":
        letter_image = {
            letter: {((letter,), ()): ctx.one, ((), (letter,)): ctx.one}
            for letter in range(n + 1)
        }
        for w, c in f.terms.items():
            acc = {((), ()): ctx.one}
            for letter in w:
                acc = tensor_mul(acc, letter_image[letter])
            for key, val in acc.items():
                s = out.get(key)
                add = c * val
                s = add if s is None else s + add
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    else:
        _require_y_support(f)
        tilde = f.alphabet == "Xt"

        def block_image(k, m):
            img = {((0,) * (k - 1) + (m,), ()): ctx.one, ((), (0,) * (k - 1) + (m,)): ctx.one}
            for k1 in range(1, k):
                k2 = k - k1
                if tilde:
                    pairs = [(m, m)]
                else:
                    pairs = [
                        (m1, class_letter(m - m1, n)) for m1 in range(1, n + 1)
                    ]
                for m1, m2 in pairs:
                    key = ((0,) * (k1 - 1) + (m1,), (0,) * (k2 - 1) + (m2,))
                    img[key] = img.get(key, ctx.zero) + ctx.one
            return img

        for w, c in f.terms.items():
            acc = {((), ()): ctx.one}
            for k, m in y_factor(w):
                acc = tensor_mul(acc, block_image(k, m))
            for key, val in acc.items():
                s = out.get(key)
                add = c * val
                s = add if s is None else s + add
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return TensorSeries(ctx, f.alphabet, d, out)
