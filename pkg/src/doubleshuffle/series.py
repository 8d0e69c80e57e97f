"""Degree-truncated noncommutative formal series and tensor squares.

A :class:`Series` is a sparse map word -> coefficient over one of the two
alphabets, truncated at a hard maximum degree.  Coefficients always live in
Q(mu_N); rational series are recognized by inspection.  Zero coefficients
are never stored, words never exceed the truncation degree, and instances
are treated as immutable values.

The JSON wire format is

    {"N": 3, "alphabet": "X", "max_degree": 4, "rational": true,
     "terms": [{"word": [0, 1], "coeff": ["1/2", "0"]}]}

with one coefficient string per power of zeta.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .cyclotomic import CycContext, CycNum
from .words import ALPHABETS, letter_class

__all__ = [
    "Series",
    "TensorSeries",
    "SeriesError",
    "ContextMismatchError",
    "TruncationError",
    "ParseError",
    "UnknownAlphabetError",
    "LetterRangeError",
    "CoefficientShapeError",
    "random_series",
]


class SeriesError(ValueError):
    pass


class ContextMismatchError(SeriesError):
    pass


class TruncationError(SeriesError):
    pass


class ParseError(SeriesError):
    pass


class UnknownAlphabetError(ParseError):
    pass


class LetterRangeError(ParseError):
    pass


class CoefficientShapeError(ParseError):
    pass


def _as_cyc(ctx: CycContext, value) -> CycNum:
    if isinstance(value, CycNum):
        if value.ctx.N != ctx.N:
            raise ContextMismatchError("coefficient from a different level")
        return value
    return ctx.from_rational(value)


class Series:
    __slots__ = ("ctx", "alphabet", "max_degree", "terms")

    def __init__(self, ctx: CycContext, alphabet: str, max_degree: int, terms=None):
        if alphabet not in ALPHABETS:
            raise UnknownAlphabetError(f"unknown alphabet {alphabet!r}")
        self.ctx = ctx
        self.alphabet = alphabet
        self.max_degree = max_degree
        clean = {}
        for word, coeff in (terms or {}).items():
            if len(word) > max_degree:
                raise TruncationError(f"word {word} exceeds degree {max_degree}")
            c = _as_cyc(ctx, coeff)
            if c:
                clean[tuple(word)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx, alphabet, max_degree):
        return cls(ctx, alphabet, max_degree)

    @classmethod
    def unit(cls, ctx, alphabet, max_degree):
        return cls(ctx, alphabet, max_degree, {(): ctx.one})

    @classmethod
    def from_word(cls, ctx, alphabet, max_degree, word, coeff=1):
        return cls(ctx, alphabet, max_degree, {tuple(word): coeff})

    def _bare(self, terms):
        """Internal: wrap a pre-cleaned term dict without re-validating."""
        out = object.__new__(Series)
        out.ctx, out.alphabet, out.max_degree = self.ctx, self.alphabet, self.max_degree
        out.terms = terms
        return out

    # -- inspection ----------------------------------------------------------

    def coefficient(self, word) -> CycNum:
        word = tuple(word)
        if len(word) > self.max_degree:
            raise TruncationError(
                f"coefficient of {word} is beyond truncation degree {self.max_degree}"
            )
        return self.terms.get(word, self.ctx.zero)

    def constant_term(self) -> CycNum:
        return self.terms.get((), self.ctx.zero)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms, key=lambda w: (len(w), w))

    def min_degree(self):
        return min((len(w) for w in self.terms), default=None)

    def _check_compatible(self, other):
        if self.ctx.N != other.ctx.N or self.alphabet != other.alphabet:
            raise ContextMismatchError(
                f"cannot combine ({self.ctx.N},{self.alphabet}) with "
                f"({other.ctx.N},{other.alphabet})"
            )

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        d = min(self.max_degree, other.max_degree)
        out = {w: c for w, c in self.terms.items() if len(w) <= d}
        for w, c in other.terms.items():
            if len(w) > d:
                continue
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = self._bare(out)
        res.max_degree = d
        return res

    def __neg__(self):
        return self._bare({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def scale(self, value) -> "Series":
        c = _as_cyc(self.ctx, value)
        if not c:
            return self._bare({})
        return self._bare({w: x * c for w, x in self.terms.items()})

    # -- multiplicative structure ----------------------------------------------

    def __mul__(self, other):
        """Concatenation product, truncated at the common degree."""
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        d = min(self.max_degree, other.max_degree)
        out = {}
        for u, cu in self.terms.items():
            if len(u) > d:
                continue
            room = d - len(u)
            for v, cv in other.terms.items():
                if len(v) > room:
                    continue
                w = u + v
                c = cu * cv
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        res = self._bare(out)
        res.max_degree = d
        return res

    def commutator(self, other) -> "Series":
        return self * other - other * self

    def truncate(self, max_degree: int) -> "Series":
        out = self._bare({w: c for w, c in self.terms.items() if len(w) <= max_degree})
        out.max_degree = min(self.max_degree, max_degree)
        return out

    def map_coefficients(self, fn) -> "Series":
        out = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                out[w] = v
        return self._bare(out)

    # -- equality --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.ctx.N == other.ctx.N
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx.N, self.alphabet, frozenset(self.terms.items())))

    def __repr__(self):
        from .words import word_str

        if not self.terms:
            return "0"
        bits = []
        for w in self.support()[:12]:
            bits.append(f"({self.terms[w]!r})·{word_str(w, self.alphabet, self.ctx.N)}")
        more = "" if len(self.terms) <= 12 else f" + … ({len(self.terms)} terms)"
        return " + ".join(bits) + more

    # -- serialization -----------------------------------------------------------

    def to_dict(self):
        return {
            "N": self.ctx.N,
            "alphabet": self.alphabet,
            "max_degree": self.max_degree,
            "rational": self.is_rational(),
            "terms": [
                {"word": list(w), "coeff": self.terms[w].serialize()}
                for w in self.support()
            ],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, data):
        try:
            n = int(data["N"])
            alphabet = data["alphabet"]
            max_degree = int(data["max_degree"])
            raw_terms = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed series object: {exc}") from None
        if alphabet not in ALPHABETS:
            raise UnknownAlphabetError(f"unknown alphabet tag {alphabet!r}")
        ctx = CycContext(n)
        terms = {}
        for entry in raw_terms:
            word = tuple(entry["word"])
            for letter in word:
                if not isinstance(letter, int) or letter < 0 or letter > n:
                    raise LetterRangeError(f"letter {letter!r} outside [0, {n}]")
            coeff = entry["coeff"]
            if len(coeff) != ctx.phi:
                raise CoefficientShapeError(
                    f"expected {ctx.phi} coordinates, got {len(coeff)}"
                )
            try:
                coords = [Fraction(c) for c in coeff]
            except (ValueError, ZeroDivisionError) as exc:
                raise CoefficientShapeError(f"bad coefficient entry: {exc}") from None
            terms[word] = ctx.from_coordinates(coords)
        out = cls(ctx, alphabet, max_degree, terms)
        declared = data.get("rational")
        if declared is True and not out.is_rational():
            raise CoefficientShapeError("series flagged rational has zeta components")
        return out

    @classmethod
    def from_json(cls, text: str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


class TensorSeries:
    """Sparse map (word, word) -> coefficient with deg(u) + deg(v) <= D."""

    __slots__ = ("ctx", "alphabet", "max_degree", "terms")

    def __init__(self, ctx, alphabet, max_degree, terms=None):
        if alphabet not in ALPHABETS:
            raise UnknownAlphabetError(f"unknown alphabet {alphabet!r}")
        self.ctx = ctx
        self.alphabet = alphabet
        self.max_degree = max_degree
        clean = {}
        for (u, v), coeff in (terms or {}).items():
            if len(u) + len(v) > max_degree:
                raise TruncationError(f"pair {(u, v)} exceeds degree {max_degree}")
            c = _as_cyc(ctx, coeff)
            if c:
                clean[(tuple(u), tuple(v))] = c
        self.terms = clean

    def coefficient(self, u, v) -> CycNum:
        u, v = tuple(u), tuple(v)
        if len(u) + len(v) > self.max_degree:
            raise TruncationError("pair beyond truncation degree")
        return self.terms.get((u, v), self.ctx.zero)

    def support(self):
        return sorted(self.terms, key=lambda p: (len(p[0]) + len(p[1]), p))

    def __add__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        if self.ctx.N != other.ctx.N or self.alphabet != other.alphabet:
            raise ContextMismatchError("tensor contexts differ")
        d = min(self.max_degree, other.max_degree)
        out = {k: c for k, c in self.terms.items() if len(k[0]) + len(k[1]) <= d}
        for k, c in other.terms.items():
            if len(k[0]) + len(k[1]) > d:
                continue
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorSeries(self.ctx, self.alphabet, d, out)

    def __neg__(self):
        return TensorSeries(
            self.ctx, self.alphabet, self.max_degree,
            {k: -c for k, c in self.terms.items()},
        )

    def __sub__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return self + (-other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (
            self.ctx.N == other.ctx.N
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx.N, self.alphabet, frozenset(self.terms.items())))

    def map_sides(self, fn) -> "TensorSeries":
        """Apply a word -> Series linear map to both tensor legs."""
        out = {}
        for (u, v), c in self.terms.items():
            fu = fn(u)
            fv = fn(v)
            for wu, cu in fu.terms.items():
                for wv, cv in fv.terms.items():
                    if len(wu) + len(wv) > self.max_degree:
                        continue
                    key = (wu, wv)
                    add = c * cu * cv
                    s = out.get(key)
                    s = add if s is None else s + add
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        target_alphabet = fn(()).alphabet
        return TensorSeries(self.ctx, target_alphabet, self.max_degree, out)

    def to_dict(self):
        return {
            "N": self.ctx.N,
            "alphabet": self.alphabet,
            "max_degree": self.max_degree,
            "terms": [
                {
                    "left": list(u),
                    "right": list(v),
                    "coeff": self.terms[(u, v)].serialize(),
                }
                for (u, v) in self.support()
            ],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def random_series(
    ctx: CycContext,
    alphabet: str,
    max_degree: int,
    seed: int,
    rational: bool = True,
    density: float = 0.5,
    no_constant: bool = True,
) -> Series:
    """Reproducible sparse series with small coefficients.

    ``density`` scales the expected number of terms per degree; 0 gives the
    zero series.  ``no_constant`` samples from the augmentation ideal, which
    the derivation and bracket operations expect.
    """
    rng = random.Random((seed, ctx.N, alphabet, max_degree, rational))
    terms = {}
    if density > 0:
        lo = 1 if no_constant else 0
        for degree in range(lo, max_degree + 1):
            want = max(1, round(2 * density))
            for _ in range(want):
                if rng.random() > density and degree > 1:
                    continue
                word = tuple(rng.randint(0, ctx.N) for _ in range(degree))
                num = rng.choice([x for x in range(-6, 7) if x])
                den = rng.randint(1, 4)
                coeff = ctx.from_rational(Fraction(num, den))
                if not rational:
                    j = rng.randrange(ctx.phi)
                    extra = rng.randint(-3, 3)
                    coords = [Fraction(0)] * ctx.phi
                    coords[0] = Fraction(num, den)
                    coords[j] += Fraction(extra, den)
                    coeff = ctx.from_coordinates(coords)
                prev = terms.get(word, ctx.zero)
                val = prev + coeff
                if val:
                    terms[word] = val
                else:
                    terms.pop(word, None)
    return Series(ctx, alphabet, max_degree, terms)
