"""Words over the two level-N alphabets.

A letter is an int in [0, N]:

* 0 is the differential-form letter (x0 on the root-of-unity side X, xt on
  the congruence-class side Xt);
* m in [1, N] is x_{zeta^m} on X (so m = N encodes x_1), or the class letter
  xt_{m mod N} on Xt (so m = N encodes the zero class).

Storing class letters by their representative in [1, N] makes the summation
formulas of the structure maps literal: the representative *is* the value
the inverse substitution assigns to the class.  A word is a plain tuple of
letters; the enclosing series carries the alphabet and level.

Y-type words are tuples of blocks (k, m) with k >= 1 and m in [1, N]; the
embedding sends a block to (0,)*(k-1) + (m,).
"""

from __future__ import annotations

import itertools

ALPHABETS = ("X", "Xt")

#: refuse to enumerate more words than this without an explicit override
DEFAULT_WORD_CAP = 500_000


class NotInYError(ValueError):
    """Word ends in the 0-letter, hence lies outside the Y subalgebra."""


class SizeLimitError(RuntimeError):
    """An enumeration would exceed the configured resource cap."""


def letter_class(m: int, n: int) -> int:
    """Class in Z/NZ of the letter index m (the substitution iota)."""
    return m % n


def class_letter(alpha: int, n: int) -> int:
    """Representative in [1, N] of the class alpha (iota inverse)."""
    r = alpha % n
    return r if r else n


def count_words(n: int, degree: int) -> int:
    return (n + 1) ** degree


def enumerate_words(n: int, degree: int, cap: int = DEFAULT_WORD_CAP):
    """All (N+1)^degree words of the given degree, lexicographic with
    0 < 1 < ... < N."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    total = count_words(n, degree)
    if total > cap:
        raise SizeLimitError(
            f"{total} words of degree {degree} at level {n} exceed the cap {cap}"
        )
    return [tuple(w) for w in itertools.product(range(n + 1), repeat=degree)]


def enumerate_words_up_to(n: int, max_degree: int, cap: int = DEFAULT_WORD_CAP):
    out = []
    for d in range(max_degree + 1):
        out.extend(enumerate_words(n, d, cap=cap))
    return out


def y_embed(blocks) -> tuple:
    """Embed a Y-word, block (k, m) -> (0,)*(k-1) + (m,)."""
    out = []
    for k, m in blocks:
        if k < 1 or m < 1:
            raise ValueError(f"invalid block {(k, m)}")
        out.extend([0] * (k - 1))
        out.append(m)
    return tuple(out)


def y_factor(word) -> tuple:
    """Unique block decomposition of a word not ending in the 0-letter."""
    if word and word[-1] == 0:
        raise NotInYError(f"word {word} ends in the 0-letter")
    blocks = []
    k = 1
    for letter in word:
        if letter == 0:
            k += 1
        else:
            blocks.append((k, letter))
            k = 1
    return tuple(blocks)


def is_y_word(word) -> bool:
    return not word or word[-1] != 0


def word_weight(word, n: int) -> int:
    """Total class weight mod N: class letters contribute their representative
    in [1, N], the 0-letter contributes nothing."""
    return sum(word) % n


def compositions(total: int):
    """Ordered compositions of ``total`` into positive parts."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def enumerate_y_words(n: int, xdegree: int, cap: int = DEFAULT_WORD_CAP):
    """All Y-words of total X-degree ``xdegree`` as block tuples.

    There are N * (N+1)^(xdegree-1) of them for xdegree >= 1.
    """
    if xdegree == 0:
        return [()]
    total = n * (n + 1) ** (xdegree - 1)
    if total > cap:
        raise SizeLimitError(f"{total} Y-words exceed the cap {cap}")
    out = []
    for ks in compositions(xdegree):
        for ms in itertools.product(range(1, n + 1), repeat=len(ks)):
            out.append(tuple(zip(ks, ms)))
    return out


def word_str(word, alphabet: str, n: int) -> str:
    """Human-readable rendering, used in check reports and witnesses."""
    if not word:
        return "1"
    parts = []
    for letter in word:
        if letter == 0:
            parts.append("x0" if alphabet == "X" else "xt")
        elif alphabet == "X":
            parts.append("x[z^%d]" % letter)
        else:
            parts.append("xt[%d]" % letter_class(letter, n))
    return "·".join(parts)
