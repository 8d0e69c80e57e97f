"""Exact arithmetic in the cyclotomic field Q(mu_N) = Q[t] / Phi_N(t).

Elements live in the power basis 1, zeta, ..., zeta^(phi(N)-1) and are stored
as an integer coefficient vector over a common positive denominator, so every
operation is exact and hashable.  The quotient is taken by the irreducible
Phi_N (not t^N - 1, which has zero divisors): inversion of any nonzero
element exists and goes through the extended Euclidean algorithm in Q[t].

Levels N < 3 are rejected at context creation; N = 1, 2 only occur inside
the cyclotomic-polynomial recursion.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class CyclotomicError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num, den):
    """Long division by a monic integer polynomial."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise CyclotomicError("divisor must be monic")
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n (ascending, monic).

    Computed by exact division of t^n - 1 by the product of Phi_d over the
    proper divisors d of n.
    """
    if n < 1:
        raise CyclotomicError("level must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod(num, den)
    if rem:
        raise CyclotomicError(f"inexact division while building Phi_{n}")
    return tuple(quot)


def _vec_gcd(nums, den):
    g = den
    for x in nums:
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


class CycNum:
    """An element of Q(mu_N) in the power basis, always reduced.

    ``num`` is an integer tuple of length phi(N), ``den`` a positive integer
    with gcd(num..., den) = 1.  Arithmetic accepts int and Fraction operands
    on either side.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=1):
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = _vec_gcd((abs(x) for x in num), den)
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
        else:
            num = tuple(num)
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- conversions --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.ctx is not self.ctx and other.ctx.N != self.ctx.N:
                raise CyclotomicError("mixed cyclotomic levels")
            return other
        if isinstance(other, int):
            return self.ctx.from_rational(other)
        if isinstance(other, Fraction):
            return self.ctx.from_rational(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        g = math.gcd(self.den, other.den)
        ls, lo = other.den // g, self.den // g
        num = tuple(a * ls + b * lo for a, b in zip(self.num, other.num))
        return CycNum(self.ctx, num, self.den * ls)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(CycNum)
        out.ctx, out.num, out.den = self.ctx, tuple(-x for x in self.num), self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.ctx, tuple(x * other for x in self.num), self.den)
        if isinstance(other, Fraction):
            return CycNum(
                self.ctx,
                tuple(x * other.numerator for x in self.num),
                self.den * other.denominator,
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        phi = self.ctx.phi
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        conv[i + j] += x * y
        rows = self.ctx._reduction_rows
        for idx in range(2 * phi - 2, phi - 1, -1):
            c = conv[idx]
            if c:
                conv[idx] = 0
                row = rows[idx - phi]
                for j, r in enumerate(row):
                    if r:
                        conv[j] += c * r
        return CycNum(self.ctx, tuple(conv[:phi]), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended Euclid in Q[t]."""
        if not self:
            raise ZeroDivisionError("inversion of zero in Q(mu_N)")
        mod = [Fraction(c) for c in self.ctx.poly]
        a = [Fraction(x, self.den) for x in self.num]
        # extended gcd: r0 = mod, r1 = a; track s only w.r.t. a
        r0, r1 = mod, list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _frac_trim(r1)
            if len(r1) == 1:
                break
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        lead = r1[0]
        inv_poly = [c / lead for c in s1]
        inv_poly += [Fraction(0)] * (self.ctx.phi - len(inv_poly))
        den = 1
        for c in inv_poly:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = tuple(int(c * den) for c in inv_poly[: self.ctx.phi])
        return CycNum(self.ctx, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    # -- structure ----------------------------------------------------------

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.ctx.N == other.ctx.N and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.ctx.N, self.num, self.den))

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError("element has nonzero zeta components")
        return Fraction(self.num[0], self.den)

    def galois(self, k: int):
        """Image under the automorphism zeta -> zeta^k (gcd(k, N) = 1)."""
        ctx = self.ctx
        if math.gcd(k, ctx.N) != 1:
            raise CyclotomicError(f"{k} is not a unit mod {ctx.N}")
        acc = [0] * ctx.phi
        for i, x in enumerate(self.num):
            if x:
                row = ctx._zeta_vectors[(i * k) % ctx.N]
                for j, r in enumerate(row):
                    if r:
                        acc[j] += x * r
        return CycNum(ctx, tuple(acc), self.den)

    def coordinates(self):
        """Power-basis coordinates as Fractions."""
        return tuple(Fraction(x, self.den) for x in self.num)

    def serialize(self):
        return [str(Fraction(x, self.den)) for x in self.num]

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for i, x in enumerate(self.num):
            if not x:
                continue
            c = Fraction(x, self.den)
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z^{i}" if i > 1 else "z")
            elif c == -1:
                parts.append(f"-z^{i}" if i > 1 else "-z")
            else:
                parts.append(f"{c}*z^{i}" if i > 1 else f"{c}*z")
        return " + ".join(parts).replace("+ -", "- ")


# Fraction-polynomial helpers used only by inversion.

def _frac_trim(p):
    while p and not p[-1]:
        p.pop()
    return p or [Fraction(0)]


def _frac_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _frac_divmod(num, den):
    num = list(num)
    den = _frac_trim(list(den))
    dd = len(den) - 1
    lead = den[-1]
    q = [Fraction(0)] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        if num[i]:
            c = num[i] / lead
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return q, _frac_trim(num[:dd])


class GaloisElement:
    """An element of Gal(Q(mu_N)/Q), identified by zeta -> zeta^k."""

    __slots__ = ("ctx", "k")

    def __init__(self, ctx, k):
        k %= ctx.N
        if math.gcd(k, ctx.N) != 1:
            raise CyclotomicError(f"{k} is not a unit mod {ctx.N}")
        self.ctx = ctx
        self.k = k

    def apply(self, a: CycNum) -> CycNum:
        return a.galois(self.k)

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        return GaloisElement(self.ctx, self.k * other.k % self.ctx.N)

    def inverse(self) -> "GaloisElement":
        return GaloisElement(self.ctx, pow(self.k, -1, self.ctx.N))

    def __eq__(self, other):
        return isinstance(other, GaloisElement) and (self.ctx.N, self.k) == (other.ctx.N, other.k)

    def __hash__(self):
        return hash((self.ctx.N, self.k))

    def __repr__(self):
        return f"sigma_{self.k}(N={self.ctx.N})"


class CycContext:
    """Level data for Q(mu_N): Phi_N, reduction tables and zeta powers."""

    _instances: dict[int, "CycContext"] = {}

    def __new__(cls, n: int):
        inst = cls._instances.get(n)
        if inst is not None:
            return inst
        if n < 3:
            raise CyclotomicError("level must be at least 3")
        inst = object.__new__(cls)
        inst._init(n)
        cls._instances[n] = inst
        return inst

    def _init(self, n):
        self.N = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        # t^(phi + j) mod Phi_N for j = 0 .. phi-2, as integer rows
        rows = []
        base = [-c for c in self.poly[:phi]]
        rows.append(tuple(base))
        cur = base
        for _ in range(phi - 2):
            nxt = [0] + cur[: phi - 1]
            top = cur[phi - 1]
            if top:
                for j in range(phi):
                    nxt[j] += top * rows[0][j]
            rows.append(tuple(nxt))
            cur = nxt
        self._reduction_rows = tuple(rows)
        # zeta^e for e = 0 .. N-1 as integer vectors
        vecs = [(1,) + (0,) * (phi - 1)]
        cur = list(vecs[0])
        for _ in range(n - 1):
            nxt = [0] + cur[: phi - 1]
            top = cur[phi - 1]
            if top:
                for j in range(phi):
                    nxt[j] += top * rows[0][j]
            vecs.append(tuple(nxt))
            cur = nxt
        self._zeta_vectors = tuple(vecs)
        self.zero = CycNum(self, (0,) * phi, 1)
        self.one = CycNum(self, vecs[0], 1)

    def zeta_power(self, e: int) -> CycNum:
        return CycNum(self, self._zeta_vectors[e % self.N], 1)

    def from_rational(self, q) -> CycNum:
        q = Fraction(q)
        return CycNum(self, (q.numerator,) + (0,) * (self.phi - 1), q.denominator)

    def from_coordinates(self, coords) -> CycNum:
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.phi:
            raise CyclotomicError(f"expected {self.phi} coordinates, got {len(coords)}")
        den = 1
        for c in coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return CycNum(self, tuple(int(c * den) for c in coords), den)

    def galois_element(self, k: int) -> GaloisElement:
        return GaloisElement(self, k)

    def units(self) -> list[int]:
        return [k for k in range(1, self.N) if math.gcd(k, self.N) == 1]

    def __repr__(self):
        return f"CycContext(N={self.N})"


def root_power_sum(ctx: CycContext, m: int) -> CycNum:
    """sum_{j=1}^{N} zeta^(m*j), summed term by term.

    Equals N when N | m and 0 otherwise; the closed form is kept for tests.
    """
    acc = ctx.zero
    for j in range(1, ctx.N + 1):
        acc = acc + ctx.zeta_power(m * j)
    return acc
