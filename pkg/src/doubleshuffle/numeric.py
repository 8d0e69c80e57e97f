"""Floating-point evaluation of the level-N nested sums and their identities.

Two families of values are summed directly:

* root-of-unity polylogarithm values
      Li(k_1..k_r; m_1..m_r) = sum over n_1 > ... > n_r >= 1 of
      prod zeta_N^(m_i n_i) / n_i^(k_i),
* congruence-constrained zeta values
      z(k_1..k_r; a_1..a_r)  = the same sum restricted to n_i = a_i mod N,

both truncated at n_1 <= n_max with an a-priori tail estimate recorded next
to the value.  Residual checks cover the Fourier bridge between the two
families, the divisor distribution relation, and the depth-two stuffle
identity.  Everything is double precision; exactness lives in the algebraic
modules, and the checks target 1e-4 .. 1e-6 tolerances at desk scale.

Roots of unity are taken from a length-N table of cos/sin pairs at exact
rational angles, so no rotation error accumulates along the sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_DEPTH = 3
MAX_WEIGHT = 5


class DivergentIndexError(ValueError):
    pass


@dataclass(frozen=True)
class MpvIndex:
    ks: tuple
    ms: tuple  # root exponents, zeta_i = zeta_N^(m_i)

    def __post_init__(self):
        if len(self.ks) != len(self.ms) or not self.ks:
            raise ValueError("ks and ms must be nonempty and of equal length")
        if any(k < 1 for k in self.ks):
            raise ValueError("weights must be positive")

    @property
    def depth(self):
        return len(self.ks)

    @property
    def weight(self):
        return sum(self.ks)


@dataclass(frozen=True)
class CmzvIndex:
    ks: tuple
    alphas: tuple  # residues mod N

    def __post_init__(self):
        if len(self.ks) != len(self.alphas) or not self.ks:
            raise ValueError("ks and alphas must be nonempty and of equal length")
        if self.ks[0] < 2:
            raise DivergentIndexError("leading weight must be at least 2")

    @property
    def depth(self):
        return len(self.ks)

    @property
    def weight(self):
        return sum(self.ks)


def _guard(depth, weight):
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds the guard {MAX_DEPTH}")
    if weight > MAX_WEIGHT:
        raise ValueError(f"weight {weight} exceeds the guard {MAX_WEIGHT}")


def _unit_table(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.cos(2 * np.pi * j / n) + 1j * np.sin(2 * np.pi * j / n)


def _tail_bound(k1: int, depth: int, n_max: int, min_gap: float = 1.0) -> float:
    """A-priori bound on the dropped tail of the nested sum.

    For k1 >= 2 the integral estimate gives n_max^(1-k1)/(k1-1); each extra
    depth level contributes at most a harmonic factor 1 + log(n_max).  For
    k1 = 1 with a nonprincipal leading root (distance ``min_gap`` from 1)
    Abel summation bounds the tail by 2/(min_gap * n_max).
    """
    log_factor = (1.0 + math.log(n_max)) ** (depth - 1)
    if k1 >= 2:
        return n_max ** (1 - k1) / (k1 - 1) * log_factor
    return 2.0 / (min_gap * n_max) * log_factor


def mpv(idx: MpvIndex, n: int, n_max: int):
    """Partial nested sum and tail bound for a polylogarithm value."""
    _guard(idx.depth, idx.weight)
    if idx.ks[0] == 1 and idx.ms[0] % n == 0:
        raise DivergentIndexError("leading index (1, 1) diverges")
    table = _unit_table(n)
    m_arr = np.arange(1, n_max + 1, dtype=np.float64)
    inner = None
    for k, mexp in zip(reversed(idx.ks), reversed(idx.ms)):
        z = table[(np.arange(1, n_max + 1) * mexp) % n]
        term = z / m_arr**k
        if inner is not None:
            shifted = np.empty_like(inner)
            shifted[0] = 0
            shifted[1:] = inner[:-1]
            term = term * shifted
        inner = np.cumsum(term)
    gap = abs(1 - table[idx.ms[0] % n]) if idx.ms[0] % n else 1.0
    return complex(inner[-1]), _tail_bound(idx.ks[0], idx.depth, n_max, gap)


def cmzv(idx: CmzvIndex, n: int, n_max: int):
    """Partial congruence-constrained sum and tail bound."""
    _guard(idx.depth, idx.weight)
    m_int = np.arange(1, n_max + 1)
    m_arr = m_int.astype(np.float64)
    inner = None
    for k, alpha in zip(reversed(idx.ks), reversed(idx.alphas)):
        mask = (m_int % n) == (alpha % n)
        term = np.where(mask, 1.0 / m_arr**k, 0.0)
        if inner is not None:
            shifted = np.empty_like(inner)
            shifted[0] = 0
            shifted[1:] = inner[:-1]
            term = term * shifted
        inner = np.cumsum(term)
    return float(inner[-1]), _tail_bound(idx.ks[0], idx.depth, n_max)


def bridge_check(idx: CmzvIndex, n: int, n_max: int, tol: float) -> dict:
    """Residual of the Fourier bridge between the two families.

    The left side is the constrained sum; the right side averages the
    polylogarithm values over all root-exponent tuples with the conjugate
    phases.  Both sides are summed to the same cutoff by independent code.
    """
    lhs, lhs_bound = cmzv(idx, n, n_max)
    r = idx.depth
    table = _unit_table(n)
    total = 0j
    bound = lhs_bound
    reps = [a % n if a % n else n for a in idx.alphas]

    def rec(pos, ms):
        nonlocal total, bound
        if pos == r:
            phase = -sum(m * a for m, a in zip(ms, reps))
            value, b = mpv(MpvIndex(idx.ks, tuple(ms)), n, n_max)
            total += table[phase % n] * value
            bound_local = b / n**r
            return bound_local
        acc = 0.0
        for m in range(1, n + 1):
            acc += rec(pos + 1, ms + [m])
        return acc

    bound += rec(0, [])
    rhs = total / n**r
    residual = abs(lhs - rhs)
    return {
        "check": "bridge",
        "N": n,
        "ks": list(idx.ks),
        "alphas": list(idx.alphas),
        "terms": n_max,
        "lhs": lhs,
        "rhs_real": rhs.real,
        "rhs_imag": rhs.imag,
        "value": lhs,
        "bound": bound,
        "residual": residual,
        "tol": tol,
        "pass": bool(residual <= tol + bound),
    }


def distribution_check(n: int, d: int, idx: CmzvIndex, n_max: int, tol: float) -> dict:
    """Residual of the divisor distribution relation

        d^(k_1+...+k_r) z(k; alpha) = sum over alpha' with d alpha' = alpha.
    """
    if n % d:
        raise ValueError(f"{d} does not divide {n}")
    for a in idx.alphas:
        if (a % n) % d:
            raise ValueError(f"residue {a} is not in {d}Z/{n}Z")
    lhs_val, lhs_bound = cmzv(idx, n, n_max)
    lhs = d**idx.weight * lhs_val
    preimages = [[b for b in range(n) if (d * b) % n == a % n] for a in idx.alphas]
    total = 0.0
    bound = d**idx.weight * lhs_bound

    def rec(pos, chosen):
        nonlocal total, bound
        if pos == idx.depth:
            v, b = cmzv(CmzvIndex(idx.ks, tuple(chosen)), n, n_max)
            total += v
            bound += b
            return
        for b in preimages[pos]:
            rec(pos + 1, chosen + [b])

    rec(0, [])
    residual = abs(lhs - total)
    return {
        "check": "distribution",
        "N": n,
        "d": d,
        "ks": list(idx.ks),
        "alphas": list(idx.alphas),
        "terms": n_max,
        "lhs": lhs,
        "rhs": total,
        "value": lhs,
        "bound": bound,
        "residual": residual,
        "tol": tol,
        "pass": bool(residual <= tol + bound),
    }


def stuffle_check(n: int, m1: int, m2: int, n_max: int, tol: float) -> dict:
    """Residual of the depth-two stuffle identity

        Li(1; m1) Li(1; m2) = Li(1,1; m1,m2) + Li(1,1; m2,m1) + Li(2; m1+m2).
    """
    if m1 % n == 0 or m2 % n == 0:
        raise DivergentIndexError("depth-one factors need a nonprincipal root")
    a, ba = mpv(MpvIndex((1,), (m1,)), n, n_max)
    b, bb = mpv(MpvIndex((1,), (m2,)), n, n_max)
    lhs = a * b
    t1, b1 = mpv(MpvIndex((1, 1), (m1, m2)), n, n_max)
    t2, b2 = mpv(MpvIndex((1, 1), (m2, m1)), n, n_max)
    t3, b3 = mpv(MpvIndex((2,), (m1 + m2,)), n, n_max)
    rhs = t1 + t2 + t3
    residual = abs(lhs - rhs)
    bound = abs(a) * bb + abs(b) * ba + b1 + b2 + b3
    return {
        "check": "stuffle",
        "N": n,
        "m1": m1,
        "m2": m2,
        "terms": n_max,
        "lhs_real": lhs.real,
        "rhs_real": rhs.real,
        "value": lhs.real,
        "bound": bound,
        "residual": residual,
        "tol": tol,
        "pass": bool(residual <= tol + bound),
    }
