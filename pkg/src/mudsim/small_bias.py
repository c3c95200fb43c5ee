"""Powering small-bias generator over GF(2^m).

``X_i = <r^i, s>`` (inner product mod 2 of bit representations) for seeds
``r, s`` in GF(2^m). For a nonempty index set S the S-parity is
``<p_S(r), s>`` with ``p_S(r) = sum_{i in S} r^i``; it is unbiased whenever
``p_S(r) != 0``, which fails for at most ``max(S)`` values of r, so the bias
is at most ``n / 2^(m+1)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import BadEpsilon, BadSize, IndexOutOfRange, TooLarge

# Low-weight irreducible polynomials, bit k = coefficient of x^k.
IRREDUCIBLE = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11B,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MAX_ENUM_M = 12


def gf_mul(a: int, b: int, m: int) -> int:
    poly = IRREDUCIBLE[m]
    top = 1 << m
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return out


def gf_pow(a: int, e: int, m: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = gf_mul(out, a, m)
        a = gf_mul(a, a, m)
        e >>= 1
    return out


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def min_degree(n: int, epsilon: float) -> int:
    return max(2, math.ceil(math.log2(n / epsilon)))


@dataclass(frozen=True)
class SmallBiasFamily:
    n: int
    epsilon: float
    m: int
    seed_r: int
    seed_s: int

    @classmethod
    def new(cls, n: int, epsilon: float, rng_seed, m: int | None = None) -> "SmallBiasFamily":
        if n < 1:
            raise BadSize(f"n must be >= 1, got {n}")
        if not 0 < epsilon < 0.5:
            raise BadEpsilon(f"epsilon must lie in (0, 1/2), got {epsilon}")
        need = min_degree(n, epsilon)
        m = need if m is None else m
        if m < need:
            raise ValueError(f"degree {m} too small for n={n}, epsilon={epsilon}")
        if m not in IRREDUCIBLE:
            raise TooLarge(f"no field table entry for degree {m}")
        rng = random.Random(rng_seed)
        return cls(n, epsilon, m, rng.getrandbits(m), rng.getrandbits(m))

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexOutOfRange(f"index {i} outside 0..{self.n - 1}")
        return parity(gf_pow(self.seed_r, i, self.m) & self.seed_s)

    @cached_property
    def bits(self) -> tuple[int, ...]:
        """All n variables, computed by successive multiplication by r."""
        out = []
        power = 1
        for _ in range(self.n):
            out.append(parity(power & self.seed_s))
            power = gf_mul(power, self.seed_r, self.m)
        return tuple(out)


def exact_bias(n: int, m: int, subset: Iterable[int]) -> Fraction:
    """Fraction of all 2^(2m) seed pairs whose S-parity is 1, by enumeration."""
    subset = sorted(set(subset))
    if not subset:
        raise ValueError("index set must be nonempty")
    if subset[0] < 0 or subset[-1] >= n:
        raise IndexOutOfRange("index set must lie in 0..n-1")
    if m > MAX_ENUM_M:
        raise TooLarge(f"2^(2*{m}) seed pairs is too many to enumerate")
    if m not in IRREDUCIBLE:
        raise TooLarge(f"no field table entry for degree {m}")
    s_values = np.arange(1 << m, dtype=np.uint64)
    odd = 0
    for r in range(1 << m):
        # Every s is enumerated; X_i(r, s) = parity(r^i & s).
        acc = np.zeros(1 << m, dtype=np.uint8)
        for i in subset:
            power = gf_pow(r, i, m)
            acc ^= (np.bitwise_count(s_values & np.uint64(power)) & 1).astype(np.uint8)
        odd += int(acc.sum())
    return Fraction(odd, 1 << (2 * m))


def bias_table(n: int, m: int) -> dict[tuple[int, ...], Fraction]:
    """exact_bias for every nonempty subset of 0..n-1."""
    table = {}
    for mask in range(1, 1 << n):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        table[subset] = exact_bias(n, m, subset)
    return table
