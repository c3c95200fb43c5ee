"""Concrete mud and streaming algorithms.

Integer-alphabet algorithms take plain ``int`` symbols. SetParity consumes
``(index, bit)`` records and SymmetricIndex consumes
``(side, position, bit, query)`` records with 1-based positions.
"""

from __future__ import annotations

import math
import random
import statistics
from typing import NamedTuple

from .encoding import Codec, Field, uint_width
from .errors import IndexOutOfRange, MalformedInstance, PromiseViolation
from .model import MudSpec, StreamSpec
from .small_bias import SmallBiasFamily

MERSENNE_61 = (1 << 61) - 1

DEFAULT_COPIES = 20
DEFAULT_F2_WIDTH = 7


# -- span and sum of squares ------------------------------------------------


def span_mud(width: int = 32) -> MudSpec:
    codec = Codec((Field("lo", "int", width), Field("hi", "int", width)))

    def local(x):
        return (x, x)

    def aggregate(p, q):
        return (min(p[0], q[0]), max(p[1], q[1]))

    def post(q):
        return q[1] - q[0]

    return MudSpec(local, aggregate, post, codec, name="span")


def _square(x):
    return x * x


def _add(a, b):
    return a + b


def _ident(q):
    return q


def sum_squares_mud(width: int = 64) -> MudSpec:
    """Sum of squares; the accumulator is an unsigned ``width``-bit integer."""
    codec = Codec((Field("sum", "uint", width),), flatten=lambda q: (q,))
    return MudSpec(_square, _add, _ident, codec, name="sumsq")


def l2_mud(width: int = 64) -> MudSpec:
    base = sum_squares_mud(width)
    return MudSpec(base.local, base.aggregate, math.isqrt, base.codec, name="l2")


# -- minwise sampling -----------------------------------------------------


class MinwiseSample(NamedTuple):
    item: int
    count: int

    @property
    def unique(self) -> bool:
        return self.count == 1


MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """Fixed bijection on 64-bit words (splitmix64 finalizer)."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def multiply_shift_hash(seed):
    """Pairwise-independent multiply-add-shift hash of 64-bit keys to 64 bits.

    Keys pass through ``mix64`` first. A fixed bijection keeps pairwise
    independence, and without it runs of consecutive keys bias which key
    gets the minimum hash.
    """
    rng = random.Random(f"minwise:{seed}")
    a = rng.getrandbits(128) | 1
    b = rng.getrandbits(128)
    mask128 = (1 << 128) - 1

    def h(x: int) -> int:
        return ((a * mix64(x & MASK64) + b) & mask128) >> 64

    return h


def minwise_sample_mud(seed=0, item_width: int = 32, count_width: int = 32) -> MudSpec:
    """Sample one distinct item (the minimum-hash one) with its multiplicity.

    Equal hashes on distinct items are broken toward the smaller item, so the
    summing branch only ever merges copies of the same item.
    """
    h = multiply_shift_hash(seed)
    codec = Codec(
        (
            Field("item", "int", item_width),
            Field("hash", "uint", 64),
            Field("count", "uint", count_width),
        )
    )

    def local(x):
        return (x, h(x), 1)

    def aggregate(p, q):
        kp, kq = (p[1], p[0]), (q[1], q[0])
        if kp < kq:
            return p
        if kq < kp:
            return q
        return (p[0], p[1], p[2] + q[2])

    def post(q):
        return MinwiseSample(q[0], q[2])

    return MudSpec(local, aggregate, post, codec, seed=seed, name="minwise")


# -- SetParity --------------------------------------------------------------


class SetParityRecord(NamedTuple):
    index: int
    bit: int


def setparity_masks(n: int, copies: int, seed, epsilon: float = 0.25) -> tuple[int, ...]:
    """Per-index ``copies``-bit masks; bit r of mask i is X_i of family r."""
    families = [
        SmallBiasFamily.new(n, epsilon, f"setparity:{seed}:{r}") for r in range(copies)
    ]
    masks = [0] * n
    for r, fam in enumerate(families):
        for i, x in enumerate(fam.bits):
            if x:
                masks[i] |= 1 << r
    return tuple(masks)


def _setparity_parts(n, copies, seed, epsilon):
    if copies < 1:
        raise ValueError("copies must be >= 1")
    masks = setparity_masks(n, copies, seed, epsilon)
    codec = Codec((Field("parities", "bits", copies),), flatten=lambda q: (q,))

    def contribution(rec):
        i, b = rec
        if not 0 <= i < n:
            raise IndexOutOfRange(f"record index {i} outside 0..{n - 1}")
        if b not in (0, 1):
            raise IndexOutOfRange(f"record bit must be 0 or 1, got {b}")
        return masks[i] if b else 0

    def post(q):
        return 1 if q == 0 else 0

    return contribution, codec, post


def setparity_stream(n: int, copies: int = DEFAULT_COPIES, seed=0, epsilon: float = 0.25) -> StreamSpec:
    """State is an int whose bit r holds the running parity for copy r."""
    contribution, codec, post = _setparity_parts(n, copies, seed, epsilon)

    def step(q, rec):
        return q ^ contribution(rec)

    return StreamSpec(step, post, 0, codec, seed=seed, name="setparity-stream")


def setparity_mud(n: int, copies: int = DEFAULT_COPIES, seed=0, epsilon: float = 0.25) -> MudSpec:
    contribution, codec, post = _setparity_parts(n, copies, seed, epsilon)

    def xor(a, b):
        return a ^ b

    return MudSpec(contribution, xor, post, codec, seed=seed, name="setparity")


# -- SymmetricIndex ---------------------------------------------------------


class SymIndexRecord(NamedTuple):
    side: str
    position: int
    bit: int
    query: int


UNKNOWN = 2


def symmetric_index_stream(n: int) -> StreamSpec:
    """Deterministic streaming algorithm for the SymmetricIndex promise problem.

    State: side and query of the first record, the other side's query once
    seen, and the answer bit (``UNKNOWN`` until the matching record arrives).
    """
    w = uint_width(n)
    codec = Codec(
        (
            Field("side", "uint", 1),
            Field("query", "uint", w),
            Field("other_query", "uint", w),
            Field("answer", "uint", 2),
        ),
        flatten=lambda q: (q[0] == "b", q[1], q[2], q[3]),
    )

    def check(rec):
        side, pos, bit, query = rec
        if side not in ("a", "b"):
            raise MalformedInstance(f"record side must be 'a' or 'b', got {side!r}")
        if not (1 <= pos <= n and 1 <= query <= n):
            raise IndexOutOfRange(f"record {tuple(rec)} has position/query outside 1..{n}")
        if bit not in (0, 1):
            raise MalformedInstance(f"record bit must be 0 or 1, got {bit}")

    def step(q, rec):
        check(rec)
        side, pos, bit, query = rec
        if q is None:
            return (side, query, 0, UNKNOWN)
        first_side, first_query, other, answer = q
        if side == first_side:
            if query != first_query:
                raise MalformedInstance(f"side {side} records disagree on the query index")
            if other and pos == other and answer != UNKNOWN and bit != answer:
                raise PromiseViolation(f"x_q != y_p at position {pos}")
            return q
        if other and query != other:
            raise MalformedInstance(f"side {side} records disagree on the query index")
        if pos == first_query:
            answer = bit
        return (first_side, first_query, query, answer)

    def post(q):
        if q is None or q[3] == UNKNOWN:
            raise MalformedInstance("the record answering the query never arrived")
        return q[3]

    return StreamSpec(step, post, None, codec, name="symindex")


def validate_symindex(records, n: int) -> None:
    """Full offline check of instance structure and the promise x_q = y_p."""
    bits = {"a": {}, "b": {}}
    queries = {"a": set(), "b": set()}
    for rec in records:
        side, pos, bit, query = rec
        if side not in bits:
            raise MalformedInstance(f"bad side {side!r}")
        if not (1 <= pos <= n and 1 <= query <= n):
            raise IndexOutOfRange(f"record {tuple(rec)} outside 1..{n}")
        if pos in bits[side]:
            raise MalformedInstance(f"duplicate position {pos} on side {side}")
        bits[side][pos] = bit
        queries[side].add(query)
    for side in "ab":
        if len(bits[side]) != n:
            raise MalformedInstance(f"side {side} has {len(bits[side])} records, expected {n}")
        if len(queries[side]) != 1:
            raise MalformedInstance(f"side {side} records disagree on the query index")
    (p,), (q,) = queries["a"], queries["b"]
    if bits["a"][q] != bits["b"][p]:
        raise PromiseViolation(f"x_{q}={bits['a'][q]} but y_{p}={bits['b'][p]}")


# -- F2 sketch --------------------------------------------------------------


def four_wise_signs(width: int, seed):
    """``width`` independent ±1 hash functions, each from a random cubic mod 2^61-1."""
    rng = random.Random(f"f2:{seed}")
    coeffs = [tuple(rng.randrange(MERSENNE_61) for _ in range(4)) for _ in range(width)]

    def signs(x: int) -> tuple[int, ...]:
        x %= MERSENNE_61
        out = []
        for c0, c1, c2, c3 in coeffs:
            v = (((c3 * x + c2) * x + c1) * x + c0) % MERSENNE_61
            out.append(1 if v & 1 else -1)
        return tuple(out)

    return signs


def _f2_parts(width, seed, counter_width):
    if width < 1:
        raise ValueError("width must be >= 1")
    signs = four_wise_signs(width, seed)
    codec = Codec(tuple(Field(f"c{i}", "int", counter_width) for i in range(width)))

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def post(q):
        return statistics.median_low(c * c for c in q)

    return signs, codec, add, post


def f2_sketch_stream(width: int = DEFAULT_F2_WIDTH, seed=0, counter_width: int = 64) -> StreamSpec:
    signs, codec, add, post = _f2_parts(width, seed, counter_width)

    def step(q, x):
        return add(q, signs(x))

    return StreamSpec(step, post, (0,) * width, codec, seed=seed, name="f2-stream")


def f2_sketch_mud(width: int = DEFAULT_F2_WIDTH, seed=0, counter_width: int = 64) -> MudSpec:
    signs, codec, add, post = _f2_parts(width, seed, counter_width)
    return MudSpec(signs, add, post, codec, seed=seed, name="f2")
