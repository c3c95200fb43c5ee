"""Reference functions, reductions and instance generators for the separation problems."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algorithms import SetParityRecord, SymIndexRecord
from .errors import BadSize, IndexOutOfRange, LengthMismatch
from .model import ExecMetrics
from .simulator import SCMRun


def setparity_exact(records: Sequence, n: int) -> int:
    """1 iff every index bucket receives an even number of 1-bits."""
    odd = [0] * n
    for i, b in records:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"record index {i} outside 0..{n - 1}")
        odd[i] ^= b & 1
    return 0 if any(odd) else 1


def eq_reduction(x: str, y: str) -> tuple[list[SetParityRecord], list[SetParityRecord]]:
    """Alice's and Bob's record sets; their union has f = 1 iff x == y."""
    if len(x) != len(y):
        raise LengthMismatch(f"strings have lengths {len(x)} and {len(y)}")
    s_a = [SetParityRecord(i, int(c)) for i, c in enumerate(x)]
    s_b = [SetParityRecord(i, int(c)) for i, c in enumerate(y)]
    return s_a, s_b


def random_setparity_instance(n: int, rng: random.Random, yes: bool) -> list[SetParityRecord]:
    """n records over indices 0..n-1 with the requested value of f.

    YES instances pair up records so every bucket is even; NO instances are
    uniformly random records, resampled until some bucket is odd.
    """
    if yes:
        half = [SetParityRecord(rng.randrange(n), rng.randrange(2)) for _ in range(n // 2)]
        records = half + half
        if n % 2:
            records.append(SetParityRecord(rng.randrange(n), 0))
        rng.shuffle(records)
        return records
    while True:
        records = [SetParityRecord(rng.randrange(n), rng.randrange(2)) for _ in range(n)]
        if setparity_exact(records, n) == 0:
            return records


def symmetric_index_gen(n: int, rng_seed) -> tuple[list[SymIndexRecord], int]:
    """A shuffled instance satisfying the promise x_q = y_p, with its answer."""
    if n < 1:
        raise BadSize(f"n must be >= 1, got {n}")
    rng = random.Random(rng_seed)
    x = [rng.randrange(2) for _ in range(n)]
    y = [rng.randrange(2) for _ in range(n)]
    p, q = rng.randint(1, n), rng.randint(1, n)
    y[p - 1] = x[q - 1]
    records = [SymIndexRecord("a", i + 1, x[i], p) for i in range(n)]
    records += [SymIndexRecord("b", i + 1, y[i], q) for i in range(n)]
    rng.shuffle(records)
    return records, x[q - 1]


@dataclass(frozen=True)
class CommReport:
    message_bits: tuple[int, ...]

    @property
    def max(self) -> int:
        return max(self.message_bits, default=0)

    @property
    def total(self) -> int:
        return sum(self.message_bits)

    @property
    def count(self) -> int:
        return len(self.message_bits)


def comm_account(run) -> CommReport:
    """Bits on the wire: every non-root node value of a tree run, or both SCM messages."""
    if isinstance(run, SCMRun):
        return CommReport((run.alice_bits, run.bob_bits))
    if isinstance(run, tuple) and len(run) == 2 and isinstance(run[1], ExecMetrics):
        run = run[1]
    if isinstance(run, ExecMetrics):
        return CommReport(run.message_bits[:-1])
    raise TypeError(f"cannot account communication for {type(run).__name__}")
