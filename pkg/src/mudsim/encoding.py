"""Canonical bit-exact message encoding.

A state schema is an ordered list of fixed-width fields. A state is
flattened to a tuple of integers, each field is written least significant
bit first, fields are concatenated in declaration order, and the resulting
bit string is packed little-endian into ``ceil(bit_len / 8)`` bytes. The
encoding is therefore canonical: equal states give identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import WidthOverflow

KINDS = ("uint", "int", "bits")


@dataclass(frozen=True)
class Field:
    name: str
    kind: str
    width: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.width < 1:
            raise ValueError("field width must be >= 1")
        object.__setattr__(self, "_bounds", self.bounds())

    def bounds(self) -> tuple[int, int]:
        if self.kind == "int":
            half = 1 << (self.width - 1)
            return -half, half
        return 0, 1 << self.width

    def check(self, value: int) -> None:
        lo, hi = self._bounds
        if not lo <= value < hi:
            raise WidthOverflow(
                f"field {self.name}={value} does not fit {self.kind}{self.width}"
            )


@dataclass(frozen=True)
class Message:
    payload: bytes
    bit_len: int


def _identity(state):
    return state


@dataclass(frozen=True)
class Codec:
    fields: tuple[Field, ...]
    flatten: Callable[[Any], Sequence[int]] = field(default=_identity, compare=False)

    @property
    def width(self) -> int:
        return sum(f.width for f in self.fields)

    def _values(self, state) -> Sequence[int]:
        values = self.flatten(state)
        if len(values) != len(self.fields):
            raise ValueError(
                f"state has {len(values)} fields, schema declares {len(self.fields)}"
            )
        return values

    def __post_init__(self):
        object.__setattr__(self, "_width", sum(f.width for f in self.fields))

    def bit_len(self, state) -> int:
        """Validate ``state`` against the schema and return its encoded length."""
        for f, v in zip(self.fields, self._values(state)):
            lo, hi = f._bounds
            if not lo <= v < hi:
                f.check(v)
        return self._width

    def encode(self, state) -> Message:
        acc = 0
        offset = 0
        for f, v in zip(self.fields, self._values(state)):
            f.check(v)
            acc |= (v & ((1 << f.width) - 1)) << offset
            offset += f.width
        return Message(acc.to_bytes((offset + 7) // 8, "little"), offset)

    def decode(self, message: Message) -> tuple[int, ...]:
        if message.bit_len != self.width:
            raise ValueError("message length does not match schema")
        acc = int.from_bytes(message.payload, "little")
        out = []
        for f in self.fields:
            v = acc & ((1 << f.width) - 1)
            if f.kind == "int" and v >> (f.width - 1):
                v -= 1 << f.width
            out.append(v)
            acc >>= f.width
        return tuple(out)


def uint_width(max_value: int) -> int:
    """Bits needed for unsigned values in ``0..max_value`` (at least 1)."""
    return max(1, max_value.bit_length())
