"""Plain-text record and DFA file formats.

Integer inputs: whitespace/newline separated integers.
SetParity: one record per line, ``i b``.
SymmetricIndex: one record per line, ``side pos bit query``.
DFA files::

    # comments and blank lines are ignored
    states: even odd        # first state is the start state
    alphabet: 0 1
    n: 4
    delta:
    even 0 -> even
    even 1 -> odd
    odd 0 -> odd
    odd 1 -> even
    eta:
    even -> 0
    odd -> 1
"""

from __future__ import annotations

from typing import Iterable

from .algorithms import SetParityRecord, SymIndexRecord
from .errors import ParseError
from .simulator import TableDFA


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def parse_ints(text: str) -> list[int]:
    return [_int(tok, lineno) for lineno, line in _lines(text) for tok in line.split()]


def parse_tokens(text: str) -> list[tuple[int, str]]:
    return [(lineno, tok) for lineno, line in _lines(text) for tok in line.split()]


def parse_setparity(text: str) -> list[SetParityRecord]:
    out = []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'i b', got {line!r}", lineno)
        i, b = (_int(t, lineno) for t in parts)
        if b not in (0, 1):
            raise ParseError(f"bit must be 0 or 1, got {b}", lineno)
        out.append(SetParityRecord(i, b))
    return out


def parse_symindex(text: str) -> list[SymIndexRecord]:
    out = []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(f"expected 'side pos bit query', got {line!r}", lineno)
        side = parts[0]
        if side not in ("a", "b"):
            raise ParseError(f"side must be 'a' or 'b', got {side!r}", lineno)
        pos, bit, query = (_int(t, lineno) for t in parts[1:])
        if bit not in (0, 1):
            raise ParseError(f"bit must be 0 or 1, got {bit}", lineno)
        out.append(SymIndexRecord(side, pos, bit, query))
    return out


def format_setparity(records: Iterable) -> str:
    return "".join(f"{i} {b}\n" for i, b in records)


def format_symindex(records: Iterable) -> str:
    return "".join(f"{s} {p} {b} {q}\n" for s, p, b, q in records)


def parse_dfa(text: str) -> TableDFA:
    header: dict[str, tuple[int, list[str]]] = {}
    delta: dict[tuple[str, str], str] = {}
    eta: dict[str, str] = {}
    rows: dict[tuple[str, str], int] = {}
    section = None
    for lineno, line in _lines(text):
        key, sep, rest = line.partition(":")
        if sep and "->" not in line:
            key = key.strip()
            if key in ("delta", "eta"):
                if rest.strip():
                    raise ParseError(f"'{key}:' must be on its own line", lineno)
                section = key
            elif key in ("states", "alphabet", "n"):
                header[key] = (lineno, rest.split())
                section = None
            else:
                raise ParseError(f"unknown section {key!r}", lineno)
            continue
        lhs, arrow, rhs = line.partition("->")
        rhs_tokens = rhs.split()
        if not arrow or len(rhs_tokens) != 1:
            raise ParseError(f"expected a '... -> target' row, got {line!r}", lineno)
        lhs_tokens = lhs.split()
        if section == "delta":
            if len(lhs_tokens) != 2:
                raise ParseError(f"delta row needs 'state symbol -> state', got {line!r}", lineno)
            k = tuple(lhs_tokens)
            if k in delta:
                raise ParseError(f"duplicate delta row for {k}", lineno)
            delta[k] = rhs_tokens[0]
            rows[k] = lineno
        elif section == "eta":
            if len(lhs_tokens) != 1:
                raise ParseError(f"eta row needs 'state -> symbol', got {line!r}", lineno)
            eta[lhs_tokens[0]] = rhs_tokens[0]
        else:
            raise ParseError("transition row outside a delta:/eta: section", lineno)

    for key in ("states", "alphabet", "n"):
        if key not in header:
            raise ParseError(f"missing '{key}:' header")
    states = header["states"][1]
    alphabet = header["alphabet"][1]
    n_line, n_tokens = header["n"]
    if len(n_tokens) != 1:
        raise ParseError("'n:' takes one integer", n_line)
    n = _int(n_tokens[0], n_line)
    known = set(states)
    for (q, a), t in delta.items():
        if q not in known or t not in known or a not in alphabet:
            raise ParseError(
                f"delta row ({q}, {a}) -> {t} uses an undeclared state or symbol", rows[(q, a)]
            )
    try:
        return TableDFA(states, alphabet, delta, eta, n)
    except Exception as exc:  # construction errors carry no position
        raise ParseError(str(exc)) from None


def format_dfa(dfa: TableDFA) -> str:
    """Render a DFA in the text format; labels must be whitespace-free."""
    for label in dfa.states + dfa.alphabet:
        if not str(label) or any(c.isspace() for c in str(label)):
            raise ValueError(f"label {label!r} cannot be written as a single token")
    lines = [
        "states: " + " ".join(map(str, dfa.states)),
        "alphabet: " + " ".join(map(str, dfa.alphabet)),
        f"n: {dfa.n}",
        "delta:",
    ]
    for q in dfa.states:
        for a in dfa.alphabet:
            lines.append(f"{q} {a} -> {dfa.delta(q, a)}")
    lines.append("eta:")
    lines += [f"{q} -> {v}" for q, v in dfa.eta.items()]
    return "\n".join(lines) + "\n"
