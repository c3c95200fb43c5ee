"""Compile explicit finite-state streaming algorithms into mud algorithms.

The aggregator merges two annotated states ``(q_A, n_A)`` and ``(q_B, n_B)``
into the state reached by streaming ``x'_A . x'_B`` for some witnesses with
``s0(x'_A) = q_A`` and ``s0(x'_B) = q_B`` of the given lengths. Witnesses are
never materialised: a forward closure over the product automaton
``(s0(w), s^{q_A}(w))`` layered by ``|w|`` yields every feasible merged state,
and the smallest one in declared state order is returned.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Hashable, NamedTuple, Optional, Sequence

from .encoding import Codec, Field, uint_width
from .errors import BadLength, NoWitness, TooLarge, UnknownState
from .model import MudSpec, StreamSpec

WITNESS_MAX_LENGTH = 8
WITNESS_MAX_WORDS = 1_000_000


class AnnotatedState(NamedTuple):
    state: Hashable
    count: int


class TableDFA:
    """Fully enumerated streaming algorithm over inputs of length exactly ``n``.

    ``states[0]`` is the start state and the list order is the canonical
    tie-breaking order. ``eta`` maps states to outputs and is applied once
    ``n`` symbols have been consumed.
    """

    def __init__(self, states: Sequence, alphabet: Sequence, delta: dict, eta: dict, n: int):
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be nonempty without duplicates")
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self._sidx = {q: i for i, q in enumerate(self.states)}
        self._aidx = {a: i for i, a in enumerate(self.alphabet)}
        table = []
        for q in self.states:
            row = []
            for a in self.alphabet:
                if (q, a) not in delta:
                    raise ValueError(f"delta is not total: missing ({q!r}, {a!r})")
                target = delta[(q, a)]
                if target not in self._sidx:
                    raise UnknownState(f"delta targets unknown state {target!r}")
                row.append(self._sidx[target])
            table.append(tuple(row))
        self._delta = tuple(table)
        self.eta = dict(eta)
        self._layers: list[frozenset[int]] = [frozenset({0})]
        self._pair_layers: dict[int, list[frozenset[tuple[int, int]]]] = {}
        self._merge_cache: dict[tuple[int, int, int], Optional[int]] = {}
        missing = [self.states[i] for i in self._reach(n) if self.states[i] not in self.eta]
        if missing:
            raise ValueError(f"eta undefined for states reachable at n: {missing}")

    @property
    def start(self):
        return self.states[0]

    def delta(self, q, a):
        return self.states[self._delta[self._sidx[q]][self._aidx[a]]]

    def index(self, q) -> int:
        try:
            return self._sidx[q]
        except (KeyError, TypeError):
            raise UnknownState(f"unknown state {q!r}") from None

    def run(self, word: Sequence, start=None):
        i = 0 if start is None else self.index(start)
        for a in word:
            i = self._delta[i][self._aidx[a]]
        return self.states[i]

    def f(self, word: Sequence):
        if len(word) != self.n:
            raise BadLength(f"input length {len(word)} != n={self.n}")
        return self.eta[self.run(word)]

    # layered closures -------------------------------------------------------

    def _check_length(self, length: int) -> None:
        if not 0 <= length <= self.n:
            raise BadLength(f"length {length} outside 0..{self.n}")

    def _reach(self, length: int) -> frozenset[int]:
        layers = self._layers
        while len(layers) <= length:
            layers.append(frozenset(t for q in layers[-1] for t in self._delta[q]))
        return layers[length]

    def _pair_reach(self, qa: int, length: int) -> frozenset[tuple[int, int]]:
        layers = self._pair_layers.setdefault(qa, [frozenset({(0, qa)})])
        while len(layers) <= length:
            layers.append(
                frozenset(
                    (du, dv)
                    for u, v in layers[-1]
                    for du, dv in zip(self._delta[u], self._delta[v])
                )
            )
        return layers[length]

    def _merge(self, qa: int, qb: int, nb: int) -> Optional[int]:
        key = (qa, qb, nb)
        if key not in self._merge_cache:
            vs = [v for u, v in self._pair_reach(qa, nb) if u == qb]
            self._merge_cache[key] = min(vs) if vs else None
        return self._merge_cache[key]

    def stream_spec(self) -> StreamSpec:
        """The DFA as a streaming algorithm over annotated states."""
        codec = annotated_codec(self)
        delta, aidx, states = self._delta, self._aidx, self.states
        sidx = self._sidx

        def step(q, x):
            return AnnotatedState(states[delta[sidx[q.state]][aidx[x]]], q.count + 1)

        return StreamSpec(step, self._post, AnnotatedState(self.start, 0), codec, name="dfa-stream")

    def _post(self, q: AnnotatedState):
        if q.count != self.n:
            raise BadLength(f"output requested at count {q.count}, defined only at n={self.n}")
        return self.eta[q.state]

    def __repr__(self):
        return f"TableDFA(|Q|={len(self.states)}, |Σ|={len(self.alphabet)}, n={self.n})"


def annotated_codec(dfa: TableDFA) -> Codec:
    return Codec(
        (
            Field("state", "uint", uint_width(len(dfa.states) - 1)),
            Field("count", "uint", uint_width(dfa.n)),
        ),
        flatten=lambda q: (dfa.index(q.state), q.count),
    )


def reach_set(dfa: TableDFA, length: int) -> frozenset:
    """States reachable from the start by some string of exactly ``length`` symbols."""
    dfa._check_length(length)
    return frozenset(dfa.states[i] for i in dfa._reach(length))


def pair_reach(dfa: TableDFA, q_a, length: int) -> frozenset:
    """Pairs ``(s0(w), s^{q_a}(w))`` over all strings w of the given length."""
    qa = dfa.index(q_a)
    dfa._check_length(length)
    st = dfa.states
    return frozenset((st[u], st[v]) for u, v in dfa._pair_reach(qa, length))


def combine(dfa: TableDFA, a: AnnotatedState, b: AnnotatedState) -> AnnotatedState:
    if a.count < 1 or b.count < 1 or a.count + b.count > dfa.n:
        raise BadLength(f"cannot merge counts {a.count} and {b.count} with n={dfa.n}")
    qa, qb = dfa.index(a.state), dfa.index(b.state)
    if qa not in dfa._reach(a.count):
        raise NoWitness(f"state {a.state!r} is unreachable in {a.count} steps")
    v = dfa._merge(qa, qb, b.count)
    if v is None:
        raise NoWitness(
            f"no string of length {b.count} reaches {b.state!r} from the start"
            f" and any state from {a.state!r}"
        )
    return AnnotatedState(dfa.states[v], a.count + b.count)


def mud_from_stream(dfa: TableDFA) -> MudSpec:
    """Mud algorithm computing the same symmetric function as ``dfa``.

    Correct for every computation tree only when the DFA's function is
    symmetric; see ``verify_symmetric``.
    """

    def local(x):
        return AnnotatedState(dfa.delta(dfa.start, x), 1)

    def aggregate(a, b):
        return combine(dfa, a, b)

    return MudSpec(local, aggregate, dfa._post, annotated_codec(dfa), name="compiled")


@dataclass(frozen=True)
class SCMRun:
    output: Hashable
    q_a: AnnotatedState
    q_b: AnnotatedState
    q_c: AnnotatedState
    alice_bits: int
    bob_bits: int


def scm_protocol(dfa: TableDFA, x_a: Sequence, x_b: Sequence) -> SCMRun:
    """Alice and Bob each stream their half; Carol merges the two states."""
    if not x_a or not x_b:
        raise BadLength("both parties need a nonempty share of the input")
    if len(x_a) + len(x_b) != dfa.n:
        raise BadLength(f"shares total {len(x_a) + len(x_b)} symbols, expected {dfa.n}")
    codec = annotated_codec(dfa)
    q_a = AnnotatedState(dfa.run(x_a), len(x_a))
    q_b = AnnotatedState(dfa.run(x_b), len(x_b))
    q_c = combine(dfa, q_a, q_b)
    return SCMRun(dfa._post(q_c), q_a, q_b, q_c, codec.bit_len(q_a), codec.bit_len(q_b))


# -- brute-force oracles -----------------------------------------------------


def _words(dfa: TableDFA, length: int):
    if length > WITNESS_MAX_LENGTH or len(dfa.alphabet) ** length > WITNESS_MAX_WORDS:
        raise TooLarge(f"|Σ|^{length} strings is too many to enumerate")
    return itertools.product(dfa.alphabet, repeat=length)


def witness_search(dfa: TableDFA, q, length: int, start=None) -> Optional[tuple]:
    """Some string w of the given length with ``run(w, start) == q``, by enumeration."""
    dfa.index(q)
    for w in _words(dfa, length):
        if dfa.run(w, start) == q:
            return w
    return None


def pair_witness_search(dfa: TableDFA, q_a, u, v, length: int) -> Optional[tuple]:
    """Some w with ``run(w) == u`` and ``run(w, q_a) == v``, by enumeration."""
    for w in _words(dfa, length):
        if dfa.run(w) == u and dfa.run(w, q_a) == v:
            return w
    return None


def verify_symmetric(dfa: TableDFA) -> bool:
    """Exhaustively check that the output depends only on the input multiset."""
    order = {a: i for i, a in enumerate(dfa.alphabet)}
    for w in _words(dfa, dfa.n):
        if dfa.f(w) != dfa.f(sorted(w, key=order.__getitem__)):
            return False
    return True


# -- reference automata -------------------------------------------------------


def parity_dfa(n: int) -> TableDFA:
    delta = {}
    for q, p in (("even", 0), ("odd", 1)):
        for a in (0, 1):
            delta[(q, a)] = ("even", "odd")[p ^ a]
    return TableDFA(["even", "odd"], [0, 1], delta, {"even": 0, "odd": 1}, n)


def sum_mod_dfa(k: int, n: int) -> TableDFA:
    states = list(range(k))
    delta = {(q, a): (q + a) % k for q in states for a in states}
    return TableDFA(states, states, delta, {q: q for q in states}, n)


def max_dfa(k: int, n: int) -> TableDFA:
    states = list(range(k))
    delta = {(q, a): max(q, a) for q in states for a in states}
    return TableDFA(states, states, delta, {q: q for q in states}, n)


def threshold_count_dfa(threshold: int, target, alphabet: Sequence, n: int) -> TableDFA:
    """Output 1 iff ``target`` occurs at least ``threshold`` times."""
    states = list(range(threshold + 1))
    delta = {
        (q, a): min(q + (a == target), threshold) for q in states for a in alphabet
    }
    eta = {q: int(q >= threshold) for q in states}
    return TableDFA(states, alphabet, delta, eta, n)


def saturating_counter_dfa(cap: int, n: int) -> TableDFA:
    states = list(range(cap + 1))
    delta = {(q, 1): min(q + 1, cap) for q in states}
    return TableDFA(states, [1], delta, {q: q for q in states}, n)


def keep_first_dfa(alphabet: Sequence, n: int) -> TableDFA:
    """Outputs the first symbol: not a symmetric function."""
    states = ["start"] + [f"first={a}" for a in alphabet]
    delta = {("start", a): f"first={a}" for a in alphabet}
    delta.update({(f"first={b}", a): f"first={b}" for a in alphabet for b in alphabet})
    eta = {f"first={a}": a for a in alphabet}
    return TableDFA(states, alphabet, delta, eta, n)


def random_dfa(
    rng: random.Random, max_states: int = 6, max_symbols: int = 3, max_n: int = 6, full: bool = False
) -> TableDFA:
    """Random total DFA; ``full`` pins every size to its maximum."""
    if full:
        k, s, n = max_states, max_symbols, max_n
    else:
        k, s, n = rng.randint(1, max_states), rng.randint(1, max_symbols), rng.randint(1, max_n)
    states, alphabet = list(range(k)), list(range(s))
    delta = {(q, a): rng.randrange(k) for q in states for a in alphabet}
    eta = {q: rng.randrange(2) for q in states}
    return TableDFA(states, alphabet, delta, eta, n)
