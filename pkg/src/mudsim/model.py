"""Mud and streaming algorithm abstractions and their evaluation semantics."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional, Sequence

from .encoding import Codec
from .errors import EmptyInput, LeafMismatch, NoWitness
from .trees import ComputationTree, balanced, left_deep, random_tree


@dataclass(frozen=True)
class MudSpec:
    """A mud algorithm: local map, pairwise aggregator and post-processing.

    ``seed`` is the public random string shared verbatim by all three
    functions; the functions are closures already specialised to it.
    """

    local: Callable[[Any], Any]
    aggregate: Callable[[Any, Any], Any]
    post: Callable[[Any], Hashable]
    codec: Codec
    seed: Optional[int] = None
    name: str = "mud"


@dataclass(frozen=True)
class StreamSpec:
    step: Callable[[Any, Any], Any]
    post: Callable[[Any], Hashable]
    start: Any
    codec: Codec
    seed: Optional[int] = None
    name: str = "stream"


@dataclass(frozen=True)
class ExecMetrics:
    max_message_bits: int
    n_leaves: int
    tree_depth: int
    aggregate_calls: int
    # Encoded size of every node value (indexed by node id for tree runs,
    # by step for streaming runs).
    message_bits: tuple[int, ...] = field(default=(), repr=False)


def fold(spec: StreamSpec, state, symbols: Sequence) -> Any:
    for x in symbols:
        state = spec.step(state, x)
    return state


def eval_stream(spec: StreamSpec, inputs: Sequence) -> tuple[Any, ExecMetrics]:
    """Fold ``inputs`` from the start state and post-process.

    Metrics mirror the left-deep chain the fold traces: depth and
    aggregate_calls are ``n - 1``.
    """
    inputs = list(inputs)
    if not inputs:
        raise EmptyInput("streaming evaluation needs at least one symbol")
    state = spec.start
    bits = []
    step, bit_len = spec.step, spec.codec.bit_len
    for x in inputs:
        state = step(state, x)
        bits.append(bit_len(state))
    n = len(inputs)
    metrics = ExecMetrics(max(bits), n, n - 1, n - 1, tuple(bits))
    return spec.post(state), metrics


def _aggregate_at(spec: MudSpec, node: int, a, b):
    try:
        return spec.aggregate(a, b)
    except NoWitness as exc:
        exc.node = node
        raise


def _evaluate(spec: MudSpec, tree: ComputationTree, inputs, mapper=None):
    inputs = list(inputs)
    if not inputs:
        raise EmptyInput("mud evaluation needs at least one symbol")
    if tree.n != len(inputs):
        raise LeafMismatch(f"tree has {tree.n} leaves but input has {len(inputs)} items")
    n = tree.n
    local, aggregate, bit_len = spec.local, spec.aggregate, spec.codec.bit_len
    values: list = [local(inputs[j]) for j in tree.leaf_perm]
    bits = [bit_len(q) for q in values]
    values.extend([None] * (n - 1))
    bits.extend([0] * (n - 1))
    children = tree.children

    if mapper is None:
        for k, (a, b) in enumerate(children):
            node = n + k
            try:
                q = aggregate(values[a], values[b])
            except NoWitness as exc:
                exc.node = node
                raise
            values[node] = q
            bits[node] = bit_len(q)
    else:
        def run(node):
            a, b = children[node - n]
            return _aggregate_at(spec, node, values[a], values[b])

        for level in tree.levels():
            for node, q in zip(level, mapper(run, level)):
                values[node] = q
                bits[node] = bit_len(q)

    metrics = ExecMetrics(max(bits), n, tree.depth, n - 1, tuple(bits))
    return spec.post(values[tree.root]), metrics


def eval_mud(spec: MudSpec, tree: ComputationTree, inputs: Sequence) -> tuple[Any, ExecMetrics]:
    return _evaluate(spec, tree, inputs)


class _Fresh:
    """Start marker of an adapted stream: nothing consumed yet."""

    def __repr__(self):
        return "<fresh>"


FRESH = _Fresh()


def adapter_stream_of_mud(spec: MudSpec) -> StreamSpec:
    """Streaming form of a mud algorithm: step(q, x) = aggregate(q, local(x)).

    The first step turns ``x_1`` into ``local(x_1)``, so the fold reproduces
    the left-deep tree exactly.
    """
    local, aggregate = spec.local, spec.aggregate

    def step(q, x):
        if q is FRESH:
            return local(x)
        return aggregate(q, local(x))

    return StreamSpec(step, spec.post, FRESH, spec.codec, spec.seed, name=f"{spec.name}-stream")


@dataclass
class InvarianceReport:
    outputs: Counter
    trials: int

    @property
    def passed(self) -> bool:
        return len(self.outputs) == 1

    @property
    def output(self):
        if not self.passed:
            raise ValueError("no single output: spec is tree-dependent on this input")
        return next(iter(self.outputs))


def check_invariance(spec: MudSpec, inputs: Sequence, trials: int, seed=0) -> InvarianceReport:
    """Evaluate over left-deep, balanced and ``trials`` random trees and tally outputs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    inputs = list(inputs)
    n = len(inputs)
    if n == 0:
        raise EmptyInput("invariance check needs at least one symbol")
    rng = random.Random(seed)
    trees = [left_deep(n), balanced(n)]
    trees += [random_tree(n, rng.getrandbits(64)) for _ in range(trials)]
    outputs: Counter = Counter()
    for tree in trees:
        out, _ = eval_mud(spec, tree, inputs)
        outputs[out] += 1
    return InvarianceReport(outputs, trials)
