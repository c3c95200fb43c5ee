"""Computation-tree topologies, leaf permutations and parallel evaluation.

Node ids ``0..n-1`` are leaves, in left-to-right position order. Internal
node ``n + k`` has children ``children[k]``; children always carry smaller
ids than their parent, so iterating internal nodes in id order is a valid
bottom-up schedule. Leaf ``i`` reads ``input[leaf_perm[i]]`` (0-based).
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import BadSize


@dataclass(frozen=True)
class ComputationTree:
    n: int
    children: tuple[tuple[int, int], ...]
    leaf_perm: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise BadSize(f"tree needs at least one leaf, got n={self.n}")
        if len(self.children) != self.n - 1:
            raise ValueError("a binary in-tree with n leaves has n-1 internal nodes")
        if sorted(self.leaf_perm) != list(range(self.n)):
            raise ValueError("leaf_perm must be a permutation of 0..n-1")
        used = set()
        for k, (a, b) in enumerate(self.children):
            node = self.n + k
            if not (0 <= a < node and 0 <= b < node) or a == b:
                raise ValueError(f"bad children {a, b} for node {node}")
            if a in used or b in used:
                raise ValueError("node used as a child twice")
            used.update((a, b))
        if len(used) != self.n + len(self.children) - 1:
            raise ValueError("tree is not connected")

    @property
    def root(self) -> int:
        return self.n + len(self.children) - 1

    @cached_property
    def heights(self) -> tuple[int, ...]:
        h = [0] * (self.n + len(self.children))
        for k, (a, b) in enumerate(self.children):
            h[self.n + k] = 1 + max(h[a], h[b])
        return tuple(h)

    @property
    def depth(self) -> int:
        return self.heights[self.root]

    def levels(self) -> list[list[int]]:
        """Internal nodes grouped by height; every group depends only on earlier ones."""
        groups: list[list[int]] = [[] for _ in range(self.depth)]
        for k in range(len(self.children)):
            node = self.n + k
            groups[self.heights[node] - 1].append(node)
        return groups

    def with_perm(self, perm) -> "ComputationTree":
        return ComputationTree(self.n, self.children, tuple(perm))

    def shape(self):
        """Nested-tuple rendering of the topology, ignoring the permutation."""

        def build(node):
            if node < self.n:
                return ()
            a, b = self.children[node - self.n]
            return (build(a), build(b))

        return build(self.root)


def _check_size(n: int) -> None:
    if n < 1:
        raise BadSize(f"n must be >= 1, got {n}")


def left_deep(n: int) -> ComputationTree:
    _check_size(n)
    children = []
    acc = 0
    for i in range(1, n):
        children.append((acc, i))
        acc = n + i - 1
    return ComputationTree(n, tuple(children), tuple(range(n)))


def balanced(n: int) -> ComputationTree:
    """Split sizes ceil/floor recursively, giving depth ceil(log2 n)."""
    _check_size(n)
    children: list[tuple[int, int]] = []

    def build(lo: int, hi: int) -> int:
        if hi - lo == 1:
            return lo
        mid = lo + (hi - lo + 1) // 2
        left = build(lo, mid)
        right = build(mid, hi)
        children.append((left, right))
        return n + len(children) - 1

    build(0, n)
    return ComputationTree(n, tuple(children), tuple(range(n)))


def random_tree(n: int, seed) -> ComputationTree:
    """Random shape by merging two uniformly chosen roots, plus a random leaf permutation."""
    _check_size(n)
    rng = random.Random(seed)
    pool = list(range(n))
    children = []
    while len(pool) > 1:
        i, j = rng.sample(range(len(pool)), 2)
        a, b = pool[i], pool[j]
        for idx in sorted((i, j), reverse=True):
            pool.pop(idx)
        children.append((a, b))
        pool.append(n + len(children) - 1)
    perm = list(range(n))
    rng.shuffle(perm)
    # Leaves must read left to right by id for ``shape`` to be meaningful, so
    # relabel leaves in the order an in-order traversal meets them.
    return _relabel(n, children, perm)


def _relabel(n: int, children, perm) -> ComputationTree:
    order: list[int] = []
    root = n + len(children) - 1 if children else 0

    stack = [root]
    while stack:
        node = stack.pop()
        if node < n:
            order.append(node)
        else:
            a, b = children[node - n]
            stack.append(b)
            stack.append(a)
    new_id = {old: pos for pos, old in enumerate(order)}
    new_children = tuple(
        (new_id.get(a, a), new_id.get(b, b)) for a, b in children
    )
    new_perm = tuple(perm[old] for old in order)
    return ComputationTree(n, new_children, new_perm)


def _shapes(n: int):
    if n == 1:
        yield ()
        return
    for k in range(1, n):
        for left in _shapes(k):
            for right in _shapes(n - k):
                yield (left, right)


def from_shape(shape, perm=None) -> ComputationTree:
    children: list[tuple[int, int]] = []
    n = _count_leaves(shape)
    next_leaf = 0

    def build(s) -> int:
        nonlocal next_leaf
        if s == ():
            next_leaf += 1
            return next_leaf - 1
        a = build(s[0])
        b = build(s[1])
        children.append((a, b))
        return n + len(children) - 1

    build(shape)
    return ComputationTree(n, tuple(children), tuple(perm) if perm else tuple(range(n)))


def _count_leaves(shape) -> int:
    if shape == ():
        return 1
    return _count_leaves(shape[0]) + _count_leaves(shape[1])


def all_shapes(n: int) -> Iterator[ComputationTree]:
    """Every binary tree shape with n leaves (Catalan(n-1) of them), identity permutation."""
    _check_size(n)
    for s in _shapes(n):
        yield from_shape(s)


def eval_parallel(spec, tree: ComputationTree, inputs, workers: int = 1):
    """Evaluate level by level on a thread pool; results match ``eval_mud`` exactly."""
    from .model import eval_mud, _evaluate

    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        return eval_mud(spec, tree, inputs)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return _evaluate(spec, tree, inputs, pool.map)
