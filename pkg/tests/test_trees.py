import math
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from mudsim.algorithms import span_mud, sum_squares_mud, minwise_sample_mud, f2_sketch_mud
from mudsim.errors import BadSize
from mudsim.model import eval_mud
from mudsim.trees import (
    ComputationTree,
    all_shapes,
    balanced,
    eval_parallel,
    from_shape,
    left_deep,
    random_tree,
)


def test_left_deep_shapes():
    assert left_deep(1).children == () and left_deep(1).depth == 0
    assert len(left_deep(2).children) == 1
    t = left_deep(4)
    assert t.depth == 3
    assert t.leaf_perm == (0, 1, 2, 3)
    _, m = eval_mud(span_mud(), t, [1, 2, 3, 4])
    assert m.aggregate_calls == 3


@pytest.mark.parametrize("n,depth", [(1, 0), (5, 3), (8, 3), (9, 4)])
def test_balanced_depth_examples(n, depth):
    assert balanced(n).depth == depth


def test_balanced_depth_is_ceil_log2():
    for n in range(1, 300):
        assert balanced(n).depth == math.ceil(math.log2(n))


@pytest.mark.parametrize("make", [left_deep, balanced, lambda n: random_tree(n, 0)])
def test_bad_size(make):
    with pytest.raises(BadSize):
        make(0)


def test_random_tree_deterministic():
    assert random_tree(3, 7) == random_tree(3, 7)
    assert random_tree(40, "x") == random_tree(40, "x")
    assert random_tree(1, 5).children == ()


def test_random_tree_reaches_both_three_leaf_shapes():
    seen = {random_tree(3, s).shape() for s in range(200)}
    assert seen == {(((), ()), ()), ((), ((), ()))}


def test_random_tree_covers_all_four_leaf_shapes_and_perms():
    shapes, perms = set(), set()
    for s in range(3000):
        t = random_tree(4, s)
        shapes.add(t.shape())
        perms.add(t.leaf_perm)
    assert len(shapes) == 5
    assert len(perms) == 24


@given(st.integers(1, 80), st.integers(0, 2**32))
def test_random_tree_is_valid(n, seed):
    t = random_tree(n, seed)
    assert t.n == n and len(t.children) == n - 1
    assert sorted(t.leaf_perm) == list(range(n))
    assert t.depth >= math.ceil(math.log2(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_all_shapes_count_is_catalan(n):
    shapes = [t.shape() for t in all_shapes(n)]
    assert len(shapes) == len(set(shapes)) == comb(2 * (n - 1), n - 1) // n


def test_from_shape_roundtrip():
    for t in all_shapes(5):
        assert from_shape(t.shape()) == t


def test_tree_validation():
    with pytest.raises(ValueError):
        ComputationTree(2, ((0, 0),), (0, 1))
    with pytest.raises(ValueError):
        ComputationTree(2, ((0, 1),), (0, 0))
    with pytest.raises(ValueError):
        ComputationTree(3, ((0, 1), (0, 2)), (0, 1, 2))


def test_levels_respect_dependencies():
    t = random_tree(50, 3)
    done = set(range(t.n))
    for level in t.levels():
        for node in level:
            a, b = t.children[node - t.n]
            assert a in done and b in done
        done.update(level)
    assert len(done) == 2 * t.n - 1


def test_eval_parallel_examples():
    out, _ = eval_parallel(span_mud(), balanced(4), [1, 9, 4, 4], workers=4)
    assert out == 8
    x = [1, 2, 3, 4, 5, 6]
    out, m = eval_parallel(sum_squares_mud(), random_tree(6, 11), x, workers=3)
    assert out == 91
    assert m.aggregate_calls == 5


def test_eval_parallel_single_worker_is_eval_mud():
    t = random_tree(10, 2)
    x = list(range(10))
    assert eval_parallel(span_mud(), t, x, workers=1) == eval_mud(span_mud(), t, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.integers(0, 2**20), st.integers(1, 6))
def test_parallel_equals_sequential(n, seed, workers):
    rng = random.Random(seed)
    x = [rng.randint(0, 30) for _ in range(n)]
    tree = random_tree(n, seed)
    for spec in (span_mud(), sum_squares_mud(), minwise_sample_mud(seed), f2_sketch_mud(seed=seed)):
        assert eval_parallel(spec, tree, x, workers) == eval_mud(spec, tree, x)
