import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mudsim.algorithms import setparity_mud, span_mud, symmetric_index_stream, validate_symindex
from mudsim.errors import BadSize, IndexOutOfRange, LengthMismatch
from mudsim.model import eval_mud, eval_stream
from mudsim.separations import (
    comm_account,
    eq_reduction,
    random_setparity_instance,
    setparity_exact,
    symmetric_index_gen,
)
from mudsim.simulator import scm_protocol, sum_mod_dfa
from mudsim.trees import balanced, left_deep


def brute_setparity(records, n):
    return int(all(sum(b for i, b in records if i == t) % 2 == 0 for t in range(n)))


@pytest.mark.parametrize(
    "records,n,want",
    [([(0, 1), (0, 1)], 1, 1), ([(0, 1)], 1, 0), ([], 3, 1)],
)
def test_setparity_exact_examples(records, n, want):
    assert setparity_exact(records, n) == want


def test_setparity_exact_range():
    with pytest.raises(IndexOutOfRange):
        setparity_exact([(2, 1)], 2)


@given(st.integers(1, 8), st.data())
def test_setparity_exact_matches_definition(n, data):
    records = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, 1)), max_size=20))
    assert setparity_exact(records, n) == brute_setparity(records, n)


@pytest.mark.parametrize("x,y,want", [("01", "01", 1), ("01", "11", 0), ("", "", 1)])
def test_eq_reduction_examples(x, y, want):
    s_a, s_b = eq_reduction(x, y)
    assert setparity_exact(s_a + s_b, len(x)) == want


def test_eq_reduction_length_mismatch():
    with pytest.raises(LengthMismatch):
        eq_reduction("0", "01")


def test_eq_reduction_exhaustive_small():
    for n in range(5):
        for x, y in itertools.product(itertools.product("01", repeat=n), repeat=2):
            s_a, s_b = eq_reduction("".join(x), "".join(y))
            assert setparity_exact(s_a + s_b, n) == int(x == y)


def test_random_setparity_instances_have_requested_value():
    rng = random.Random(0)
    for n in (1, 2, 5, 64):
        for _ in range(20):
            assert setparity_exact(random_setparity_instance(n, rng, yes=True), n) == 1
            assert setparity_exact(random_setparity_instance(n, rng, yes=False), n) == 0


def test_symindex_gen_examples():
    recs, answer = symmetric_index_gen(1, 4)
    assert len(recs) == 2
    (a,) = [r for r in recs if r.side == "a"]
    (b,) = [r for r in recs if r.side == "b"]
    assert a.bit == b.bit == answer
    with pytest.raises(BadSize):
        symmetric_index_gen(0, 1)


@given(st.integers(1, 40), st.integers(0, 2**32))
def test_symindex_gen_promise_and_stream_agree(n, seed):
    recs, answer = symmetric_index_gen(n, seed)
    validate_symindex(recs, n)
    assert sum(r.side == "a" for r in recs) == sum(r.side == "b" for r in recs) == n
    assert eval_stream(symmetric_index_stream(n), recs)[0] == answer
    assert symmetric_index_gen(n, seed) == (recs, answer)


def test_comm_account_span_32bit():
    rng = random.Random(1)
    x = [rng.randint(-2**31, 2**31 - 1) for _ in range(1000)]
    report = comm_account(eval_mud(span_mud(), balanced(1000), x))
    assert report.max == 64
    assert report.count == 2 * 1000 - 2
    assert report.total == 64 * report.count


def test_comm_account_setparity():
    run = eval_mud(setparity_mud(8, 20, seed=1), left_deep(4), [(0, 1), (1, 1), (2, 0), (3, 1)])
    assert comm_account(run).max == 20


def test_comm_account_single_leaf():
    report = comm_account(eval_mud(span_mud(), left_deep(1), [5]))
    assert report.count == 0 and report.max == 0 and report.total == 0


def test_comm_account_scm():
    run = scm_protocol(sum_mod_dfa(3, 4), [1, 1], [2, 0])
    report = comm_account(run)
    assert report.message_bits == (run.alice_bits, run.bob_bits) == (5, 5)


def test_comm_account_rejects_other_objects():
    with pytest.raises(TypeError):
        comm_account(42)
