"""Exit criteria. Each test records one PASS/FAIL line shown in the run summary."""

import math
import random
import time

import pytest

from mudsim import verify
from mudsim.algorithms import span_mud
from mudsim.model import eval_mud
from mudsim.simulator import keep_first_dfa, max_dfa, scm_protocol, sum_mod_dfa, threshold_count_dfa
from mudsim.trees import balanced, random_tree

# Annotated SCM messages spend one bit on the state when |Q| = 1 and one
# extra count bit when n is a power of two.
SCM_FRAMING_BITS = 2


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def summary(result):
    return "; ".join(f"{c.name}: {c.detail}" for c in result.checks if not c.passed) or "all checks pass"


def test_c01_tree_invariance(record_criterion):
    def run():
        results = [verify.invariance(trials=50, inputs_per_spec=4, max_n=64, seed=s) for s in range(3)]
        return results

    results, secs = timed(run)
    ok = all(r.passed for r in results) and secs < 10
    record_criterion(1, "tree invariance", ok, f"seeds=3 specs=6 trials=50 {secs:.1f}s")
    for r in results:
        assert r.passed, summary(r)
    assert secs < 10


def test_c02_adapter_exactness(record_criterion):
    result, secs = timed(verify.adapter, cases=1000, max_n=64, seed=0)
    ok = result.passed and secs < 5
    record_criterion(2, "adapter exactness", ok, f"{result.checks[0].detail} {secs:.1f}s")
    assert result.passed, summary(result)
    assert secs < 5


def test_c03_simulator_oracles(record_criterion):
    result, secs = timed(verify.simulator_oracle, count=25, max_n=6, seed=0)
    ok = result.passed and secs < 60
    record_criterion(3, "simulator oracle equivalence", ok, f"dfas={len(result.checks)} {secs:.1f}s")
    assert len(result.checks) >= 20
    assert result.passed, summary(result)
    assert secs < 60


def test_c04_compiled_mud_matches_stream(record_criterion):
    result, secs = timed(verify.compiled_equivalence, max_n=6, perms=5, seed=0)
    total = sum(int(c.detail.split()[0].split("=")[1]) for c in result.checks)
    ok = result.passed and secs < 300
    record_criterion(4, "compiled mud == stream (symmetric DFAs)", ok, f"evaluations={total} {secs:.1f}s")
    assert result.passed, summary(result)
    assert secs < 300


def test_c05_non_symmetric_counterexample(record_criterion):
    (bad, total), secs = timed(verify.frontier_mismatches, keep_first_dfa([0, 1, 2], 3), perms=5, seed=0)
    ok = bad > 0 and secs < 10
    record_criterion(5, "keep-first mismatch exists", ok, f"mismatches={bad}/{total} {secs:.1f}s")
    assert bad > 0
    assert secs < 10


def test_c06_small_bias_bound(record_criterion):
    result, secs = timed(verify.bias_grid, max_n=8, epsilons=(0.49, 0.25))
    ok = result.passed and secs < 60
    record_criterion(6, "small-bias |bias-1/2|<=eps and >1/4", ok, f"checks={len(result.checks)} {secs:.1f}s")
    assert result.passed, summary(result)
    assert secs < 60


def test_c07_setparity_error_profile(record_criterion):
    result, secs = timed(verify.setparity_error, runs=1000, copies=20, n=64, seed=0)
    yes, no = (c.detail for c in result.checks)
    yes_count = int(yes.split("/")[0])
    no_count = int(no.split("/")[0])
    ok = yes_count == 1000 and no_count <= 12 and secs < 30
    record_criterion(7, "SetParity one-sided error", ok, f"yes={yes_count}/1000 no_accepted={no_count}/1000 {secs:.1f}s")
    assert yes_count == 1000
    assert no_count <= 12
    assert secs < 30


def test_c08_symmetric_index(record_criterion):
    result, secs = timed(verify.symindex, instances=500, perms=10, max_n=64, seed=0)
    ok = result.passed and secs < 10
    record_criterion(8, "SymmetricIndex answers", ok, f"{result.checks[0].detail} {secs:.1f}s")
    assert result.passed, summary(result)
    assert secs < 10


def test_c09_equality_reduction(record_criterion):
    result, secs = timed(verify.reductions, max_n=5, random_pairs=1000, random_n=10, seed=0)
    ok = result.passed and secs < 10
    record_criterion(9, "equality reduction", ok, f"{summary(result)} {secs:.1f}s")
    assert result.passed, summary(result)
    assert secs < 10


def test_c10_communication_metering(record_criterion):
    start = time.perf_counter()
    rng = random.Random(10)
    span_bits = {}
    for n in (1, 10, 1000, 100_000, 1_000_000):
        x = [rng.randint(-2**31, 2**31 - 1) for _ in range(n)]
        out, m = eval_mud(span_mud(), balanced(n), x)
        assert out == max(x) - min(x)
        span_bits[n] = m.max_message_bits
    x = [rng.randint(-2**31, 2**31 - 1) for _ in range(10_000)]
    span_bits["random-10k"] = eval_mud(span_mud(), random_tree(10_000, 1), x)[1].max_message_bits

    scm_slack = math.inf
    for n in (2, 6, 64, 1000):
        for dfa in (sum_mod_dfa(3, n), max_dfa(3, n), threshold_count_dfa(2, 1, [0, 1, 2], n)):
            bound = math.ceil(math.log2(len(dfa.states))) + math.ceil(math.log2(n)) + SCM_FRAMING_BITS
            for _ in range(5):
                word = [rng.choice(dfa.alphabet) for _ in range(n)]
                cut = rng.randint(1, n - 1)
                run = scm_protocol(dfa, word[:cut], word[cut:])
                assert run.output == dfa.f(word)
                assert max(run.alice_bits, run.bob_bits) <= bound, (dfa, n)
                scm_slack = min(scm_slack, bound - max(run.alice_bits, run.bob_bits))
    secs = time.perf_counter() - start
    ok = max(span_bits.values()) <= 80 and scm_slack >= 0 and secs < 30
    record_criterion(
        10,
        "communication metering",
        ok,
        f"span max bits={sorted(set(span_bits.values()))} min scm slack={scm_slack} bits {secs:.1f}s",
    )
    assert max(span_bits.values()) <= 80
    assert secs < 30
