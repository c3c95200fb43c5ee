"""Property suites shared by the ``verify`` command and the acceptance tests.

Each suite returns a :class:`SuiteResult` made of named checks; a suite
passes when every check does.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import algorithms as alg
from .errors import NoWitness
from .model import adapter_stream_of_mud, check_invariance, eval_mud, eval_stream
from .separations import (
    eq_reduction,
    random_setparity_instance,
    setparity_exact,
    symmetric_index_gen,
)
from .simulator import (
    AnnotatedState,
    TableDFA,
    combine,
    max_dfa,
    mud_from_stream,
    pair_reach,
    pair_witness_search,
    random_dfa,
    reach_set,
    sum_mod_dfa,
    threshold_count_dfa,
    witness_search,
)
from .small_bias import bias_table
from .trees import all_shapes, left_deep


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.name} {c.detail}".rstrip() for c in self.checks]
        out.append(f"suite={self.name} result={'PASS' if self.passed else 'FAIL'}")
        return out


# -- random inputs for the library algorithms --------------------------------

SETPARITY_N = 64


def library_specs(seed: int):
    """(name, MudSpec, input generator) for every tree-invariant library algorithm."""
    return [
        ("span", alg.span_mud(), lambda r, k: [r.randint(-10**6, 10**6) for _ in range(k)]),
        ("sumsq", alg.sum_squares_mud(), lambda r, k: [r.randint(-1000, 1000) for _ in range(k)]),
        ("l2", alg.l2_mud(), lambda r, k: [r.randint(-1000, 1000) for _ in range(k)]),
        ("minwise", alg.minwise_sample_mud(seed), lambda r, k: [r.randint(0, 20) for _ in range(k)]),
        (
            "setparity",
            alg.setparity_mud(SETPARITY_N, seed=seed),
            lambda r, k: [
                alg.SetParityRecord(r.randrange(SETPARITY_N), r.randrange(2)) for _ in range(k)
            ],
        ),
        ("f2", alg.f2_sketch_mud(seed=seed), lambda r, k: [r.randint(0, 8) for _ in range(k)]),
    ]


def invariance(trials: int = 50, inputs_per_spec: int = 4, max_n: int = 64, seed: int = 0) -> SuiteResult:
    result = SuiteResult("invariance")
    rng = random.Random(seed)
    for name, spec, gen in library_specs(seed):
        sizes = [1, max_n] + [rng.randint(1, max_n) for _ in range(max(0, inputs_per_spec - 2))]
        outs = []
        ok = True
        for k in sizes:
            report = check_invariance(spec, gen(rng, k), trials, rng.getrandbits(32))
            ok &= report.passed
            outs.append(report.output if report.passed else dict(report.outputs))
        result.add(f"invariance[{name}]", ok, f"n={sizes} outputs={outs}")
    return result


def adapter(cases: int = 1000, max_n: int = 64, seed: int = 0) -> SuiteResult:
    result = SuiteResult("adapter")
    rng = random.Random(seed)
    specs = library_specs(seed)
    streams = [(name, spec, adapter_stream_of_mud(spec), gen) for name, spec, gen in specs]
    bad = []
    for case in range(cases):
        name, spec, stream, gen = streams[case % len(streams)]
        x = gen(rng, rng.randint(1, max_n))
        a, _ = eval_stream(stream, x)
        b, _ = eval_mud(spec, left_deep(len(x)), x)
        if a != b or type(a) is not type(b) or repr(a) != repr(b):
            bad.append((name, x))
    result.add("adapter-exactness", not bad, f"cases={cases} mismatches={len(bad)}")
    return result


# -- simulator ---------------------------------------------------------------


def _words(dfa: TableDFA, length: int):
    return itertools.product(dfa.alphabet, repeat=length)


def check_dfa_oracles(dfa: TableDFA) -> list[str]:
    """Compare reach_set/pair_reach/combine against enumeration; return failures."""
    failures = []
    for length in range(dfa.n + 1):
        brute = frozenset(q for q in dfa.states if witness_search(dfa, q, length) is not None)
        if reach_set(dfa, length) != brute:
            failures.append(f"reach_set length={length}")
        for qa in dfa.states:
            brute_pairs = frozenset((dfa.run(w), dfa.run(w, qa)) for w in _words(dfa, length))
            if pair_reach(dfa, qa, length) != brute_pairs:
                failures.append(f"pair_reach q_A={qa} length={length}")
    for ca in range(1, dfa.n):
        for cb in range(1, dfa.n - ca + 1):
            for qa in dfa.states:
                wa = witness_search(dfa, qa, ca)
                for qb in dfa.states:
                    try:
                        qc = combine(dfa, AnnotatedState(qa, ca), AnnotatedState(qb, cb))
                    except NoWitness:
                        feasible = wa is not None and any(
                            pair_witness_search(dfa, qa, qb, v, cb) is not None for v in dfa.states
                        )
                        if feasible:
                            failures.append(f"combine spurious NoWitness {(qa, ca, qb, cb)}")
                        continue
                    wb = pair_witness_search(dfa, qa, qb, qc.state, cb)
                    if wa is None or wb is None or dfa.run(tuple(wa) + tuple(wb)) != qc.state:
                        failures.append(f"combine without witness {(qa, ca, qb, cb)} -> {qc}")
    return failures


def simulator_oracle(count: int = 20, max_n: int = 6, seed: int = 0) -> SuiteResult:
    result = SuiteResult("simulator-oracle")
    rng = random.Random(seed)
    for k in range(count):
        dfa = random_dfa(rng, max_states=6, max_symbols=3, max_n=max_n, full=k % 4 == 0)
        failures = check_dfa_oracles(dfa)
        result.add(f"dfa[{k}]", not failures, f"{dfa!r} {failures[:3] if failures else ''}".rstrip())
    return result


def reference_dfas(n: int) -> list[tuple[str, TableDFA]]:
    return [
        ("sum-mod-3", sum_mod_dfa(3, n)),
        ("max", max_dfa(3, n)),
        ("threshold-count", threshold_count_dfa(2, 1, [0, 1, 2], n)),
    ]


def frontier_mismatches(dfa: TableDFA, perms: int = 5, seed: int = 0) -> tuple[int, int]:
    """(mismatches, evaluations) over all inputs x all shapes x sampled permutations."""
    rng = random.Random(seed)
    spec = mud_from_stream(dfa)
    stream = dfa.stream_spec()
    n = dfa.n
    shapes = list(all_shapes(n))
    trees = []
    for shape in shapes:
        for _ in range(perms):
            p = list(range(n))
            rng.shuffle(p)
            trees.append(shape.with_perm(p))
    bad = total = 0
    for x in _words(dfa, n):
        want, _ = eval_stream(stream, x)
        for tree in trees:
            got, _ = eval_mud(spec, tree, x)
            total += 1
            bad += got != want
    return bad, total


def compiled_equivalence(max_n: int = 6, perms: int = 5, seed: int = 0) -> SuiteResult:
    result = SuiteResult("compiled-equivalence")
    for n in range(1, max_n + 1):
        for name, dfa in reference_dfas(n):
            bad, total = frontier_mismatches(dfa, perms, seed)
            result.add(f"{name}[n={n}]", bad == 0, f"evaluations={total} mismatches={bad}")
    return result


# -- small bias ---------------------------------------------------------------


def bias(n: int, m: int, epsilon: float | None = None) -> SuiteResult:
    result = SuiteResult("bias")
    table = bias_table(n, m)
    half = Fraction(1, 2)
    worst = max(abs(b - half) for b in table.values())
    lowest = min(table.values())
    result.add(
        f"bias>1/4[n={n},m={m}]",
        lowest > Fraction(1, 4),
        f"subsets={len(table)} min_bias={lowest} max_dev={worst} ({float(worst):.6f})",
    )
    if epsilon is not None:
        result.add(f"|bias-1/2|<=eps[eps={epsilon}]", worst <= Fraction(epsilon), f"max_dev={float(worst):.6f}")
    return result


def bias_grid(max_n: int = 8, epsilons=(0.49, 0.25)) -> SuiteResult:
    result = SuiteResult("bias-grid")
    for n in range(1, max_n + 1):
        for eps in epsilons:
            m = math.ceil(math.log2(n / eps)) + 1
            for c in bias(n, m, eps).checks:
                result.checks.append(c)
    return result


# -- SetParity ----------------------------------------------------------------


def setparity_accept_limit(runs: int, copies: int) -> int:
    p = 0.75 ** copies
    slack = runs * p + 3 * math.sqrt(runs * p * (1 - p))
    return max(math.floor(slack), math.floor(12 * runs / 1000))


def setparity_error(runs: int = 1000, copies: int = 20, n: int = 64, seed: int = 0) -> SuiteResult:
    result = SuiteResult("setparity-error")
    rng = random.Random(seed)
    yes_ok = no_accept = 0
    for run in range(runs):
        spec = alg.setparity_stream(n, copies, seed=f"{seed}:{run}")
        yes = random_setparity_instance(n, rng, yes=True)
        no = random_setparity_instance(n, rng, yes=False)
        yes_ok += eval_stream(spec, yes)[0] == 1
        no_accept += eval_stream(spec, no)[0] == 1
    limit = setparity_accept_limit(runs, copies)
    result.add("yes-accepted", yes_ok == runs, f"{yes_ok}/{runs}")
    result.add(
        "no-accept-rate",
        no_accept <= limit,
        f"{no_accept}/{runs} (limit {limit}, (3/4)^{copies}={0.75 ** copies:.5f})",
    )
    return result


# -- reductions and SymmetricIndex ---------------------------------------------


def reductions(max_n: int = 5, random_pairs: int = 1000, random_n: int = 10, seed: int = 0) -> SuiteResult:
    result = SuiteResult("reductions")
    bad = checked = 0
    for n in range(max_n + 1):
        for xs in itertools.product("01", repeat=n):
            for ys in itertools.product("01", repeat=n):
                x, y = "".join(xs), "".join(ys)
                s_a, s_b = eq_reduction(x, y)
                checked += 1
                bad += setparity_exact(s_a + s_b, n) != int(x == y)
    result.add(f"exhaustive[n<={max_n}]", bad == 0, f"pairs={checked} mismatches={bad}")
    rng = random.Random(seed)
    bad = 0
    for _ in range(random_pairs):
        x = "".join(rng.choice("01") for _ in range(random_n))
        y = x if rng.random() < 0.5 else "".join(rng.choice("01") for _ in range(random_n))
        s_a, s_b = eq_reduction(x, y)
        bad += setparity_exact(s_a + s_b, random_n) != int(x == y)
    result.add(f"random[n={random_n}]", bad == 0, f"pairs={random_pairs} mismatches={bad}")
    return result


def symindex(instances: int = 500, perms: int = 10, max_n: int = 64, seed: int = 0) -> SuiteResult:
    result = SuiteResult("symindex")
    rng = random.Random(seed)
    bad = 0
    for k in range(instances):
        n = rng.randint(1, max_n)
        records, answer = symmetric_index_gen(n, rng.getrandbits(64))
        alg.validate_symindex(records, n)
        stream = alg.symmetric_index_stream(n)
        for _ in range(perms):
            rng.shuffle(records)
            bad += eval_stream(stream, records)[0] != answer
    result.add("answer=ground-truth", bad == 0, f"instances={instances} perms={perms} wrong={bad}")
    return result


SUITES = {
    "invariance": invariance,
    "simulator-oracle": simulator_oracle,
    "bias": bias,
    "setparity-error": setparity_error,
    "reductions": reductions,
}
