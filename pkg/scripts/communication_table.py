"""Measured message sizes (bits) of every library algorithm as the input grows.

    python scripts/communication_table.py --sizes 1 10 100 10000
"""

import argparse
import random

from mudsim import algorithms as alg
from mudsim.model import eval_mud
from mudsim.separations import comm_account
from mudsim.simulator import scm_protocol, sum_mod_dfa
from mudsim.trees import random_tree


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[1, 10, 100, 10_000])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    specs = {
        "span": (alg.span_mud(), lambda k: [rng.randint(-2**31, 2**31 - 1) for _ in range(k)]),
        "sumsq": (alg.sum_squares_mud(), lambda k: [rng.randint(0, 1000) for _ in range(k)]),
        "minwise": (alg.minwise_sample_mud(args.seed), lambda k: [rng.randint(0, 100) for _ in range(k)]),
        "setparity": (
            alg.setparity_mud(64, seed=args.seed),
            lambda k: [(rng.randrange(64), rng.randrange(2)) for _ in range(k)],
        ),
        "f2": (alg.f2_sketch_mud(seed=args.seed), lambda k: [rng.randint(0, 100) for _ in range(k)]),
    }
    print(f"{'algorithm':<11}{'n':>8}{'messages':>10}{'max bits':>10}{'total bits':>12}")
    for name, (spec, gen) in specs.items():
        for n in args.sizes:
            report = comm_account(eval_mud(spec, random_tree(n, rng.getrandbits(32)), gen(n)))
            print(f"{name:<11}{n:>8}{report.count:>10}{report.max:>10}{report.total:>12}")
    for n in args.sizes:
        if n < 2:
            continue
        dfa = sum_mod_dfa(3, n)
        word = [rng.randrange(3) for _ in range(n)]
        report = comm_account(scm_protocol(dfa, word[: n // 2], word[n // 2 :]))
        print(f"{'scm mod3':<11}{n:>8}{report.count:>10}{report.max:>10}{report.total:>12}")


if __name__ == "__main__":
    main()
