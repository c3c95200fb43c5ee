"""Compiled mud vs. streaming output over every input, tree shape and sampled permutations.

    python scripts/frontier_check.py --max-n 6 --perms 5
"""

import argparse
import time

from mudsim.simulator import keep_first_dfa, verify_symmetric
from mudsim.verify import frontier_mismatches, reference_dfas


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--perms", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'dfa':<18}{'n':>3}{'symmetric':>11}{'evaluations':>13}{'mismatches':>12}{'secs':>7}")
    for n in range(1, args.max_n + 1):
        cases = reference_dfas(n) + [("keep-first", keep_first_dfa([0, 1, 2], n))]
        for name, dfa in cases:
            t = time.perf_counter()
            bad, total = frontier_mismatches(dfa, args.perms, args.seed)
            sym = verify_symmetric(dfa)
            print(f"{name:<18}{n:>3}{str(sym):>11}{total:>13}{bad:>12}{time.perf_counter() - t:>7.1f}")


if __name__ == "__main__":
    main()
