"""Acceptance rate of SetParity on NO instances as the number of copies grows.

Each copy accepts a NO instance with probability at most 3/4, so t copies
should accept at most (3/4)^t of the time. YES instances must always be
accepted.

    python scripts/setparity_error_profile.py --n 64 --runs 2000
"""

import argparse
import random

from mudsim.algorithms import setparity_stream
from mudsim.model import eval_stream
from mudsim.separations import random_setparity_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--runs", type=int, default=2000)
    ap.add_argument("--copies", type=int, nargs="+", default=[1, 2, 3, 4, 6, 8, 12, 20])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'t':>3}{'yes accepted':>14}{'no accepted':>13}{'rate':>9}{'(3/4)^t':>9}")
    for t in args.copies:
        rng = random.Random(args.seed)
        yes = no = 0
        for run in range(args.runs):
            spec = setparity_stream(args.n, t, seed=f"{args.seed}:{t}:{run}")
            yes += eval_stream(spec, random_setparity_instance(args.n, rng, yes=True))[0]
            no += eval_stream(spec, random_setparity_instance(args.n, rng, yes=False))[0]
        print(f"{t:>3}{yes:>9}/{args.runs:<4}{no:>8}/{args.runs:<4}{no / args.runs:>9.4f}{0.75 ** t:>9.4f}")


if __name__ == "__main__":
    main()
