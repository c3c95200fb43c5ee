"""Command-line entry point.

Exit codes: 0 success (MATCH for ``simulate``), 1 suite failure or MISMATCH,
2 parse error or bad parameters, 3 evaluation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algorithms as alg
from . import verify
from .errors import MudError, NoWitness, ParseError
from .formats import format_setparity, format_symindex, parse_dfa, parse_ints, parse_setparity, parse_symindex, parse_tokens
from .model import eval_stream
from .separations import eq_reduction, setparity_exact, symmetric_index_gen
from .trees import balanced, eval_parallel, left_deep, random_tree

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_EVAL = 3

ALGORITHMS = ("span", "sumsq", "l2", "minwise", "setparity", "symindex", "f2")
TREES = {"left-deep": lambda n, seed: left_deep(n), "balanced": lambda n, seed: balanced(n), "random": random_tree}


class UsageError(Exception):
    pass


def _report(**items) -> None:
    for k, v in items.items():
        print(f"{k}={v}")


def _metrics(m) -> dict:
    return dict(
        max_message_bits=m.max_message_bits,
        n_leaves=m.n_leaves,
        tree_depth=m.tree_depth,
        aggregate_calls=m.aggregate_calls,
    )


def _build_tree(args, n):
    return TREES[args.tree](n, args.seed)


def cmd_run(args) -> int:
    text = Path(args.input).read_text()
    name = args.algorithm
    if name == "symindex":
        records = parse_symindex(text)
        if len(records) % 2:
            raise UsageError("a SymmetricIndex instance has an even number of records")
        n = len(records) // 2
        alg.validate_symindex(records, n)
        order = _build_tree(args, len(records)).leaf_perm
        out, m = eval_stream(alg.symmetric_index_stream(n), [records[j] for j in order])
        _report(algorithm=name, output=out, **_metrics(m))
        return 0

    if name == "setparity":
        inputs = parse_setparity(text)
        n = args.n or max([len(inputs)] + [i + 1 for i, _ in inputs])
        spec = alg.setparity_mud(n, args.copies, seed=args.seed)
    else:
        inputs = parse_ints(text)
        spec = {
            "span": alg.span_mud,
            "sumsq": alg.sum_squares_mud,
            "l2": alg.l2_mud,
            "minwise": lambda: alg.minwise_sample_mud(args.seed),
            "f2": lambda: alg.f2_sketch_mud(args.width, seed=args.seed),
        }[name]()
    if not inputs:
        raise UsageError("input file holds no items")
    out, m = eval_parallel(spec, _build_tree(args, len(inputs)), inputs, args.workers)
    if name == "minwise":
        _report(algorithm=name, output=out.item, count=out.count, **_metrics(m))
    else:
        _report(algorithm=name, output=out, **_metrics(m))
    return 0


def cmd_simulate(args) -> int:
    from .simulator import mud_from_stream

    dfa = parse_dfa(Path(args.dfa).read_text())
    tokens = parse_tokens(Path(args.input).read_text())
    known = set(dfa.alphabet)
    for lineno, tok in tokens:
        if tok not in known:
            raise ParseError(f"symbol {tok!r} is not in the DFA alphabet", lineno)
    word = [tok for _, tok in tokens]
    if len(word) != dfa.n:
        raise UsageError(f"input has {len(word)} symbols but the DFA is defined for n={dfa.n}")
    tree = _build_tree(args, dfa.n)
    stream_out, _ = eval_stream(dfa.stream_spec(), word)
    try:
        mud_out, m = eval_parallel(mud_from_stream(dfa), tree, word, args.workers)
    except NoWitness as exc:
        print(f"error: no witness at node {exc.node}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    match = mud_out == stream_out
    _report(
        mud_output=mud_out,
        stream_output=stream_out,
        **_metrics(m),
        result="MATCH" if match else "MISMATCH",
    )
    return 0 if match else EXIT_FAIL


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "invariance":
        res = verify.invariance(trials=args.trials, seed=args.seed)
    elif suite == "simulator-oracle":
        res = verify.simulator_oracle(count=args.count, max_n=args.max_n, seed=args.seed)
    elif suite == "bias":
        res = verify.bias(args.n, args.m, args.epsilon)
    elif suite == "setparity-error":
        res = verify.setparity_error(runs=args.runs, copies=args.copies, n=args.n, seed=args.seed)
    else:
        res = verify.reductions(max_n=args.max_n, random_pairs=args.pairs, seed=args.seed)
    print("\n".join(res.lines()))
    return 0 if res.passed else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.kind == "setparity-eq":
        if args.x is None or args.y is None:
            raise UsageError("setparity-eq needs --x and --y")
        if set(args.x + args.y) - {"0", "1"}:
            raise UsageError("--x and --y must be bit strings")
        s_a, s_b = eq_reduction(args.x, args.y)
        text = format_setparity(s_a + s_b)
        answer = setparity_exact(s_a + s_b, len(args.x))
    else:
        if args.n is None or args.n < 1:
            raise UsageError("symindex needs --n >= 1")
        records, answer = symmetric_index_gen(args.n, args.seed)
        text = format_symindex(records)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"answer={answer}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mudsim", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_flags(p):
        p.add_argument("--tree", choices=sorted(TREES), default="left-deep")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("run", help="run a library algorithm on an input file")
    p.add_argument("algorithm", choices=ALGORITHMS)
    p.add_argument("input")
    tree_flags(p)
    p.add_argument("--copies", type=int, default=alg.DEFAULT_COPIES)
    p.add_argument("--n", type=int, default=None, help="SetParity index range")
    p.add_argument("--width", type=int, default=alg.DEFAULT_F2_WIDTH, help="F2 counters")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("simulate", help="compile a DFA file to a mud algorithm and compare")
    p.add_argument("dfa")
    p.add_argument("input")
    tree_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--count", type=int, default=20, help="random DFAs")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--copies", type=int, default=alg.DEFAULT_COPIES)
    p.add_argument("--pairs", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write an instance file; ground truth goes to stderr")
    p.add_argument("kind", choices=("setparity-eq", "symindex"))
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


_VERIFY_DEFAULTS = {
    "simulator-oracle": {"max_n": 6},
    "bias": {"n": 6, "m": 6},
    "setparity-error": {"n": 64},
    "reductions": {"max_n": 5},
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        for key, value in _VERIFY_DEFAULTS.get(args.suite, {}).items():
            if getattr(args, key) is None:
                setattr(args, key, value)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MudError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
