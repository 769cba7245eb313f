"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    GENERATOR_METHODS,
    InstanceSpec,
    derive_seed,
    emit,
    gen_random_graph,
    metadata,
    run_experiment,
)
from .cover import extract_matching, min_weight_cover
from .decomposition import SolveMode, solve_weight
from .errors import InternalCheckFailed, MatchingError
from .graph import parse_graph, serialize_graph
from .oracle import oracle_mwm

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_range(text: str, parts: int) -> list[int]:
    try:
        vals = [int(x) for x in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by ':', got {text!r}") from None
    if len(vals) != parts:
        raise argparse.ArgumentTypeError(f"expected {parts} fields in {text!r}")
    return vals


def _n_range(text: str) -> range:
    a, b = _int_range(text, 2)
    return range(a, b + 1)


def _weight_range(text: str) -> range:
    a, b, step = _int_range(text, 3)
    if step < 1:
        raise argparse.ArgumentTypeError("STEP must be positive")
    return range(a, b + 1, step)


def _load(path: str):
    with open(path) as fh:
        return parse_graph(fh)


def cmd_solve(args) -> int:
    g = _load(args.input)
    weight, trace = solve_weight(g, args.mode)
    print(f"weight {weight}")
    print(f"p {trace.p}")
    print(f"w_prime {trace.w_prime}")
    if args.trace:
        Path(args.trace).write_text(trace.to_json(indent=1) + "\n")
    return EXIT_OK


def cmd_cover(args) -> int:
    g = _load(args.input)
    cover = min_weight_cover(g)
    print(f"cover_weight {cover.weight}")
    text = json.dumps(cover.to_dict()) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_match(args) -> int:
    g = _load(args.input)
    m = extract_matching(g, min_weight_cover(g))
    for u, v in m.pairs():
        print(f"m {u + 1} {v + 1} {g.weight(u, v)}")
    print(f"weight {m.weight(g)}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load(args.input)
    weight, _ = oracle_mwm(g)
    print(f"weight {weight}")
    return EXIT_OK


def cmd_gen(args) -> int:
    g = gen_random_graph(InstanceSpec(args.n, args.weight, args.seed), args.method)
    text = f"c generator={args.method} seed={args.seed}\n" + serialize_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    ns = args.n_range if args.n_range is not None else [args.n]
    weights = args.weight_range if args.weight_range is not None else [args.weight]
    modes = [m.value for m in SolveMode] if args.modes == "both" else [args.modes]
    if args.repeats == 1:
        # independent instance per cell; the emitted seed reproduces it via `gen`
        specs = [InstanceSpec(n, w, derive_seed(args.seed, n, w, 0)) for n in ns for w in weights]
    else:
        specs = [InstanceSpec(n, w, args.seed) for n in ns for w in weights]
    rows = run_experiment(specs, modes, args.repeats, average=args.average,
                          method=args.method, jobs=args.jobs)
    text = emit(rows, args.format)
    if args.out:
        Path(args.out).write_text(text)
        meta = metadata(args.method, base_seed=args.seed, repeats=args.repeats, average=args.average)
        Path(args.out + ".meta.json").write_text(json.dumps(meta, indent=1) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mwbm", description="Maximum weight bipartite matching by decomposition.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="weight of a maximum weight matching")
    s.add_argument("--input", required=True)
    s.add_argument("--mode", choices=[m.value for m in SolveMode], default="modified")
    s.add_argument("--trace", help="write the iteration trace as JSON")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("cover", help="minimum weight cover")
    s.add_argument("--input", required=True)
    s.add_argument("--out", help="write the cover as JSON (default: stdout)")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("match", help="a maximum weight matching")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_match)

    s = sub.add_parser("oracle", help="brute-force weight (small graphs only)")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="write a random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--method", choices=GENERATOR_METHODS, default="assign")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="iteration/time comparison of the two modes")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--n-range", type=_n_range, metavar="A:B")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight", type=int)
    g.add_argument("--weight-range", type=_weight_range, metavar="A:B:STEP")
    s.add_argument("--repeats", type=int, default=1)
    s.add_argument("--average", action="store_true", help="one mean row per (n, W, mode)")
    s.add_argument("--modes", choices=["both", "modified", "baseline"], default="both")
    s.add_argument("--format", choices=["csv", "json", "tsv"], default="csv")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--method", choices=GENERATOR_METHODS, default="assign")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InternalCheckFailed, AssertionError) as exc:
        print(f"mwbm: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (MatchingError, ValueError, OSError) as exc:
        print(f"mwbm: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
