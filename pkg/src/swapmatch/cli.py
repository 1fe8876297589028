"""Command-line front end.

Subcommands: ``match`` (search a text), ``verify`` (differential fuzzing),
``bench`` (timing harness), ``gen`` (random text generation) and ``masks``
(preprocessing table inspection).  Exit codes: 0 on success, 1 when
verification found discrepancies, 2 on usage or I/O errors.  All
diagnostics go to stderr; texts are treated as raw bytes throughout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from . import verify as verify_mod
from .engines import ALGORITHMS, search_once
from .masks import dump_masks

_IMPLS = ("auto", "compiled", "python")


def _impl_arg(value: str) -> str | None:
    return None if value == "auto" else value


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        value = int(text)
        return value, value
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a range (MIN..MAX): {text!r}")


def _read_pattern(args) -> bytes:
    if args.pattern_file is not None:
        data = Path(args.pattern_file).read_bytes()
    else:
        try:
            data = args.pattern.encode("latin-1")
        except UnicodeEncodeError:
            raise ValueError("pattern strings must be latin-1; use --pattern-file "
                             "for arbitrary bytes")
    if not data:
        raise ValueError("pattern must not be empty")
    return data


def _read_text(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapmatch",
        description="Pattern matching with swaps of adjacent characters.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="report swap-match end positions")
    p_match.add_argument("--algo", choices=ALGORITHMS, required=True)
    group = p_match.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern", help="pattern as a latin-1 string")
    group.add_argument("--pattern-file", help="pattern as a raw byte file")
    p_match.add_argument("--text", default="-",
                         help="text file, or - for standard input (default)")
    p_match.add_argument("--format", choices=("plain", "json"), default="plain")
    p_match.add_argument("--impl", choices=_IMPLS, default="auto")

    p_verify = sub.add_parser("verify", help="differential testing vs the oracle")
    p_verify.add_argument("--seeds", type=int, required=True,
                          help="number of instances to check")
    p_verify.add_argument("--seed", type=int, default=0, help="base seed")
    p_verify.add_argument("--sigma", type=_parse_int_list, default=[2, 4],
                          help="comma-separated alphabet sizes")
    p_verify.add_argument("--m", type=_parse_range, default=(1, 8),
                          metavar="MIN..MAX", help="pattern length range")
    p_verify.add_argument("--n", type=_parse_range, default=(1, 64),
                          metavar="MIN..MAX", help="text length range")
    p_verify.add_argument("--plant", type=float, default=0.5,
                          help="fraction of instances with a planted match")
    p_verify.add_argument("--max-examples", type=int, default=5)
    p_verify.add_argument("--impl", choices=_IMPLS, default="auto")
    p_verify.add_argument("--self-test-break", action="store_true",
                          help=argparse.SUPPRESS)

    p_bench = sub.add_parser("bench", help="timing harness (CSV on stdout)")
    p_bench.add_argument("--sigma", type=_parse_int_list, default=[4],
                         help="alphabet sizes for generated problems")
    p_bench.add_argument("--m", type=_parse_int_list,
                         default=list(bench_mod.DEFAULT_PATTERN_LENGTHS),
                         help="pattern lengths")
    p_bench.add_argument("--text-size", type=int,
                         default=bench_mod.DEFAULT_TEXT_SIZE)
    p_bench.add_argument("--patterns", type=int,
                         default=bench_mod.DEFAULT_PATTERNS_PER_LENGTH)
    p_bench.add_argument("--algos", default="smalgo1,smalgo2,dp",
                         help="comma-separated algorithm names")
    p_bench.add_argument("--corpus", action="append", default=[],
                         help="benchmark a corpus file (repeatable)")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--impl", choices=_IMPLS, default="auto")

    p_gen = sub.add_parser("gen", help="write a deterministic random text")
    p_gen.add_argument("--sigma", type=int, required=True)
    p_gen.add_argument("--size", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)

    p_masks = sub.add_parser("masks", help="dump preprocessing tables")
    group = p_masks.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern", help="pattern as a latin-1 string")
    group.add_argument("--pattern-file", help="pattern as a raw byte file")
    p_masks.add_argument("--which", default="all",
                         choices=("d", "p3", "p2", "up", "down", "middle", "all"))
    return parser


def _cmd_match(args) -> int:
    pattern = _read_pattern(args)
    text = _read_text(args.text)
    matches = search_once(args.algo, pattern, text, _impl_arg(args.impl))
    if args.format == "json":
        print(json.dumps({"pattern_len": len(pattern), "matches": matches}))
    else:
        for e in matches:
            print(e)
    return 0


def _cmd_verify(args) -> int:
    if args.seeds < 0:
        print("swapmatch verify: --seeds must be >= 0", file=sys.stderr)
        return 2
    engine_names = verify_mod.DEFAULT_ENGINES
    if args.self_test_break:
        engine_names = engine_names + ("broken",)
    try:
        summary = verify_mod.run_verification(
            seed=args.seed,
            sigmas=tuple(args.sigma),
            m_range=args.m,
            n_range=args.n,
            plant_rate=args.plant,
            count=args.seeds,
            impl=_impl_arg(args.impl),
            engine_names=engine_names,
            max_examples=args.max_examples,
        )
    except ValueError as exc:
        print(f"swapmatch verify: {exc}", file=sys.stderr)
        return 2
    for example in summary.examples:
        print(verify_mod.format_report(example))
        print()
    print(f"checked={summary.checked} discrepancies={summary.discrepancies}")
    return 0 if summary.ok else 1


def _cmd_bench(args) -> int:
    problems = []
    report_errors = []
    for sigma in args.sigma:
        problems.append(bench_mod.BenchProblem.random(
            sigma, args.text_size, args.seed,
            pattern_lengths=tuple(args.m), patterns_per_length=args.patterns))
    for path in args.corpus:
        try:
            problems.append(bench_mod.BenchProblem.from_file(
                path, pattern_lengths=tuple(args.m),
                patterns_per_length=args.patterns, seed=args.seed))
        except OSError as exc:
            report_errors.append(f"corpus {path}: {exc}")
    algos = tuple(a for a in args.algos.split(",") if a)
    report = bench_mod.run_bench(problems, algos, repetitions=args.reps,
                                 impl=_impl_arg(args.impl))
    report.errors.extend(report_errors)
    sys.stdout.write(report.to_csv())
    sys.stderr.write(report.to_table())
    return 0


def _cmd_gen(args) -> int:
    data = bench_mod.gen_random_text(args.sigma, args.size, args.seed)
    Path(args.out).write_bytes(data)
    return 0


def _cmd_masks(args) -> int:
    pattern = _read_pattern(args)
    sys.stdout.write(dump_masks(pattern, args.which))
    return 0


_COMMANDS = {
    "match": _cmd_match,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
    "masks": _cmd_masks,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"swapmatch {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
