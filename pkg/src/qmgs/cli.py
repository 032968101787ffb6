"""Command-line interface.

Exit codes: 0 success / Certified / MGS found, 1 negative result (no MGS
found in an exhausted search, ViolationFound, failed check), 2 Inconclusive
or a limit was hit, 3 input error. Vertices are 1-based on the command line
and in all output.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .catalog import get_quiver, list_quivers, read_matrix, serialize_matrix
from .errors import QMGSError
from .green import search_mgs
from .matrix import ExchangeMatrix, enumerate_mutation_class
from .obstruction import DEFAULT_MAX_STATES, Outcome, certify_no_mgs, find_positive_radical
from .seed import YSeed, initial_seed, mutate_seed
from .selfcheck import run_checks

EXIT_OK, EXIT_NEGATIVE, EXIT_LIMIT, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load(args) -> ExchangeMatrix:
    if args.file:
        return read_matrix(args.file)
    return get_quiver(args.quiver)


def _vertices(seq: list[int], n: int) -> list[int]:
    for v in seq:
        if not 1 <= v <= n:
            raise InputError(f"vertex {v} out of range 1..{n}")
    return [v - 1 for v in seq]


def trace_line(step: int, vertex: int | None, seed: YSeed) -> str:
    """``step vertex colors c_1 ... c_n``; vertex is ``-`` for the initial seed."""
    v = "-" if vertex is None else str(vertex + 1)
    rows = " ".join(",".join(map(str, c)) for c in seed.c)
    return f"{step} {v} {seed.colors()} {rows}"


def cmd_mutate(args, out) -> int:
    B = _load(args)
    seq = _vertices(args.sequence or [], B.n)
    seed = initial_seed(B)
    print(trace_line(0, None, seed), file=out)
    for step, k in enumerate(seq, start=1):
        seed = mutate_seed(seed, k)
        print(trace_line(step, k, seed), file=out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    B = _load(args)
    res = search_mgs(B, args.max_len, args.mode, memo=not args.no_memo)
    for s in res.found:
        print(",".join(str(k + 1) for k in s), file=out)
    print(f"exhausted: {'true' if res.exhausted else 'false'}", file=out)
    print(f"nodes expanded: {res.nodes}, memo hits: {res.memo_hits}", file=sys.stderr)
    for msg in res.errors + res.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    if res.found:
        return EXIT_OK
    return EXIT_NEGATIVE if res.exhausted else EXIT_LIMIT


def _default_max_states() -> int:
    env = os.environ.get("QMGS_MAX_STATES")
    if env is None:
        return DEFAULT_MAX_STATES
    try:
        return int(env)
    except ValueError:
        raise InputError(f"QMGS_MAX_STATES must be an integer, got {env!r}") from None


def cmd_certify(args, out) -> int:
    B = _load(args)
    if args.vector is not None:
        u0 = args.vector
    else:
        u0 = find_positive_radical(B)
        if u0 is None:
            raise InputError("no strictly positive radical vector found; pass one with --vector")
    max_states = args.max_states if args.max_states is not None else _default_max_states()
    cert = certify_no_mgs(B, u0, max_states)
    out.write(cert.to_text())
    return {Outcome.CERTIFIED: EXIT_OK, Outcome.VIOLATION_FOUND: EXIT_NEGATIVE}.get(cert.outcome, EXIT_LIMIT)


def cmd_class(args, out) -> int:
    B = _load(args)
    members, truncated = enumerate_mutation_class(B, args.max_size)
    print(f"class_size: {len(members)}", file=out)
    print(f"truncated: {'true' if truncated else 'false'}", file=out)
    for idx, M in enumerate(sorted(members, key=lambda M: M.flat()), start=1):
        print(f"class {idx}", file=out)
        out.write(serialize_matrix(M))
    return EXIT_LIMIT if truncated else EXIT_OK


def cmd_list(args, out) -> int:
    for q in list_quivers():
        print(f"{q.name}\t{q.B.n}\t{q.notes}", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    B = _load(args)
    results = run_checks(B, walks=args.walks, walk_len=args.walk_len, rng_seed=args.seed)
    for r in results:
        print(r.line(), file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmgs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("-f", "--file", help="matrix in text format")
        src.add_argument("-q", "--quiver", help="catalog name (see `qmgs list`)")
        return p

    p = with_input(sub.add_parser("mutate", help="print the Y-seed trace along a mutation sequence"))
    p.add_argument("-s", "--sequence", type=_int_list, help="comma-separated vertices, e.g. 2,1")
    p.set_defaults(func=cmd_mutate)

    p = with_input(sub.add_parser("search", help="search for maximal green sequences"))
    p.add_argument("--max-len", type=int, default=None, help="depth bound (default 2n)")
    p.add_argument("--mode", choices=("all", "first"), default="all")
    p.add_argument("--no-memo", action="store_true", help="re-expand repeated seeds")
    p.set_defaults(func=cmd_search)

    p = with_input(sub.add_parser("certify", help="radical-vector certificate of non-existence"))
    p.add_argument("--vector", type=_int_list, default=None, help="positive radical vector a1,...,an")
    p.add_argument("--max-states", type=int, default=None, help=f"state limit (default {DEFAULT_MAX_STATES})")
    p.set_defaults(func=cmd_certify)

    p = with_input(sub.add_parser("class", help="enumerate the mutation class up to isomorphism"))
    p.add_argument("--max-size", type=int, default=1000)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("list", help="list catalog quivers")
    p.set_defaults(func=cmd_list)

    p = with_input(sub.add_parser("check", help="run the invariant self-test on a matrix"))
    p.add_argument("--walks", type=int, default=100)
    p.add_argument("--walk-len", type=int, default=12)
    p.add_argument("--seed", type=int, default=0, help="random seed for the walks")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, QMGSError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
