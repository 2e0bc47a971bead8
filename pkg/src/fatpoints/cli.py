"""Command line entry point: ``fatpoints analyze|verify-identities|sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .core import InvalidInputError
from .harness import (
    SpecSyntaxError,
    SweepConfig,
    analyze,
    parse_system_spec,
    run_sweep,
    verify_identities,
)
from .oracle import DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS


def _oracle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field characteristic (default 2^31-1)")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="random point configurations")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="Dimensions and speciality of linear systems of surfaces in P^3 through fat points.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one system, e.g. '4 2^9'")
    a.add_argument("spec", nargs="+", help="degree followed by multiplicities; k^j repeats k j times")
    a.add_argument("--no-oracle", action="store_true", help="skip the finite-field rank computation")
    a.add_argument("--json", action="store_true", help="print the record as one JSON line")
    _oracle_flags(a)

    v = sub.add_parser("verify-identities", help="run the exact identity suites")
    v.add_argument("--count", type=int, default=None, help="samples per suite (default 1000/500/500)")
    v.add_argument("--seed", type=int, default=1)

    s = sub.add_parser("sweep", help="compare predictions with the oracle over a parameter box")
    s.add_argument("--max-degree", type=int, default=10)
    s.add_argument("--max-mult", type=int, default=5)
    s.add_argument("--max-points", type=int, default=10)
    s.add_argument("--out", default="sweep.jsonl")
    s.add_argument("--resume", action="store_true", help="skip systems already in --out")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    _oracle_flags(s)
    return parser


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        L = parse_system_spec(" ".join(args.spec))
    except SpecSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        rep = analyze(
            L, run_oracle=not args.no_oracle, prime=args.prime, trials=args.trials, seed=args.seed
        )
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep.to_record(), separators=(",", ":")))
    else:
        print(rep.render())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    counts = (1000, 500, 500) if args.count is None else (args.count,) * 3
    t0 = time.perf_counter()
    results = verify_identities(*counts, seed=args.seed)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name}: {res.count - len(res.failures)}/{res.count}")
        for f in res.failures[:10]:
            print(f"      {f}")
    print(f"elapsed {time.perf_counter() - t0:.2f}s")
    return 0 if all(r.passed for r in results) else 1


def cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        args.max_degree, args.max_mult, args.max_points, args.prime, args.trials, args.seed
    )
    try:
        summary = run_sweep(config, args.out, resume=args.resume, jobs=args.jobs)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    print(json.dumps({"config": config.hash, **summary.to_dict()}, indent=2))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    handler = {"analyze": cmd_analyze, "verify-identities": cmd_verify, "sweep": cmd_sweep}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
