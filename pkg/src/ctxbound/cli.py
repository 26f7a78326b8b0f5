"""``ctxbound`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 budget exhausted before a conclusive answer.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io as cio
from .bounds import bound_report, format_table
from .contextuality import ncva_exists
from .partition import (
    MODES,
    PartitionError,
    certify_disjoint,
    check_certificate,
    is_partitioning,
    max_overlap_set_search,
)
from .pauli import PauliError, parse
from .tableau import StabilizerError, enumerate_states
from .verify import run_fixtures

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
WORKERS_ENV = "CTXBOUND_WORKERS"


class UsageError(Exception):
    pass


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    states = enumerate_states(args.n)
    if args.count_only:
        _emit(cio.dumps({"n": args.n, "count": len(states)}), args.out)
    else:
        _emit(cio.dumps([s.to_json() for s in states]), args.out)
    print(f"{len(states)} states", file=sys.stderr)
    return EXIT_OK


def cmd_partition_check(args) -> int:
    s = cio.state_set_from_json(cio.read_json(args.states))
    o = parse(args.observable)
    if o.n != s.n:
        raise UsageError(f"observable acts on {o.n} qubits, state set on {s.n}")
    if len(s) < 2:
        raise UsageError("partition-check needs at least two distinct states")
    v = is_partitioning(s, o, args.mode)
    _emit(cio.dumps(cio.verdict_to_json(v)), args.out)
    return EXIT_OK


def cmd_max_set(args) -> int:
    n3 = args.n == 3
    r = max_overlap_set_search(
        args.n,
        args.mode,
        allow_nonexhaustive=n3,
        node_budget=args.node_budget if n3 else None,
        time_budget=args.time_budget if n3 else None,
        workers=args.workers,
    )
    if args.witness_dir:
        d = Path(args.witness_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, w in enumerate(r.witnesses):
            (d / f"witness_{i:05d}.json").write_text(cio.dumps(w.to_json()))
    _emit(cio.dumps(cio.search_to_json(r, args.max_witnesses)), args.out)
    if not r.exhaustive and n3:
        print(f"budget exhausted: m >= {r.m} (non-exhaustive)", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.check:
        s, cert, mode = cio.load_certificate_document(cio.read_json(args.check))
        ok = cert is not None and check_certificate(s, cert, mode)
        print("certificate accepted" if ok else "certificate REJECTED", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    if not args.states:
        raise UsageError("certify needs a state set file or --check CERT")
    s = cio.state_set_from_json(cio.read_json(args.states))
    cert = certify_disjoint(s, args.depth, args.mode)
    _emit(cio.dumps(cio.certificate_document(s, cert, args.mode, args.depth)), args.out)
    if cert is None:
        print(f"no certificate within depth budget {args.depth}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_ncva(args) -> int:
    obs = cio.observables_from_json(cio.read_json(args.observables))
    if len({o.n for o in obs}) > 1:
        raise UsageError("observables act on different numbers of qubits")
    _emit(cio.dumps(cio.ncva_to_json(obs, ncva_exists(obs))), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    rows = bound_report(range(2, args.n_max + 1))
    if args.format == "json":
        _emit(cio.dumps(cio.bound_rows_to_json(rows)), args.out)
    else:
        _emit(format_table(rows) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_fixtures(args.seed)
    doc = {"schema": cio.SCHEMA, "kind": "verify", "seed": args.seed, "checks": [c.to_json() for c in checks]}
    _emit(cio.dumps(doc), args.out)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}", file=sys.stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctxbound", description="Stabilizer contextuality and simulation-memory bounds.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=_default_workers(),
                        help=f"worker processes (default from ${WORKERS_ENV}, else 1)")
    common.add_argument("--mode", choices=MODES, default="literal")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list all n-qubit stabilizer states")
    e.add_argument("n", type=int)
    e.add_argument("--count-only", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    pc = sub.add_parser("partition-check", parents=[common], help="is an observable partitioning for a state set")
    pc.add_argument("states", help="state-set JSON file ('-' for stdin)")
    pc.add_argument("observable", help='e.g. "+YY"')
    pc.set_defaults(func=cmd_partition_check)

    m = sub.add_parser("max-set", parents=[common], help="largest state set with no partitioning measurement")
    m.add_argument("n", type=int)
    m.add_argument("--node-budget", type=int, default=200_000)
    m.add_argument("--time-budget", type=float, default=60.0, help="seconds (n=3 only)")
    m.add_argument("--witness-dir", help="write every maximum witness as a state-set file")
    m.add_argument("--max-witnesses", type=int, default=10, help="witnesses listed in the summary")
    m.set_defaults(func=cmd_max_set)

    c = sub.add_parser("certify", parents=[common], help="disjoint-support certificate for a state set")
    c.add_argument("states", nargs="?")
    c.add_argument("--depth", type=int, default=2)
    c.add_argument("--check", metavar="CERT", help="re-verify a certificate file instead")
    c.set_defaults(func=cmd_certify)

    nc = sub.add_parser("ncva", parents=[common], help="non-contextual value assignment for observables")
    nc.add_argument("observables", help="JSON array of observable strings")
    nc.set_defaults(func=cmd_ncva)

    b = sub.add_parser("bounds", parents=[common], help="memory lower bound vs Gottesman-Knill")
    b.add_argument("--n-max", type=int, default=10)
    b.add_argument("--format", choices=("json", "table"), default="table")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run the built-in fixture suite")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, cio.SchemaError, PauliError, StabilizerError, PartitionError, ValueError, OSError) as e:
        print(f"ctxbound {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
