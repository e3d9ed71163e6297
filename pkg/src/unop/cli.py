"""Command-line entry point: ``unop {unadd,unmul,verify,bench}``.

Exit codes: 0 success, 1 oracle mismatch or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import resource
import sys
import time
import tracemalloc
from typing import Any, Callable, Optional

from . import verify
from .oracle import factor_pairs_oracle, unadd_oracle
from .qsim import BACKENDS, run
from .unadd import build_rcu, unadd
from .unmult import build_unmultiplier, unmultiply

log = logging.getLogger("unop")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
BENCH_DENSE_MAX_WIRES = 24


class UsageError(Exception):
    pass


def _check_seed(seed: int) -> None:
    if not 0 <= seed < (1 << 64):
        raise UsageError("--seed must be an unsigned 64-bit integer")


def _check_run_args(args, limit_bits: int) -> None:
    if args.bits < 1:
        raise UsageError("--bits must be >= 1")
    if not 0 <= args.value < (1 << limit_bits):
        raise UsageError(
            f"--value {args.value} out of range [0, 2^{limit_bits}) for --bits {args.bits}"
        )
    if args.mode == "sample" and args.shots < 1:
        raise UsageError("--shots must be >= 1 in sample mode")
    _check_seed(args.seed)


def _config(args, *keys: str) -> dict:
    return {k: getattr(args, k) for k in keys}


def cmd_unadd(args) -> tuple[dict, int]:
    _check_run_args(args, args.bits)
    N = args.value
    res = unadd(
        N, args.bits, args.mode,
        shots=args.shots if args.mode == "sample" else None,
        seed=args.seed, backend=args.backend,
    )
    oracle = unadd_oracle(N, args.bits)
    verdict = "match" if res.as_set() == oracle else "mismatch"
    results: dict[str, Any] = {
        "cardinality": len(res.triples),
        "expected_cardinality": 2 * N + 1 if N >= 1 else 1,
        "fields": ["a", "b", "c_in"],
        "weight": "probability" if args.mode == "exact" else "count",
    }
    if not args.summary:
        results["triples"] = [list(t) for t in res.triples]
        results["weights"] = [res.weights[t] for t in res.triples]
    report = {
        "command": "unadd",
        "config": _config(args, "bits", "value", "mode", "shots", "seed", "backend"),
        "results": results,
        "oracle_verdict": verdict,
        "post_selection_probability": None,
    }
    return report, EXIT_OK if verdict == "match" else EXIT_MISMATCH


def cmd_unmul(args) -> tuple[dict, int]:
    _check_run_args(args, 2 * args.bits)
    p = args.value
    res = unmultiply(
        p, args.bits, args.mode,
        shots=args.shots if args.mode == "sample" else None,
        seed=args.seed, backend=args.backend,
    )
    oracle = factor_pairs_oracle(p, args.bits)
    if p >= 1:
        check = "equality"
        ok = res.as_set() == oracle
    else:
        # pairs (0, y != 0) are unreachable for p = 0, so only soundness is checked
        check = "soundness"
        ok = all(x * y == p for x, y in res.pairs)
    results: dict[str, Any] = {
        "fields": ["x", "y"],
        "weight": "probability" if args.mode == "exact" else "count",
        "pairs": [list(pr) for pr in res.pairs],
        "weights": [res.weights[pr] for pr in res.pairs],
        "rejections": res.rejections,
        "oracle_check": check,
        "oracle_pairs": [list(pr) for pr in sorted(oracle)],
    }
    report = {
        "command": "unmul",
        "config": _config(args, "bits", "value", "mode", "shots", "seed", "backend"),
        "results": results,
        "oracle_verdict": "match" if ok else "mismatch",
        "post_selection_probability": res.post_selection_probability,
    }
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> tuple[dict, int]:
    if args.shots is not None and args.shots < 1:
        raise UsageError("--shots must be >= 1")
    _check_seed(args.seed)
    checks = verify.run_checks(shots=args.shots, seed=args.seed)
    ok = all(c.passed for c in checks)
    report = {
        "command": "verify",
        "config": _config(args, "shots", "seed"),
        "results": {
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
            ],
            "passed": sum(c.passed for c in checks),
            "total": len(checks),
        },
        "oracle_verdict": "match" if ok else "mismatch",
        "post_selection_probability": None,
    }
    return report, EXIT_OK if ok else EXIT_MISMATCH


def _measure(fn: Callable[[], Any]) -> tuple[Any, float, float]:
    tracemalloc.start()
    t0 = time.perf_counter()
    out = fn()
    wall = (time.perf_counter() - t0) * 1e3
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    return out, wall, peak / 2**20


def cmd_bench(args) -> tuple[dict, int]:
    if not 1 <= args.min_bits <= args.max_bits:
        raise UsageError("need 1 <= --min-bits <= --max-bits")
    backends = BACKENDS if args.backend == "both" else (args.backend,)
    rows = []
    for n in range(args.min_bits, args.max_bits + 1):
        if args.circuit == "rcu":
            value = (1 << n) - 1
            circuit = build_rcu(n, value)
        else:
            value = (1 << (2 * n)) - 1 if args.value is None else args.value
            if not 0 <= value < (1 << (2 * n)):
                raise UsageError(f"--value {value} out of range for {n} bits")
            circuit, _ = build_unmultiplier(n, value)
        for backend in backends:
            row = {
                "circuit": args.circuit, "bits": n, "value": value,
                "backend": backend, "wires": circuit.num_wires,
            }
            if backend == "dense" and circuit.num_wires > BENCH_DENSE_MAX_WIRES:
                row.update(support=None, wall_ms=None, peak_mb=None, skipped=True)
            else:
                state, wall, peak = _measure(lambda: run(circuit, backend))
                row.update(
                    support=int(state.nonzero(1e-10)[0].size),
                    wall_ms=round(wall, 3), peak_mb=round(peak, 3), skipped=False,
                )
            log.info("bench %s", row)
            rows.append(row)
    report = {
        "command": "bench",
        "config": _config(args, "circuit", "min_bits", "max_bits", "backend"),
        "results": {
            "rows": rows,
            "max_rss_mb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024,
        },
        "oracle_verdict": None,
        "post_selection_probability": None,
    }
    return report, EXIT_OK


def _table_rows(report: dict) -> tuple[list[str], list[list]]:
    cmd, res = report["command"], report["results"]
    if cmd == "unadd":
        header = ["a", "b", "c_in", res["weight"]]
        rows = [t + [w] for t, w in zip(res.get("triples", []), res.get("weights", []))]
    elif cmd == "unmul":
        header = ["x", "y", res["weight"]]
        rows = [pr + [w] for pr, w in zip(res["pairs"], res["weights"])]
    elif cmd == "verify":
        header = ["check", "passed", "detail"]
        rows = [[c["name"], c["passed"], c["detail"]] for c in res["checks"]]
    else:
        header = ["circuit", "bits", "value", "backend", "wires", "support", "wall_ms", "peak_mb"]
        rows = [[r[h] for h in header] for r in res["rows"]]
    return header, rows


def _summary_lines(report: dict) -> list[str]:
    res = report["results"]
    lines = []
    if report["oracle_verdict"] is not None:
        lines.append(f"oracle_verdict: {report['oracle_verdict']}")
    if "cardinality" in res:
        lines.append(
            f"cardinality: {res['cardinality']} (expected {res['expected_cardinality']})"
        )
    if report["post_selection_probability"] is not None:
        lines.append(f"post_selection_probability: {report['post_selection_probability']}")
    if "rejections" in res:
        lines.append(
            "rejections: " + ", ".join(f"{k}={v}" for k, v in res["rejections"].items())
        )
    if report.get("timing_ms") is not None:
        lines.append(f"timing_ms: {report['timing_ms']}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True) + "\n"
    header, rows = _table_rows(report)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    cells = [header] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(str(row[i])) for row in cells) for i in range(len(header))]
    out = ["  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    out.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(out + [""] + _summary_lines(report)) + "\n"


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "sample"), default="exact")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=BACKENDS, default="sparse")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument(
        "--timing", action="store_true",
        help="fill timing_ms (off by default so seeded runs are byte-identical)",
    )
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="unop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unadd", parents=[common], help="all (a, b, c_in) with a + b + c_in = value")
    _add_run_flags(p)
    p.add_argument("--summary", action="store_true", help="omit the triple list")
    p.set_defaults(func=cmd_unadd)

    p = sub.add_parser("unmul", parents=[common], help="all factor pairs (x, y) with x * y = value")
    _add_run_flags(p)
    p.set_defaults(func=cmd_unmul)

    p = sub.add_parser("verify", parents=[common], help="full-unadder self-checks")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="wall time and memory per (bits, backend)")
    p.add_argument("--circuit", choices=("rcu", "unmult"), default="rcu")
    p.add_argument("--min-bits", type=int, default=1)
    p.add_argument("--max-bits", type=int, default=10)
    p.add_argument("--value", type=int, default=None, help="unmult product (default 2^(2n)-1)")
    p.add_argument("--backend", choices=BACKENDS + ("both",), default="both")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    t0 = time.perf_counter()
    try:
        report, status = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"unop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["timing_ms"] = round((time.perf_counter() - t0) * 1e3, 3) if args.timing else None
    if args.format != "json" and report["oracle_verdict"] is not None:
        print(f"oracle_verdict: {report['oracle_verdict']}", file=sys.stderr)
    sys.stdout.write(render(report, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
