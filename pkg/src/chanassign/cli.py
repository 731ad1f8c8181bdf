"""Command-line front end.

Every subcommand except ``gen`` and ``bench`` prints one JSON object on
stdout; diagnostics go to stderr.  Exit codes: 0 success / SAT / proper,
1 UNSAT / improper, 2 usage, 3 input error, 4 budget exceeded, 70 internal
error (a witness failed re-verification or solvers disagreed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Sequence

from .bench import CSV_COLUMNS, run_bench
from .config import BenchConfig, Budgets, parse_range
from .model import (
    Assignment,
    BudgetExceeded,
    ChannelInstance,
    FormatError,
    _content_lines,
    _int,
    evaluate_assignment,
    parse_assignment,
    parse_instance,
    random_instance,
    serialize_instance,
)
from .oracles import bf_count_profile, bf_solve, bf_tcolor_decide
from .span_count import count_profile
from .span_dp import dp_solve
from .span_mim import mim_solve
from .tcoloring import (
    domset_to_setcover,
    parse_setcover,
    parse_tcoloring,
    reduce_setcover_to_tcoloring,
    serialize_setcover,
    serialize_tcoloring,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4, 70


class InternalError(RuntimeError):
    pass


@dataclass
class RunResult:
    command: str
    algorithm: str | None
    answer: Any
    witness: list[int] | None = None
    elapsed_ms: float = 0.0
    table_entries: int | None = None
    instance_digest: str | None = None
    extra: dict | None = None

    def to_json(self) -> str:
        d = asdict(self)
        extra = d.pop("extra") or {}
        d.update(extra)
        return json.dumps(d, sort_keys=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    """DIMACS ``p edge n m`` / ``e u v`` or a ``p ca`` instance (weights ignored); 1-based."""
    n = None
    edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] not in ("edge", "col", "ca"):
                raise FormatError("expected 'p edge <n> <m>'", lineno)
            n = _int(toks[2], lineno)
        elif toks[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", lineno)
            if len(toks) not in (3, 4):
                raise FormatError("expected 'e <u> <v>'", lineno)
            u, v = _int(toks[1], lineno), _int(toks[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise FormatError(f"bad edge {u} {v}", lineno)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise FormatError("missing problem line")
    return n, edges


def _verified(inst: ChannelInstance, a: Assignment, span: int) -> list[int]:
    rep = evaluate_assignment(inst, a)
    if not rep.proper or (inst.n and rep.span != span):
        raise InternalError(f"witness failed verification: {rep}")
    return list(a.colors)


def _solve_with(inst, algo, budgets, threads):
    if algo == "dp":
        span, a, table = dp_solve(inst, "auto", budgets.full_table)
        return span, a, table.entries
    if algo == "mim":
        span, a, res = mim_solve(inst, budgets.half_table, threads)
        return span, a, res.table.entries
    span, a = bf_solve(inst, budgets.bf_max_n)
    return span, a, None


def cmd_solve(args, budgets) -> tuple[RunResult, int]:
    inst = parse_instance(_read(args.file))
    t0 = time.perf_counter()
    span, a, entries = _solve_with(inst, args.algo, budgets, args.threads)
    witness = _verified(inst, a, span)
    extra = None
    if args.cross_check:
        spans = {args.algo: span}
        for other in ("dp", "mim", "bf"):
            if other == args.algo:
                continue
            try:
                s2, a2, _ = _solve_with(inst, other, budgets, args.threads)
            except BudgetExceeded as exc:
                print(f"cross-check: {other} skipped ({exc})", file=sys.stderr)
                continue
            _verified(inst, a2, s2)
            spans[other] = s2
        if len(set(spans.values())) != 1:
            raise InternalError(f"solvers disagree: {spans}")
        extra = {"cross_check": spans}
    ms = (time.perf_counter() - t0) * 1000
    return RunResult("solve", args.algo, span, witness, ms, entries, inst.digest(), extra), EXIT_OK


def cmd_count(args, budgets) -> tuple[RunResult, int]:
    inst = parse_instance(_read(args.file))
    if args.span < 1:
        raise _UsageError("--span must be >= 1")
    t0 = time.perf_counter()
    if args.algo == "fast":
        prof = count_profile(inst, args.span, budgets.count_table)
    else:
        prof = bf_count_profile(inst, args.span, budgets.bf_count)
    value = prof[-1] if args.mode == "exact" else sum(prof)
    ms = (time.perf_counter() - t0) * 1000
    extra = {"mode": args.mode, "span": args.span}
    return RunResult("count", args.algo, str(value), None, ms, None, inst.digest(), extra), EXIT_OK


def cmd_verify(args, budgets) -> tuple[RunResult, int]:
    inst = parse_instance(_read(args.file))
    a = parse_assignment(_read(args.assignment))
    if len(a) != inst.n:
        raise FormatError(f"assignment has {len(a)} colors, instance has {inst.n} vertices")
    t0 = time.perf_counter()
    rep = evaluate_assignment(inst, a)
    ms = (time.perf_counter() - t0) * 1000
    extra = {
        "span": rep.span,
        "violations": [
            {"u": u + 1, "v": v + 1, "w": w, "distance": d} for u, v, w, d in rep.violations
        ],
    }
    answer = "proper" if rep.proper else "improper"
    code = EXIT_OK if rep.proper else EXIT_NEGATIVE
    return RunResult("verify", None, answer, list(a.colors), ms, None, inst.digest(), extra), code


def cmd_tsolve(args, budgets) -> tuple[RunResult, int]:
    tc = parse_tcoloring(_read(args.file))
    t0 = time.perf_counter()
    sat, a = bf_tcolor_decide(tc, budgets.tcolor_nodes)
    ms = (time.perf_counter() - t0) * 1000
    if sat and not tc.is_proper(a.colors):
        raise InternalError("T-coloring witness failed verification")
    witness = list(a.colors) if sat else None
    res = RunResult("tsolve", "backtrack", "SAT" if sat else "UNSAT", witness, ms, None, None)
    return res, EXIT_OK if sat else EXIT_NEGATIVE


def _emit_file(path: str | None, text: str):
    if path:
        Path(path).write_text(text)


def cmd_reduce(args, budgets) -> tuple[RunResult, int]:
    t0 = time.perf_counter()
    if args.kind == "setcover":
        sc = parse_setcover(_read(args.file))
        try:
            tc, report = reduce_setcover_to_tcoloring(sc, args.A, args.B, literal=args.literal)
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        text = serialize_tcoloring(tc)
        extra = {"instance": text, "report": report.as_dict()}
        algo = "setcover-to-tcoloring"
    else:
        if args.k is None or args.k < 0:
            raise _UsageError("reduce domset needs --k >= 0")
        n, edges = parse_graph(_read(args.file))
        sc = domset_to_setcover(n, edges, args.k)
        text = serialize_setcover(sc)
        extra = {"instance": text}
        algo = "domset-to-setcover"
    _emit_file(args.output, text)
    ms = (time.perf_counter() - t0) * 1000
    return RunResult("reduce", algo, "ok", None, ms, None, None, extra), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chanassign", description="Exact Channel Assignment solvers")
    p.add_argument("--threads", type=int, default=1, help="merge threads for mim")
    p.add_argument("--max-entries", type=int, default=None, help="table entry cap for dp/mim/count")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="minimum span and a witness")
    s.add_argument("file")
    s.add_argument("--algo", choices=("dp", "mim", "bf"), default="mim")
    s.add_argument("--cross-check", action="store_true", help="also run the other solvers and compare")

    c = sub.add_parser("count", help="count proper assignments")
    c.add_argument("file")
    c.add_argument("--span", type=int, required=True)
    c.add_argument("--mode", choices=("exact", "at-most"), default="exact")
    c.add_argument("--algo", choices=("fast", "bf"), default="fast")

    v = sub.add_parser("verify", help="check an assignment")
    v.add_argument("file")
    v.add_argument("--assignment", required=True)

    g = sub.add_parser("gen", help="random instance on stdout")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--wmax", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reduce", help="Set Cover -> T-Coloring, Dominating Set -> Set Cover")
    r.add_argument("kind", choices=("setcover", "domset"))
    r.add_argument("file")
    r.add_argument("--A", type=int, default=1)
    r.add_argument("--B", type=int, default=1)
    r.add_argument("--k", type=int, default=None)
    r.add_argument("--literal", action="store_true", help="free space without the disk inset")
    r.add_argument("-o", "--output", default=None, help="also write the generated instance here")

    t = sub.add_parser("tsolve", help="decide a T-Coloring instance")
    t.add_argument("file")

    b = sub.add_parser("bench", help="timing CSV")
    b.add_argument("--n-range", default="8..12:2")
    b.add_argument("--ell-range", default="3")
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--density", type=float, default=0.7)
    b.add_argument("--algos", default="mim,dp")
    return p


def _budgets(args) -> Budgets:
    if args.max_entries is None:
        return Budgets()
    m = args.max_entries
    return Budgets(full_table=m, half_table=m, count_table=m)


def _gen(args) -> int:
    try:
        inst = random_instance(args.n, args.density, args.wmax, args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    sys.stdout.write(serialize_instance(inst))
    return EXIT_OK


def _bench(args, budgets) -> int:
    try:
        cfg = BenchConfig(
            n_values=parse_range(args.n_range),
            ell_values=parse_range(args.ell_range),
            reps=args.reps,
            seed=args.seed,
            density=args.density,
            algos=tuple(a for a in args.algos.split(",") if a),
            budgets=budgets,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(",".join(CSV_COLUMNS))
    for row in run_bench(cfg):
        print(row.csv(), flush=True)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "count": cmd_count,
    "verify": cmd_verify,
    "tsolve": cmd_tsolve,
    "reduce": cmd_reduce,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise _UsageError("--threads must be >= 1")
        budgets = _budgets(args)
        if args.command == "gen":
            return _gen(args)
        if args.command == "bench":
            return _bench(args, budgets)
        result, code = COMMANDS[args.command](args, budgets)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    print(result.to_json())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
