"""Timing harness shared by the CLI and the experiment scripts."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .config import BenchConfig
from .model import instance_with_ell
from .oracles import bf_solve
from .span_dp import dp_solve
from .span_mim import mim_solve

CSV_COLUMNS = ("n", "ell", "algo", "rep", "seed", "ms", "table_entries", "span")


@dataclass(frozen=True)
class BenchRow:
    n: int
    ell: int
    algo: str
    rep: int
    seed: int
    ms: float
    table_entries: int
    span: int

    def csv(self) -> str:
        return f"{self.n},{self.ell},{self.algo},{self.rep},{self.seed},{self.ms:.3f},{self.table_entries},{self.span}"


def instance_seed(base: int, n: int, ell: int, rep: int) -> int:
    return base * 1_000_003 + n * 1009 + ell * 101 + rep


def time_one(inst, algo: str, cfg: BenchConfig):
    b = cfg.budgets
    t0 = time.perf_counter()
    if algo == "mim":
        span, _, res = mim_solve(inst, b.half_table)
        entries = res.table.entries
    elif algo == "dp":
        span, _, table = dp_solve(inst, "auto", b.full_table)
        entries = table.entries
    else:
        span, _ = bf_solve(inst, b.bf_max_n)
        entries = 0
    return (time.perf_counter() - t0) * 1000.0, entries, span


def run_bench(cfg: BenchConfig):
    """Yields one BenchRow per (n, ell, algo, rep); every rep uses its own recorded seed."""
    for n in cfg.n_values:
        for ell in cfg.ell_values:
            for rep in range(cfg.reps):
                seed = instance_seed(cfg.seed, n, ell, rep)
                inst = instance_with_ell(n, cfg.density, ell, seed)
                for algo in cfg.algos:
                    ms, entries, span = time_one(inst, algo, cfg)
                    yield BenchRow(n, ell, algo, rep, seed, ms, entries, span)
