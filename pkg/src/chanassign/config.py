"""Resource budgets and experiment settings as plain dataclasses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .oracles import BF_COUNT_BUDGET, BF_SPAN_MAX_N, TCOLOR_NODE_BUDGET
from .span_count import DEFAULT_COUNT_BUDGET
from .span_dp import DEFAULT_FULL_BUDGET, DEFAULT_HALF_BUDGET


@dataclass(frozen=True)
class Budgets:
    """Caps on table entries and search effort; exceeding one raises BudgetExceeded."""

    full_table: int = DEFAULT_FULL_BUDGET
    half_table: int = DEFAULT_HALF_BUDGET
    count_table: int = DEFAULT_COUNT_BUDGET
    bf_max_n: int = BF_SPAN_MAX_N
    bf_count: int = BF_COUNT_BUDGET
    tcolor_nodes: int = TCOLOR_NODE_BUDGET


@dataclass(frozen=True)
class BenchConfig:
    n_values: tuple[int, ...] = (8, 10, 12)
    ell_values: tuple[int, ...] = (3,)
    reps: int = 3
    seed: int = 0
    density: float = 0.7
    algos: tuple[str, ...] = ("mim",)
    budgets: Budgets = field(default_factory=Budgets)

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        bad = set(self.algos) - {"dp", "mim", "bf"}
        if bad:
            raise ValueError(f"unknown algorithms {sorted(bad)}")


def parse_range(text: str) -> tuple[int, ...]:
    """``"8..12"`` -> (8, 9, 10, 11, 12); ``"8..12:2"`` steps by 2; ``"8,10"`` lists."""
    if ".." in text:
        body, _, step = text.partition(":")
        lo, _, hi = body.partition("..")
        a, b, st = int(lo), int(hi), int(step or 1)
        if st < 1 or b < a:
            raise ValueError(f"bad range {text!r}")
        return tuple(range(a, b + 1, st))
    return tuple(int(x) for x in text.split(","))
